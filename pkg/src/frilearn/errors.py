"""Exception types shared across the package.

Everything raised on bad user data derives from DataError so the CLI can
map the whole family to one exit code.
"""


class FrilearnError(Exception):
    """Base class for all package errors."""


class DataError(FrilearnError):
    """Bad input data: files, CSV cells, schemas, class names."""


class ParseError(DataError):
    """Malformed file content; message carries row/column or byte context."""


class EmptyDatasetError(DataError):
    """A dataset with zero examples where at least one is required."""


class DegenerateSplitError(DataError):
    """A train/test split that leaves one side empty."""


class UnknownClassError(DataError):
    """A class name not present in the dataset."""


class SchemaMismatchError(DataError):
    """Model and data disagree on variable count or names."""


class ModelFormatError(ParseError):
    """A model file that cannot be parsed or fails validation."""
