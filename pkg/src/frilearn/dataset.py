"""Tabular datasets: CSV loading, seeded splitting, one-vs-rest encoding."""
from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass, replace
from importlib import resources
from typing import Mapping, Sequence

from .errors import (
    DegenerateSplitError,
    EmptyDatasetError,
    ParseError,
    UnknownClassError,
)
from .fuzzy import Example, Partition, build_partition

SHUFFLE_ALGORITHM = "mt19937-fisher-yates"


@dataclass(frozen=True)
class Dataset:
    """Examples plus the partitions needed to fuzzify them.

    `schema` holds one input partition per variable. Classification
    sources carry the distinct `class_names`, the per-row `labels`, and
    the name of the class column; their examples' outputs are a 0.0
    placeholder until `encode_one_vs_rest` assigns them. Regression-style
    datasets instead bind `output_partition` directly.
    """

    schema: tuple[Partition, ...]
    examples: tuple[Example, ...]
    class_names: tuple[str, ...] | None = None
    labels: tuple[str, ...] | None = None
    class_column: str | None = None
    output_partition: Partition | None = None

    def __post_init__(self) -> None:
        n = len(self.schema)
        for e in self.examples:
            if len(e.inputs) != n:
                raise ValueError(
                    f"example arity {len(e.inputs)} does not match schema arity {n}"
                )
        if self.labels is not None and len(self.labels) != len(self.examples):
            raise ValueError("one class label per example required")

    def __len__(self) -> int:
        return len(self.examples)

    @property
    def n_vars(self) -> int:
        return len(self.schema)

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(p.variable_name for p in self.schema)


def iris_path() -> str:
    """Filesystem path of the bundled 150-row Iris table."""
    return str(resources.files("frilearn.data").joinpath("iris.csv"))


def load_csv(
    path: str,
    class_column: str,
    *,
    label_count: int = 7,
    label_names: Sequence[str] | None = None,
    bounds: Mapping[str, tuple[float, float]] | None = None,
) -> Dataset:
    """Load a classification CSV: numeric attribute columns plus one class column.

    Input partitions are built per column from the observed min/max of the
    whole file unless explicit `bounds` are given for a column.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
    if not rows:
        raise ParseError(f"{path!r} has no header row")
    header = [name.strip() for name in rows[0]]
    if class_column not in header:
        raise ParseError(
            f"{path!r}: class column {class_column!r} not in header {header}"
        )
    class_pos = header.index(class_column)
    var_names = [name for i, name in enumerate(header) if i != class_pos]
    var_pos = [i for i in range(len(header)) if i != class_pos]

    inputs: list[tuple[float, ...]] = []
    labels: list[str] = []
    for r, row in enumerate(rows[1:], start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"{path!r} row {r}: expected {len(header)} cells, got {len(row)}")
        values = []
        for i in var_pos:
            cell = row[i].strip()
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path!r} row {r}, column {header[i]!r}: not a number: {cell!r}"
                ) from None
            if not math.isfinite(value):
                raise ParseError(
                    f"{path!r} row {r}, column {header[i]!r}: non-finite value {cell!r}"
                )
            values.append(value)
        inputs.append(tuple(values))
        labels.append(row[class_pos].strip())
    if not inputs:
        raise EmptyDatasetError(f"{path!r} has a header but no data rows")

    schema = []
    for v, name in enumerate(var_names):
        if bounds is not None and name in bounds:
            lo, hi = bounds[name]
        else:
            column = [x[v] for x in inputs]
            lo, hi = min(column), max(column)
        try:
            schema.append(
                build_partition(lo, hi, label_count, label_names, variable_name=name)
            )
        except ValueError as exc:
            raise ParseError(f"{path!r} column {name!r}: {exc}") from exc

    return Dataset(
        schema=tuple(schema),
        examples=tuple(Example(x, 0.0) for x in inputs),
        class_names=tuple(sorted(set(labels))),
        labels=tuple(labels),
        class_column=class_column,
    )


def split(d: Dataset, train_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministically shuffle rows under `seed`, then cut at round(k * fraction).

    Both sides keep the shuffled row order and share the parent's schema,
    partitions, and class vocabulary.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train fraction must be in (0, 1), got {train_fraction!r}")
    k = len(d)
    order = list(range(k))
    random.Random(seed).shuffle(order)
    n_train = round(k * train_fraction)
    if n_train == 0 or n_train == k:
        raise DegenerateSplitError(
            f"split of {k} rows at {train_fraction} leaves one side empty"
        )

    def take(indices: list[int]) -> Dataset:
        return replace(
            d,
            examples=tuple(d.examples[i] for i in indices),
            labels=None if d.labels is None else tuple(d.labels[i] for i in indices),
        )

    return take(order[:n_train]), take(order[n_train:])


def encode_one_vs_rest(
    d: Dataset, positive_class: str, output_partition: Partition
) -> Dataset:
    """Set outputs to 1.0 for rows of `positive_class` and 0.0 for the rest."""
    if d.class_names is None or d.labels is None:
        raise ValueError("dataset has no class labels to encode")
    if positive_class not in d.class_names:
        raise UnknownClassError(
            f"unknown class {positive_class!r}; expected one of {list(d.class_names)}"
        )
    encoded = tuple(
        Example(e.inputs, 1.0 if label == positive_class else 0.0)
        for e, label in zip(d.examples, d.labels)
    )
    return replace(d, examples=encoded, output_partition=output_partition)
