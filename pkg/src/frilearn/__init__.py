"""Fuzzy rule induction with minimal-antecedent rules.

Learns rule bases from tabular input-output examples by searching the
lattice of partial label assignments, scoring each candidate antecedent
by its worst matching degree over the examples it covers, and discarding
antecedents that a shorter antecedent beats. Ships a one-vs-rest
classifier, a scikit-learn style estimator, and a CLI.
"""

from .dataset import Dataset, encode_one_vs_rest, iris_path, load_csv, split
from .errors import (
    DataError,
    DegenerateSplitError,
    EmptyDatasetError,
    FrilearnError,
    ModelFormatError,
    ParseError,
    SchemaMismatchError,
    UnknownClassError,
)
from .estimator import LatticeRuleClassifier
from .fuzzy import (
    Atom,
    EMPTY_ENVIRONMENT,
    Environment,
    Example,
    Partition,
    build_partition,
    firing_strength,
    matching_degree_example,
    membership,
)
from .inference import (
    UNDISTINGUISHED,
    EvalReport,
    Prediction,
    class_score,
    classify,
    evaluate,
    rule_activation,
)
from .lattice import (
    LatticeStats,
    LearnedNode,
    ModelConfig,
    NodeEntry,
    OneVsRestModel,
    Rule,
    RuleBase,
    coverage,
    enumerate_environments,
    lattice_size,
    learn_node,
    learn_one_vs_rest,
    learn_rulebase,
    matching_degree_set,
    minimize_label,
    subsumes,
)
from .model_io import parse_model, read_model, serialize_model, write_model

__version__ = "0.1.0"
