"""Rule learning over the environment lattice.

Every partial assignment of labels to input variables is a candidate
antecedent. For a fixed consequent label, each candidate gets the
minimum matching degree over the examples it covers; candidates whose
degree is beaten by a strict sub-antecedent are redundant and removed,
leaving rules with as few variables as possible. Candidates that reach
degree 1.0 let the search skip all their supersets outright.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .dataset import SHUFFLE_ALGORITHM, Dataset, encode_one_vs_rest
from .errors import DataError, EmptyDatasetError
from .fuzzy import (
    Atom,
    Environment,
    Partition,
    build_partition,
    firing_strength,
    matching_degree_example,
    membership,
)

TIE_POLICIES = ("strict", "drop-superset-on-tie")
SCORING_POLICIES = ("positive", "difference")


@dataclass(frozen=True)
class NodeEntry:
    """One surviving antecedent for a consequent: its degree and covered rows."""

    environment: Environment
    degree: float
    coverage: frozenset[int]


@dataclass(frozen=True)
class LearnedNode:
    """All retained antecedents for one consequent label."""

    consequent_label: int
    entries: tuple[NodeEntry, ...]


@dataclass(frozen=True)
class LatticeStats:
    """Search effort for one node: visited plus skipped equals the lattice size."""

    environments_enumerated: int
    environments_pruned: int
    lattice_size: int


@dataclass(frozen=True)
class Rule:
    """A finished rule: antecedent, consequent label index, certainty degree."""

    antecedent: Environment
    consequent_label: int
    degree: float


@dataclass(frozen=True)
class RuleBase:
    """Minimized nodes for every consequent of one output partition."""

    nodes: tuple[LearnedNode, ...]
    stats: tuple[LatticeStats, ...]
    input_partitions: tuple[Partition, ...]
    output_partition: Partition

    def rules(self) -> tuple[Rule, ...]:
        return tuple(
            Rule(entry.environment, node.consequent_label, entry.degree)
            for node in self.nodes
            for entry in node.entries
        )


@dataclass(frozen=True)
class ModelConfig:
    """Training configuration recorded inside a serialized model."""

    label_count: int = 7
    tie_policy: str = "strict"
    scoring_policy: str = "positive"
    seed: int = 42
    split_fraction: float = 0.8
    shuffle_algorithm: str = SHUFFLE_ALGORITHM

    def __post_init__(self) -> None:
        if self.tie_policy not in TIE_POLICIES:
            raise ValueError(f"tie_policy must be one of {TIE_POLICIES}")
        if self.scoring_policy not in SCORING_POLICIES:
            raise ValueError(f"scoring_policy must be one of {SCORING_POLICIES}")


@dataclass(frozen=True)
class OneVsRestModel:
    """One rule base per class, with the partitions and config to apply them."""

    class_names: tuple[str, ...]
    rules: dict[str, tuple[Rule, ...]]
    input_partitions: tuple[Partition, ...]
    output_partition: Partition
    config: ModelConfig
    training_stats: dict[str, tuple[LatticeStats, ...]] | None = field(
        default=None, compare=False, repr=False
    )

    @property
    def n_vars(self) -> int:
        return len(self.input_partitions)


def lattice_size(label_counts: Sequence[int]) -> int:
    """Number of environments: each variable is absent or takes one of its labels."""
    return math.prod(c + 1 for c in label_counts)


def enumerate_environments(
    n_vars: int, label_counts: Sequence[int]
) -> Iterator[Environment]:
    """Yield every environment, smallest first, lexicographic within a size."""
    if n_vars < 1:
        raise ValueError(f"need at least one variable, got {n_vars}")
    if len(label_counts) != n_vars:
        raise ValueError("one label count per variable required")
    for size in range(n_vars + 1):
        level = []
        for variables in itertools.combinations(range(n_vars), size):
            for labels in itertools.product(*(range(label_counts[v]) for v in variables)):
                level.append(
                    Environment(Atom(v, j) for v, j in zip(variables, labels))
                )
        level.sort(key=Environment.sorted_atoms)
        yield from level


def coverage(t: Environment, d: Dataset) -> frozenset[int]:
    """Indices of the examples t fires on with any positive strength."""
    return frozenset(
        i for i, e in enumerate(d.examples) if firing_strength(t, e, d.schema) > 0.0
    )


def matching_degree_set(
    t: Environment, consequent_label: int, d: Dataset, cov: frozenset[int]
) -> float:
    """Minimum matching degree of t over its covered examples; 0 if it covers none."""
    if not cov:
        return 0.0
    return min(
        matching_degree_example(
            t, consequent_label, d.examples[i], d.schema, d.output_partition
        )
        for i in cov
    )


def _beats(challenger: float, incumbent: float, tie_policy: str, epsilon: float) -> bool:
    # degrees within epsilon of each other count as tied
    if tie_policy == "drop-superset-on-tie":
        return challenger >= incumbent - epsilon
    return challenger > incumbent + epsilon


def subsumes(
    a: NodeEntry, b: NodeEntry, *, tie_policy: str = "strict", epsilon: float = 0.0
) -> bool:
    """True when a is redundant: b's antecedent is a subset of a's with a better degree."""
    return b.environment.is_subset_of(a.environment) and _beats(
        b.degree, a.degree, tie_policy, epsilon
    )


def _sub_environments(env: Environment) -> Iterator[Environment]:
    atoms = env.sorted_atoms()
    for size in range(len(atoms)):
        for combo in itertools.combinations(atoms, size):
            yield Environment(combo)


def minimize_label(
    entries: Sequence[NodeEntry], *, tie_policy: str = "strict", epsilon: float = 0.0
) -> tuple[NodeEntry, ...]:
    """Drop every entry some other entry subsumes.

    All original entries act as witnesses, so the result does not depend
    on the order removals are considered in.
    """
    degree_of = {e.environment: e.degree for e in entries}
    kept = []
    for entry in entries:
        beaten = any(
            sub in degree_of and _beats(degree_of[sub], entry.degree, tie_policy, epsilon)
            for sub in _sub_environments(entry.environment)
        )
        if not beaten:
            kept.append(entry)
    return tuple(kept)


class _InputCache:
    """Membership and firing-strength rows over one set of example inputs."""

    def __init__(self, schema: Sequence[Partition], examples) -> None:
        self.mu = [
            [
                np.array([membership(p, j, e.inputs[v]) for e in examples])
                for j in range(p.label_count)
            ]
            for v, p in enumerate(schema)
        ]
        self._ones = np.ones(len(examples))
        self._firing: dict[Environment, np.ndarray] = {}

    def firing_row(self, env: Environment) -> np.ndarray:
        row = self._firing.get(env)
        if row is None:
            if not env.atoms:
                row = self._ones
            else:
                rows = [self.mu[a.variable_index][a.label_index] for a in env.atoms]
                row = rows[0] if len(rows) == 1 else np.minimum.reduce(rows)
            self._firing[env] = row
        return row


class _LatticeContext:
    """Input cache plus output-membership rows for one bound dataset."""

    def __init__(self, d: Dataset, input_cache: _InputCache | None = None) -> None:
        if d.output_partition is None:
            raise ValueError("dataset has no output partition bound")
        self.inputs = input_cache or _InputCache(d.schema, d.examples)
        self.out_mu = [
            np.array(
                [membership(d.output_partition, j, e.output) for e in d.examples]
            )
            for j in range(d.output_partition.label_count)
        ]


def learn_node(
    consequent_label: int,
    d: Dataset,
    prune: bool = True,
    *,
    tie_policy: str = "strict",
    epsilon: float = 0.0,
    _ctx: _LatticeContext | None = None,
) -> tuple[LearnedNode, LatticeStats]:
    """Search the lattice for one consequent label and minimize the result.

    With pruning on, once an environment reaches degree exactly 1.0 none
    of its strict supersets is ever evaluated.
    """
    if len(d) == 0:
        raise EmptyDatasetError("cannot learn from an empty dataset")
    ctx = _ctx if _ctx is not None else _LatticeContext(d)
    out_row = ctx.out_mu[consequent_label]
    label_counts = [p.label_count for p in d.schema]
    total = lattice_size(label_counts)

    entries: list[NodeEntry] = []
    prune_roots: list[Environment] = []
    enumerated = pruned = 0
    for env in enumerate_environments(d.n_vars, label_counts):
        if prune and any(root.atoms < env.atoms for root in prune_roots):
            pruned += 1
            continue
        enumerated += 1
        firing = ctx.inputs.firing_row(env)
        covered = firing > 0.0
        if not covered.any():
            continue
        degree = float(np.minimum(firing, out_row)[covered].min())
        if degree <= 0.0:
            continue
        entries.append(
            NodeEntry(env, degree, frozenset(np.flatnonzero(covered).tolist()))
        )
        if prune and degree == 1.0:
            prune_roots.append(env)
    assert enumerated + pruned == total

    node = LearnedNode(
        consequent_label,
        minimize_label(entries, tie_policy=tie_policy, epsilon=epsilon),
    )
    return node, LatticeStats(enumerated, pruned, total)


def learn_rulebase(
    d: Dataset,
    *,
    prune: bool = True,
    tie_policy: str = "strict",
    epsilon: float = 0.0,
    _input_cache: _InputCache | None = None,
) -> RuleBase:
    """Learn one node per consequent label; labels that yield nothing are omitted."""
    if len(d) == 0:
        raise EmptyDatasetError("cannot learn from an empty dataset")
    if d.output_partition is None:
        raise ValueError("dataset has no output partition bound")
    ctx = _LatticeContext(d, _input_cache)
    nodes = []
    stats = []
    for label in range(d.output_partition.label_count):
        node, node_stats = learn_node(
            label, d, prune, tie_policy=tie_policy, epsilon=epsilon, _ctx=ctx
        )
        stats.append(node_stats)
        if node.entries:
            nodes.append(node)
    return RuleBase(
        nodes=tuple(nodes),
        stats=tuple(stats),
        input_partitions=d.schema,
        output_partition=d.output_partition,
    )


def learn_one_vs_rest(
    d: Dataset,
    config: ModelConfig | None = None,
    *,
    prune: bool = True,
    epsilon: float = 0.0,
) -> OneVsRestModel:
    """Learn one rule base per class against the rest of the data.

    Class membership becomes a crisp 0/1 output over a unit-interval
    partition, so only the first and last consequent labels can carry
    rules.
    """
    if d.class_names is None:
        raise ValueError("dataset has no class labels")
    if len(d.class_names) < 2:
        raise DataError(f"need at least 2 classes, got {list(d.class_names)}")
    if config is None:
        config = ModelConfig(label_count=d.schema[0].label_count)
    output_partition = build_partition(
        0.0, 1.0, config.label_count, variable_name=d.class_column or "output"
    )
    input_cache = _InputCache(d.schema, d.examples)
    rules: dict[str, tuple[Rule, ...]] = {}
    training_stats: dict[str, tuple[LatticeStats, ...]] = {}
    for name in d.class_names:
        encoded = encode_one_vs_rest(d, name, output_partition)
        base = learn_rulebase(
            encoded,
            prune=prune,
            tie_policy=config.tie_policy,
            epsilon=epsilon,
            _input_cache=input_cache,
        )
        rules[name] = base.rules()
        training_stats[name] = base.stats
    return OneVsRestModel(
        class_names=d.class_names,
        rules=rules,
        input_partitions=d.schema,
        output_partition=output_partition,
        config=config,
        training_stats=training_stats,
    )
