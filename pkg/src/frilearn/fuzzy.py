"""Linguistic partitions, triangular memberships, and matching degrees.

A partition covers a variable's domain with K triangular labels whose
peaks sit on a uniform grid and whose supports reach the neighbouring
peaks, so memberships sum to one everywhere on the domain. An
environment is a partial assignment of labels to input variables and
doubles as a rule antecedent; its firing strength at an example is the
min of its atoms' memberships there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

SEVEN_LABELS = ("HN", "MN", "SN", "Z", "SP", "MP", "HP")
THREE_LABELS = ("N", "Z", "P")


def default_label_names(label_count: int) -> tuple[str, ...]:
    """Conventional names for K labels: signed vocabulary for 3 and 7, L1..LK otherwise."""
    if label_count == 7:
        return SEVEN_LABELS
    if label_count == 3:
        return THREE_LABELS
    return tuple(f"L{i + 1}" for i in range(label_count))


@dataclass(frozen=True)
class Partition:
    """K triangular labels over [domain_min, domain_max], peaks at `centers`.

    Label j peaks (membership 1) at centers[j] and falls linearly to 0 at
    the neighbouring centers; the outermost labels keep membership 1 past
    the domain edge (inputs are clamped to the domain before evaluation).
    """

    variable_name: str
    domain_min: float
    domain_max: float
    label_names: tuple[str, ...]
    centers: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (self.domain_min < self.domain_max):
            raise ValueError(
                f"invalid domain for {self.variable_name!r}: "
                f"min {self.domain_min!r} must be < max {self.domain_max!r}"
            )
        if len(self.label_names) < 2:
            raise ValueError("bad label spec: need at least 2 labels")
        if len(set(self.label_names)) != len(self.label_names):
            raise ValueError("bad label spec: label names must be distinct")
        if len(self.centers) != len(self.label_names):
            raise ValueError("bad label spec: one center per label required")
        if any(b <= a for a, b in zip(self.centers, self.centers[1:])):
            raise ValueError("centers must be strictly increasing")
        if self.centers[0] != self.domain_min or self.centers[-1] != self.domain_max:
            raise ValueError("centers must start at domain_min and end at domain_max")

    @property
    def label_count(self) -> int:
        return len(self.label_names)

    def label_index(self, name: str) -> int:
        try:
            return self.label_names.index(name)
        except ValueError:
            raise ValueError(
                f"unknown label {name!r} for variable {self.variable_name!r}"
            ) from None


class Atom(NamedTuple):
    """One antecedent proposition: variable `variable_index` is label `label_index`."""

    variable_index: int
    label_index: int


@dataclass(frozen=True)
class Environment:
    """A set of atoms, at most one per variable: a rule antecedent.

    The empty environment is the unconditional antecedent (firing 1
    everywhere). Equality and hashing are set-based.
    """

    atoms: frozenset[Atom]

    def __init__(self, atoms: Iterable[Atom] = ()) -> None:
        atom_set = frozenset(atoms)
        if len({a.variable_index for a in atom_set}) != len(atom_set):
            raise ValueError("environment assigns two labels to one variable")
        object.__setattr__(self, "atoms", atom_set)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.sorted_atoms())

    def sorted_atoms(self) -> tuple[Atom, ...]:
        return tuple(sorted(self.atoms))

    def is_subset_of(self, other: "Environment") -> bool:
        return self.atoms <= other.atoms

    def is_strict_subset_of(self, other: "Environment") -> bool:
        return self.atoms < other.atoms


EMPTY_ENVIRONMENT = Environment()


@dataclass(frozen=True)
class Example:
    """One input-output row: n real inputs and a real output."""

    inputs: tuple[float, ...]
    output: float


def build_partition(
    domain_min: float,
    domain_max: float,
    label_count: int = 7,
    label_names: Sequence[str] | None = None,
    variable_name: str = "x",
) -> Partition:
    """Build a uniform partition: centers on a regular grid from min to max.

    The first and last centers are exactly the domain bounds.
    """
    if not (domain_min < domain_max):
        raise ValueError(
            f"invalid domain: min {domain_min!r} must be < max {domain_max!r}"
        )
    if label_count < 2:
        raise ValueError(f"bad label spec: need at least 2 labels, got {label_count}")
    if label_names is None:
        label_names = default_label_names(label_count)
    if len(label_names) != label_count:
        raise ValueError(
            f"bad label spec: {label_count} labels but {len(label_names)} names"
        )
    span = domain_max - domain_min
    centers = [domain_min + (j * span) / (label_count - 1) for j in range(label_count)]
    centers[-1] = domain_max
    return Partition(
        variable_name=variable_name,
        domain_min=domain_min,
        domain_max=domain_max,
        label_names=tuple(label_names),
        centers=tuple(centers),
    )


def membership(p: Partition, label_index: int, x: float) -> float:
    """Degree of x in label `label_index`; x is clamped to the domain first."""
    if not 0 <= label_index < p.label_count:
        raise ValueError(f"label index {label_index} out of range for {p.variable_name!r}")
    if not math.isfinite(x):
        raise ValueError(f"non-finite input {x!r} for {p.variable_name!r}")
    x = min(max(x, p.domain_min), p.domain_max)
    c = p.centers
    peak = c[label_index]
    if x == peak:
        return 1.0
    if x < peak:
        if label_index == 0:
            return 1.0
        left = c[label_index - 1]
        if x <= left:
            return 0.0
        return (x - left) / (peak - left)
    if label_index == p.label_count - 1:
        return 1.0
    right = c[label_index + 1]
    if x >= right:
        return 0.0
    return (right - x) / (right - peak)


def firing_strength(
    t: Environment, e: Example, partitions: Sequence[Partition]
) -> float:
    """Min over t's atoms of the atom's membership at e; 1.0 for the empty environment."""
    strength = 1.0
    for atom in t.atoms:
        if atom.variable_index >= len(e.inputs) or atom.variable_index >= len(partitions):
            raise ValueError(
                f"atom references variable {atom.variable_index} "
                f"but only {len(e.inputs)} inputs are available"
            )
        mu = membership(partitions[atom.variable_index], atom.label_index, e.inputs[atom.variable_index])
        if mu < strength:
            strength = mu
        if strength == 0.0:
            break
    return strength


def matching_degree_example(
    t: Environment,
    consequent_label: int,
    e: Example,
    partitions: Sequence[Partition],
    output_partition: Partition,
) -> float:
    """Degree to which the rule `t -> consequent` matches one example.

    Min of the antecedent firing strength at the inputs and the consequent
    label's membership at the output value.
    """
    out = membership(output_partition, consequent_label, e.output)
    return min(firing_strength(t, e, partitions), out)
