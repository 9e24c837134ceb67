"""Versioned JSON model files.

Rules are stored with variable and label names rather than indices so a
model file reads like the rule base it is. Degrees are written as
17-significant-digit strings, which reproduce the exact 64-bit value on
parse; all other reals round-trip through JSON's shortest repr.
"""
from __future__ import annotations

import json
from typing import Any

from .errors import DataError, ModelFormatError
from .fuzzy import Atom, Environment, Partition
from .lattice import ModelConfig, OneVsRestModel, Rule

__all__ = ["FORMAT_VERSION", "serialize_model", "parse_model", "write_model", "read_model"]

FORMAT_VERSION = 1


def _partition_doc(p: Partition) -> dict[str, Any]:
    return {
        "name": p.variable_name,
        "domain_min": p.domain_min,
        "domain_max": p.domain_max,
        "labels": list(p.label_names),
        "centers": list(p.centers),
    }


def _rule_doc(rule: Rule, model: OneVsRestModel) -> dict[str, Any]:
    antecedent = {
        model.input_partitions[atom.variable_index].variable_name:
            model.input_partitions[atom.variable_index].label_names[atom.label_index]
        for atom in rule.antecedent.sorted_atoms()
    }
    return {
        "if": antecedent,
        "then": model.output_partition.label_names[rule.consequent_label],
        "degree": format(rule.degree, ".17g"),
    }


def serialize_model(model: OneVsRestModel) -> str:
    """Render a model as a stable, human-readable JSON document."""
    doc = {
        "format_version": FORMAT_VERSION,
        "config": {
            "label_count": model.config.label_count,
            "tie_policy": model.config.tie_policy,
            "scoring_policy": model.config.scoring_policy,
            "seed": model.config.seed,
            "split_fraction": model.config.split_fraction,
            "shuffle_algorithm": model.config.shuffle_algorithm,
        },
        "input_partitions": [_partition_doc(p) for p in model.input_partitions],
        "output_partition": _partition_doc(model.output_partition),
        "classes": [
            {"name": name, "rules": [_rule_doc(r, model) for r in model.rules[name]]}
            for name in model.class_names
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _require(doc: dict, key: str, kind: type, where: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise ModelFormatError(f"model file: missing {key!r} in {where}")
    value = doc[key]
    if kind is float and isinstance(value, int):
        value = float(value)
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ModelFormatError(
            f"model file: {where}.{key} must be {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _parse_partition(doc: dict, where: str) -> Partition:
    try:
        return Partition(
            variable_name=_require(doc, "name", str, where),
            domain_min=_require(doc, "domain_min", float, where),
            domain_max=_require(doc, "domain_max", float, where),
            label_names=tuple(_require(doc, "labels", list, where)),
            centers=tuple(_require(doc, "centers", list, where)),
        )
    except ValueError as exc:
        raise ModelFormatError(f"model file: bad partition {where}: {exc}") from exc


def _parse_rule(
    doc: dict, where: str, by_name: dict[str, int], partitions, output_partition
) -> Rule:
    antecedent_doc = _require(doc, "if", dict, where)
    atoms = []
    for var_name, label_name in antecedent_doc.items():
        if var_name not in by_name:
            raise ModelFormatError(f"model file: {where} names unknown variable {var_name!r}")
        v = by_name[var_name]
        try:
            j = partitions[v].label_index(str(label_name))
        except ValueError as exc:
            raise ModelFormatError(f"model file: {where}: {exc}") from exc
        atoms.append(Atom(v, j))
    try:
        consequent = output_partition.label_index(_require(doc, "then", str, where))
    except ValueError as exc:
        raise ModelFormatError(f"model file: {where}: {exc}") from exc
    degree_text = _require(doc, "degree", str, where)
    try:
        degree = float(degree_text)
    except ValueError:
        raise ModelFormatError(
            f"model file: {where}: degree {degree_text!r} is not a number"
        ) from None
    return Rule(Environment(atoms), consequent, degree)


def parse_model(text: str) -> OneVsRestModel:
    """Parse a serialized model, validating structure and name references."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"model file: invalid JSON at byte {exc.pos}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("model file: top level must be an object")
    version = _require(doc, "format_version", int, "document")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"model file: unsupported format_version {version}, expected {FORMAT_VERSION}"
        )
    config_doc = _require(doc, "config", dict, "document")
    try:
        config = ModelConfig(
            label_count=_require(config_doc, "label_count", int, "config"),
            tie_policy=_require(config_doc, "tie_policy", str, "config"),
            scoring_policy=_require(config_doc, "scoring_policy", str, "config"),
            seed=_require(config_doc, "seed", int, "config"),
            split_fraction=_require(config_doc, "split_fraction", float, "config"),
            shuffle_algorithm=_require(config_doc, "shuffle_algorithm", str, "config"),
        )
    except ValueError as exc:
        raise ModelFormatError(f"model file: bad config: {exc}") from exc

    partitions = tuple(
        _parse_partition(p, f"input_partitions[{i}]")
        for i, p in enumerate(_require(doc, "input_partitions", list, "document"))
    )
    output_partition = _parse_partition(
        _require(doc, "output_partition", dict, "document"), "output_partition"
    )
    by_name = {p.variable_name: i for i, p in enumerate(partitions)}

    class_names = []
    rules: dict[str, tuple[Rule, ...]] = {}
    for c, class_doc in enumerate(_require(doc, "classes", list, "document")):
        name = _require(class_doc, "name", str, f"classes[{c}]")
        class_rules = tuple(
            _parse_rule(r, f"classes[{c}].rules[{i}]", by_name, partitions, output_partition)
            for i, r in enumerate(_require(class_doc, "rules", list, f"classes[{c}]"))
        )
        class_names.append(name)
        rules[name] = class_rules
    return OneVsRestModel(
        class_names=tuple(class_names),
        rules=rules,
        input_partitions=partitions,
        output_partition=output_partition,
        config=config,
    )


def write_model(model: OneVsRestModel, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_model(model))
    except OSError as exc:
        raise DataError(f"cannot write model to {path!r}: {exc}") from exc


def read_model(path: str) -> OneVsRestModel:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelFormatError(f"cannot read model {path!r}: {exc}") from exc
    return parse_model(text)
