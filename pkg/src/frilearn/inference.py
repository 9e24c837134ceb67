"""Applying a learned model: rule activation, class scores, verdicts."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dataset import Dataset
from .errors import SchemaMismatchError
from .fuzzy import Example, Partition, firing_strength
from .lattice import OneVsRestModel, Rule

UNDISTINGUISHED = "undistinguished"


@dataclass(frozen=True)
class Prediction:
    """Per-class scores and the verdict; verdict is None when no class stands out."""

    scores: dict[str, float]
    verdict: str | None


@dataclass(frozen=True)
class EvalReport:
    """Test-set tallies; undistinguished rows are counted apart from wrong ones."""

    correct: int
    wrong: int
    undistinguished: int
    accuracy: float
    per_class_confusion: dict[str, dict[str, int]]
    degenerate: bool = False

    @property
    def total(self) -> int:
        return self.correct + self.wrong + self.undistinguished


def rule_activation(
    rule: Rule, inputs: Sequence[float], partitions: Sequence[Partition]
) -> float:
    """Min of the rule's firing strength at `inputs` and its certainty degree."""
    example = Example(tuple(inputs), 0.0)
    return min(firing_strength(rule.antecedent, example, partitions), rule.degree)


def class_score(
    rules: Sequence[Rule],
    inputs: Sequence[float],
    input_partitions: Sequence[Partition],
    output_partition: Partition,
    policy: str = "positive",
) -> float:
    """Aggregate one class's rules into a single score.

    `positive` takes the best activation among rules whose consequent is
    the top output label ("is the class"); `difference` subtracts the best
    bottom-label activation ("is not the class"), floored at zero.
    """
    top = output_partition.label_count - 1
    best_for = 0.0
    best_against = 0.0
    for rule in rules:
        if rule.consequent_label == top:
            act = rule_activation(rule, inputs, input_partitions)
            if act > best_for:
                best_for = act
        elif policy == "difference" and rule.consequent_label == 0:
            act = rule_activation(rule, inputs, input_partitions)
            if act > best_against:
                best_against = act
    if policy == "difference":
        return max(0.0, best_for - best_against)
    return best_for


def _verdict(scores: dict[str, float]) -> str | None:
    best = max(scores.values())
    if best <= 0.0:
        return None
    winners = [name for name, s in scores.items() if s == best]
    return winners[0] if len(winners) == 1 else None


def classify(
    model: OneVsRestModel, inputs: Sequence[float], policy: str | None = None
) -> Prediction:
    """Score every class at `inputs`; the verdict needs a unique positive maximum."""
    if len(inputs) != model.n_vars:
        raise SchemaMismatchError(
            f"model expects {model.n_vars} inputs, got {len(inputs)}"
        )
    if policy is None:
        policy = model.config.scoring_policy
    scores = {
        name: class_score(
            model.rules[name],
            inputs,
            model.input_partitions,
            model.output_partition,
            policy,
        )
        for name in model.class_names
    }
    return Prediction(scores=scores, verdict=_verdict(scores))


def evaluate(model: OneVsRestModel, test: Dataset) -> EvalReport:
    """Classify every test row and tally verdicts against the true classes."""
    if test.labels is None:
        raise SchemaMismatchError("test dataset has no class labels")
    if test.n_vars != model.n_vars:
        raise SchemaMismatchError(
            f"model expects {model.n_vars} variables, test data has {test.n_vars}"
        )
    confusion: dict[str, dict[str, int]] = {}
    correct = wrong = undistinguished = 0
    for example, true_class in zip(test.examples, test.labels):
        prediction = classify(model, example.inputs)
        verdict = prediction.verdict
        if verdict is None:
            undistinguished += 1
            verdict_key = UNDISTINGUISHED
        elif verdict == true_class:
            correct += 1
            verdict_key = verdict
        else:
            wrong += 1
            verdict_key = verdict
        row = confusion.setdefault(true_class, {})
        row[verdict_key] = row.get(verdict_key, 0) + 1
    total = len(test)
    return EvalReport(
        correct=correct,
        wrong=wrong,
        undistinguished=undistinguished,
        accuracy=correct / total if total else 0.0,
        per_class_confusion=confusion,
        degenerate=total == 0,
    )
