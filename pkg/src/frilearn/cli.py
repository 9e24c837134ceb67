"""Command-line interface: train, evaluate, predict, inspect.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""
from __future__ import annotations

import argparse
import sys

from .dataset import SHUFFLE_ALGORITHM, load_csv, split
from .errors import DataError, EmptyDatasetError, FrilearnError
from .inference import UNDISTINGUISHED, EvalReport, classify, evaluate
from .lattice import ModelConfig, OneVsRestModel, Rule, learn_one_vs_rest
from .model_io import read_model, write_model

_TIE_POLICY_BY_FLAG = {"strict": "strict", "drop-ties": "drop-superset-on-tie"}


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default of 2 is reserved for data errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _label_count(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("at least 2 labels required")
    return value


def _train_fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError("train fraction must be in (0, 1]; 1 trains on all rows")
    return value


def _eval_fraction(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("train fraction must be in [0, 1]; 0 tests on all rows")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frilearn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="learn a one-vs-rest rule base model from a CSV")
    train.add_argument("--data", required=True, help="CSV with numeric columns and one class column")
    train.add_argument("--class-column", required=True)
    train.add_argument("--labels", type=_label_count, default=7, help="linguistic labels per variable (default 7)")
    train.add_argument("--split", type=_train_fraction, default=0.8,
                       help="train fraction (default 0.8); 1 trains on every row")
    train.add_argument("--seed", type=int, default=42)
    train.add_argument("--tie-policy", choices=sorted(_TIE_POLICY_BY_FLAG), default="strict")
    train.add_argument("--scoring", choices=["positive", "difference"], default="positive")
    train.add_argument("--prune", choices=["on", "off"], default="on")
    train.add_argument("--out", required=True, help="model file to write")
    train.set_defaults(func=cmd_train)

    ev = sub.add_parser("evaluate", help="score a model on the test side of a CSV")
    ev.add_argument("--model", required=True)
    ev.add_argument("--data", required=True)
    ev.add_argument("--class-column", default=None,
                    help="defaults to the class column recorded in the model")
    ev.add_argument("--split", type=_eval_fraction, default=None,
                    help="train fraction whose complement is scored "
                         "(default: the model's); 0 scores every row")
    ev.add_argument("--seed", type=int, default=None, help="default: the model's")
    ev.add_argument("--scoring", choices=["positive", "difference"], default=None,
                    help="default: the model's")
    ev.set_defaults(func=cmd_evaluate)

    pred = sub.add_parser("predict", help="classify one comma-separated input vector")
    pred.add_argument("--model", required=True)
    pred.add_argument("--input", required=True, help='e.g. "5.1,3.5,1.4,0.2"')
    pred.add_argument("--scoring", choices=["positive", "difference"], default=None)
    pred.set_defaults(func=cmd_predict)

    ins = sub.add_parser("inspect", help="print a model's rules")
    ins.add_argument("--model", required=True)
    ins.set_defaults(func=cmd_inspect)
    return parser


def cmd_train(args) -> int:
    data = load_csv(args.data, args.class_column, label_count=args.labels)
    if args.split == 1.0:
        train = data
    else:
        train, _ = split(data, args.split, args.seed)
    config = ModelConfig(
        label_count=args.labels,
        tie_policy=_TIE_POLICY_BY_FLAG[args.tie_policy],
        scoring_policy=args.scoring,
        seed=args.seed,
        split_fraction=args.split,
        shuffle_algorithm=SHUFFLE_ALGORITHM,
    )
    model = learn_one_vs_rest(train, config, prune=args.prune == "on")
    write_model(model, args.out)
    print(
        f"trained {len(model.class_names)} rule bases on {len(train)} examples "
        f"({train.n_vars} variables, {args.labels} labels)"
    )
    for name in model.class_names:
        stats = model.training_stats[name]
        enumerated = sum(s.environments_enumerated for s in stats)
        pruned = sum(s.environments_pruned for s in stats)
        print(
            f"class {name}: {len(model.rules[name])} rules, "
            f"{enumerated} environments enumerated, {pruned} pruned "
            f"(lattice size {stats[0].lattice_size} per consequent)"
        )
    print(f"model written to {args.out}")
    return 0


def _print_report(report: EvalReport, class_names: tuple[str, ...]) -> None:
    print(f"examples: {report.total}")
    print(f"correct: {report.correct}")
    print(f"wrong: {report.wrong}")
    print(f"undistinguished: {report.undistinguished}")
    print(f"accuracy: {report.accuracy * 100:.2f}%")
    if report.per_class_confusion:
        print("confusion (true -> verdict):")
        verdict_order = list(class_names) + [UNDISTINGUISHED]
        for true_class in class_names:
            row = report.per_class_confusion.get(true_class, {})
            for verdict in verdict_order:
                if row.get(verdict):
                    print(f"  {true_class} -> {verdict}: {row[verdict]}")


def cmd_evaluate(args) -> int:
    model = read_model(args.model)
    class_column = args.class_column or model.output_partition.variable_name
    fraction = model.config.split_fraction if args.split is None else args.split
    seed = model.config.seed if args.seed is None else args.seed
    if args.scoring is not None:
        model = _with_scoring(model, args.scoring)
    try:
        data = load_csv(args.data, class_column, label_count=model.config.label_count)
    except EmptyDatasetError:
        data = None
    if data is None or fraction == 1.0:
        print("warning: empty test set, nothing to evaluate (degenerate report)")
        _print_report(EvalReport(0, 0, 0, 0.0, {}, degenerate=True), model.class_names)
        return 0
    test = data if fraction == 0.0 else split(data, fraction, seed)[1]
    _print_report(evaluate(model, test), model.class_names)
    return 0


def _with_scoring(model: OneVsRestModel, scoring: str) -> OneVsRestModel:
    from dataclasses import replace

    return replace(model, config=replace(model.config, scoring_policy=scoring))


def cmd_predict(args) -> int:
    model = read_model(args.model)
    if args.scoring is not None:
        model = _with_scoring(model, args.scoring)
    parts = [p.strip() for p in args.input.split(",")]
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise DataError(f"--input must be comma-separated numbers, got {args.input!r}") from None
    prediction = classify(model, values)
    for name in model.class_names:
        print(f"{name}: {prediction.scores[name]:.6f}")
    print(f"verdict: {prediction.verdict or UNDISTINGUISHED}")
    return 0


def _rule_text(rule: Rule, model: OneVsRestModel) -> str:
    if rule.antecedent.atoms:
        clauses = " AND ".join(
            f"{model.input_partitions[atom.variable_index].variable_name} is "
            f"{model.input_partitions[atom.variable_index].label_names[atom.label_index]}"
            for atom in rule.antecedent.sorted_atoms()
        )
    else:
        clauses = "TRUE"
    consequent = (
        f"{model.output_partition.variable_name} is "
        f"{model.output_partition.label_names[rule.consequent_label]}"
    )
    return f"IF {clauses} THEN {consequent} [{rule.degree:.2f}]"


def cmd_inspect(args) -> int:
    model = read_model(args.model)
    for name in model.class_names:
        rules = model.rules[name]
        if not rules:
            print(f"class {name}: (no rules)")
            continue
        print(f"class {name}:")
        ordered = sorted(
            rules,
            key=lambda r: (-r.degree, r.consequent_label, r.antecedent.sorted_atoms()),
        )
        for rule in ordered:
            print(f"  {_rule_text(rule, model)}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FrilearnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 -- anything else is our bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
