"""Command-line front door.

Exit codes: 0 success/feasible, 1 malformed input or config, 2 I/O failure,
3 infeasible census, 4 instance rule violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from pragen import generator, model
from pragen.feasibility import Census, WardConfig, is_feasible, subset_sum_oracle
from pragen.generator import ConfigError
from pragen.model import Gender, SchemaError

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_IO = 2
EXIT_INFEASIBLE = 3
EXIT_VIOLATIONS = 4


def _parse_rooms(spec: str) -> WardConfig:
    try:
        capacities = tuple(int(part) for part in spec.split(",") if part.strip())
        return WardConfig(capacities)
    except ValueError as exc:
        raise ValueError(f"bad room list {spec!r}: {exc}") from exc


def cmd_check(args: argparse.Namespace) -> int:
    try:
        ward = _parse_rooms(args.rooms)
        census = Census(args.females, args.males)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    verdict = is_feasible(census, ward)
    if args.json:
        print(
            json.dumps(
                {
                    "feasible": verdict.feasible,
                    "method": verdict.method.value,
                    "witness": None if verdict.witness is None else list(verdict.witness),
                },
                sort_keys=True,
            )
        )
    else:
        print(f"method: {verdict.method.value}")
        print(f"feasible: {'yes' if verdict.feasible else 'no'}")
        if verdict.witness is not None:
            rooms = ",".join(str(i) for i in verdict.witness) or "-"
            print(f"female rooms: {rooms}")
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


def _read_instance(path: str) -> model.Instance | int:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return model.deserialize(text)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def _audit_feasibility(instance: model.Instance) -> list[model.Violation]:
    out = []
    for t, census in enumerate(model.daily_census(instance), start=1):
        if not subset_sum_oracle(census, instance.ward).feasible:
            out.append(
                model.Violation(
                    "gender-separation",
                    None,
                    f"day {t}: census ({census.females}F, {census.males}M) does not fit",
                )
            )
    return out


def cmd_validate(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    if isinstance(instance, int):
        return instance
    violations = model.validate(instance)
    if args.feasibility:
        violations += _audit_feasibility(instance)
    if args.json:
        print(
            json.dumps(
                {
                    "valid": not violations,
                    "violations": [
                        {"rule": v.rule, "patient": v.patient_id, "detail": v.detail}
                        for v in violations
                    ],
                },
                sort_keys=True,
            )
        )
    else:
        for v in violations:
            who = v.patient_id or "-"
            print(f"violation [{v.rule}] patient={who}: {v.detail}")
        if not violations:
            print("ok")
    return EXIT_OK if not violations else EXIT_VIOLATIONS


def _histogram(values: list[int], width: int) -> dict[int, int]:
    counts = Counter((v // width) * width for v in values)
    return dict(sorted(counts.items()))


def cmd_stats(args: argparse.Namespace) -> int:
    instance = _read_instance(args.instance)
    if isinstance(instance, int):
        return instance
    per_day, overall = model.load_factor(instance)
    patients = instance.patients
    n = len(patients)

    def rate(flag) -> float:
        return sum(1 for p in patients if flag(p)) / n if n else 0.0

    report = {
        "days": instance.horizon.days,
        "patients": n,
        "load_per_day": [round(x, 4) for x in per_day],
        "load_overall": round(overall, 4),
        "female_rate": rate(lambda p: p.gender is Gender.FEMALE),
        "emergency_rate": rate(lambda p: p.is_emergency),
        "private_rate": rate(lambda p: p.is_private),
        "companion_rate": rate(lambda p: p.has_companion),
        "age_histogram": _histogram([p.age for p in patients], 5),
        "los_histogram": _histogram([p.los for p in patients], 1),
    }
    if args.json:
        print(json.dumps(report, sort_keys=True))
        return EXIT_OK
    print(f"days: {report['days']}")
    print(f"patients: {n}")
    print(f"overall load: {report['load_overall']:.4f}")
    print("load per day: " + " ".join(f"{x:.2f}" for x in per_day))
    for key in ("female_rate", "emergency_rate", "private_rate", "companion_rate"):
        print(f"{key.replace('_', ' ')}: {report[key]:.3f}")
    print("age histogram (5-year bands):")
    for start, count in report["age_histogram"].items():
        print(f"  {start:3d}-{start + 4:<3d} {'#' * min(count, 60)} ({count})")
    print("stay-length histogram (days):")
    for start, count in report["los_histogram"].items():
        print(f"  {start:3d}     {'#' * min(count, 60)} ({count})")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    template_path = Path(args.template)
    try:
        doc = json.loads(template_path.read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"error: cannot read {template_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"error: template is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        config = generator.config_from_dict(doc, base_dir=template_path.parent)
        config = generator.with_overrides(
            config, seed=args.seed, instance_count=args.count, target_load=args.load
        )
        problems = generator.validate_config(config)
        if problems:
            raise ConfigError(problems)
        instances = generator.generate(config)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_BAD_INPUT
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        summaries = []
        for k, instance in enumerate(instances):
            path = out_dir / f"instance_{k}.json"
            path.write_text(model.serialize(instance), encoding="utf-8")
            audit = _audit_feasibility(instance)
            summaries.append(
                {
                    "file": path.name,
                    "achieved_load": round(instance.meta["achieved_load"], 4),
                    "feasible_days": "all" if not audit else f"{len(audit)} violations",
                }
            )
    except OSError as exc:
        print(f"error: cannot write instances: {exc}", file=sys.stderr)
        return EXIT_IO
    for s in summaries:
        print(f"{s['file']}: load={s['achieved_load']:.4f} separability={s['feasible_days']}")
    return EXIT_OK


def cmd_template(args: argparse.Namespace) -> int:
    text = json.dumps(generator.default_template(), sort_keys=True, indent=2) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pragen",
        description="Generate and inspect gender-separable patient-stay instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate instances from a template file")
    p.add_argument("template", help="template JSON path")
    p.add_argument("--out", required=True, help="output directory for instance_{k}.json")
    p.add_argument("--seed", type=int, default=None, help="override the template seed")
    p.add_argument("--count", type=int, default=None, help="override instance_count")
    p.add_argument("--load", type=float, default=None, help="override target_load")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="decide one census against a ward")
    p.add_argument("--rooms", required=True, help="comma-separated capacities, e.g. 2,2,4")
    p.add_argument("--f", dest="females", type=int, required=True, help="female count")
    p.add_argument("--m", dest="males", type=int, required=True, help="male count")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("validate", help="check an instance file against the stay rules")
    p.add_argument("instance", help="instance JSON path")
    p.add_argument(
        "--feasibility",
        action="store_true",
        help="also audit every day's census for gender separability",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="summarize an instance file")
    p.add_argument("instance", help="instance JSON path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("template", help="print a fully explicit default template")
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=cmd_template)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold those into the bad-input code
        return EXIT_OK if exc.code in (0, None) else EXIT_BAD_INPUT
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
