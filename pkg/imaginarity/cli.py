"""
Command-line front end.

Exit codes: 0 success, 1 failed checks or a violated example ordering,
2 unreadable input documents, 3 invalid states or operations, 4 parameter
or suite selection errors.
"""

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

from imaginarity.channels import random_cptp, random_real_operation
from imaginarity.conf import settings
from imaginarity.helpers import (
    DimensionMismatchError,
    DomainError,
    ImaginarityError,
    OrderingViolationError,
    ParseError,
    UnknownCheckError,
    ValidationError,
    format_number,
    serialize,
)
from imaginarity.log import configure_logging
from imaginarity.measures.base import (
    AZParams,
    MeasureReport,
    MeasureValue,
    evaluate_report,
    get_measure,
    measure_grid,
)
from imaginarity.parsers import dump_kraus, dump_state, read_state
from imaginarity.properties import (
    PropertyConfig,
    reproduce_examples,
    run_suites,
    summary_table,
)
from imaginarity.states import random_density, random_pd_density, random_real_density

logger = logging.getLogger(__name__)

MEASURE_FLAGS = (
    ("umegaki", "umegaki"),
    ("tsallis", "tsallis"),
    ("renyi", "renyi-az"),
    ("operator", "operator"),
)
ALL_MEASURE_IDS = tuple(measure_id for _, measure_id in MEASURE_FLAGS)
CSV_COLUMNS = ("measure-id", "alpha", "z", "q", "lambda", "value")
RANDOM_KINDS = ("state", "real-state", "pd-state", "real-op", "cptp")


def float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated numbers, got {text!r}"
        )


def int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated integers, got {text!r}"
        )


def z_list(text):
    # "min" stands for the smallest admissible z, max(alpha, 1 - alpha)
    return [
        None if x.strip() == "min" else float(x) for x in text.split(",") if x.strip()
    ]


def emit(text, out=None):
    """Write to ``out`` or stdout; relative paths land in ``IMAGINARITY_OUTPUT_DIR``."""
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(settings.IMAGINARITY_OUTPUT_DIR) / out
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("wrote %s", path)


def csv_row(value):
    parameters = value.parameters
    return (
        value.measure_id,
        parameters.get("alpha"),
        parameters.get("z"),
        parameters.get("q"),
        parameters.get("lambda"),
        value.value,
    )


def _sort_key(row):
    return tuple((cell is None, cell if cell is not None else 0) for cell in row)


def render_csv(values) -> str:
    rows = sorted((csv_row(v) for v in values), key=_sort_key)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        cells = (format_number(cell) if cell is not None else "" for cell in row[1:])
        writer.writerow([row[0], *cells])
    return buffer.getvalue()


def render_table(report) -> str:
    lines = [report.label]
    for value in report.values:
        params = ", ".join(
            f"{k}={format_number(v)}" for k, v in value.parameters.items()
        )
        name = f"{value.measure_id}({params})" if params else value.measure_id
        shown = format_number(value.value) if value.value is not None else value.note
        lines.append(f"  {name:<36} {shown}")
    return "\n".join(lines) + "\n"


def selected_measure_ids(args):
    chosen = [measure_id for flag, measure_id in MEASURE_FLAGS if getattr(args, flag)]
    return chosen or list(ALL_MEASURE_IDS)


def build_measures(args, measure_ids):
    if args.grid:
        return [
            measure
            for measure_id in measure_ids
            for measure in measure_grid(measure_id)
        ]
    z = args.z if args.z is not None else max(args.alpha, 1 - args.alpha)
    parameters = {
        "umegaki": {},
        "tsallis": {"q": args.q},
        "renyi-az": {"alpha": args.alpha, "z": z},
        "operator": {"lambda": args.lam},
    }
    return [
        get_measure(measure_id, **parameters[measure_id]) for measure_id in measure_ids
    ]


def cmd_measure(args):
    measure_ids = selected_measure_ids(args)
    lenient = args.all or len(measure_ids) == len(MEASURE_FLAGS)
    measures = build_measures(args, measure_ids)
    rho = read_state(args.state)
    if lenient:
        report = evaluate_report(rho, str(args.state), measures)
    else:
        # explicitly requested measures must be defined on the state
        values = [MeasureValue(m.measure_id, m.parameters, m(rho)) for m in measures]
        report = MeasureReport(str(args.state), values)

    if args.format == "csv":
        emit(render_csv(report.values), args.out)
    elif args.format == "json":
        emit(serialize(report.to_dict()) + "\n", args.out)
    else:
        emit(render_table(report), args.out)
    return 0


def scan_measures(args):
    measures = []
    for measure_id in args.measure or ALL_MEASURE_IDS:
        if measure_id == "renyi-az":
            if args.alpha is None:
                measures.extend(measure_grid(measure_id))
                continue
            if args.z is None:
                points = AZParams.grid(args.alpha)
            else:
                points = [
                    AZParams(alpha, max(alpha, 1 - alpha) if z is None else z)
                    for alpha in args.alpha
                    for z in args.z
                ]
            measures.extend(
                get_measure(measure_id, alpha=p.alpha, z=p.z) for p in points
            )
        elif measure_id == "tsallis" and args.q is not None:
            measures.extend(get_measure(measure_id, q=q) for q in args.q)
        elif measure_id == "operator" and args.lam is not None:
            measures.extend(get_measure(measure_id, lam=lam) for lam in args.lam)
        else:
            measures.extend(measure_grid(measure_id))
    return measures


def cmd_scan(args):
    measures = scan_measures(args)
    rho = read_state(args.state)
    report = evaluate_report(rho, str(args.state), measures)
    emit(render_csv(report.values), args.out)
    return 0


def property_config(args) -> PropertyConfig:
    overrides = {}
    for name in ("dims", "trials", "seed", "workers"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    return PropertyConfig(**overrides)


def cmd_verify(args):
    config = property_config(args)
    reports = run_suites(args.suite or ["all"], config)
    if args.format == "json":
        document = {
            "config": {
                "dims": list(config.dims),
                "trials": config.trials,
                "seed": config.seed,
                "tolerance": config.tolerance,
                "equality_tolerance": config.equality_tolerance,
            },
            "reports": [report.to_dict() for report in reports],
        }
        emit(serialize(document) + "\n", args.out)
    else:
        emit(summary_table(reports) + "\n", args.out)
    return 0 if all(report.passed for report in reports) else 1


def cmd_examples(args):
    report = reproduce_examples()
    if args.format == "json":
        emit(serialize(report.to_dict()) + "\n", args.out)
    else:
        emit(report.table() + "\n", args.out)
    return 1 if report.mismatches else 0


def cmd_random(args):
    if args.kind == "state":
        text = dump_state(random_density(args.dim, args.rank, seed=args.seed))
    elif args.kind == "real-state":
        text = dump_state(random_real_density(args.dim, args.rank, seed=args.seed))
    elif args.kind == "pd-state":
        text = dump_state(random_pd_density(args.dim, seed=args.seed))
    elif args.kind == "real-op":
        text = dump_kraus(random_real_operation(args.dim, args.n_kraus, seed=args.seed))
    else:
        text = dump_kraus(random_cptp(args.dim, args.n_kraus, seed=args.seed))
    emit(text, args.out)
    return 0


def add_parameter_options(parser, many=False):
    kind = float_list if many else float
    parser.add_argument("--alpha", type=kind, default=None if many else 0.5)
    parser.add_argument(
        "--z",
        type=z_list if many else float,
        default=None,
        help="defaults to max(alpha, 1 - alpha)",
    )
    parser.add_argument("--q", type=kind, default=None if many else 0.5)
    parser.add_argument(
        "--lambda", dest="lam", type=kind, default=None if many else 0.5
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="imaginarity", description=__doc__.strip().split("\n")[0]
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    subparsers = parser.add_subparsers(dest="command", required=True)

    measure = subparsers.add_parser(
        "measure", help="evaluate measures on a state document"
    )
    measure.add_argument("state")
    measure.add_argument(
        "--all", action="store_true", help="every measure (the default)"
    )
    for flag, _ in MEASURE_FLAGS:
        measure.add_argument(f"--{flag}", action="store_true")
    add_parameter_options(measure)
    measure.add_argument(
        "--grid", action="store_true", help="use the configured parameter grids"
    )
    measure.add_argument("--format", choices=("table", "csv", "json"), default="table")
    measure.add_argument("--out")
    measure.set_defaults(handler=cmd_measure)

    scan = subparsers.add_parser(
        "scan", help="write measure values over parameter grids as CSV"
    )
    scan.add_argument("state")
    scan.add_argument(
        "--measure",
        action="append",
        choices=ALL_MEASURE_IDS,
        help="repeatable; all measures when omitted",
    )
    add_parameter_options(scan, many=True)
    scan.add_argument("--out")
    scan.set_defaults(handler=cmd_scan)

    verify = subparsers.add_parser("verify", help="run randomized verification suites")
    verify.add_argument(
        "--suite", action="append", help="repeatable; 'all' when omitted"
    )
    verify.add_argument("--dims", type=int_list)
    verify.add_argument("--trials", type=int)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--workers", type=int)
    verify.add_argument("--format", choices=("table", "json"), default="table")
    verify.add_argument("--out")
    verify.set_defaults(handler=cmd_verify)

    examples = subparsers.add_parser(
        "examples", help="reproduce the two worked examples"
    )
    examples.add_argument("--format", choices=("table", "json"), default="table")
    examples.add_argument("--out")
    examples.set_defaults(handler=cmd_examples)

    random = subparsers.add_parser(
        "random", help="write a random state or operation document"
    )
    random.add_argument("kind", choices=RANDOM_KINDS)
    random.add_argument("--dim", type=int, required=True)
    random.add_argument("--rank", type=int)
    random.add_argument("--n-kraus", type=int, default=2)
    random.add_argument("--seed", type=int, default=0)
    random.add_argument("--out")
    random.set_defaults(handler=cmd_random)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except ParseError as e:
        logger.error("parse error: %s", e)
        return 2
    except ValidationError as e:
        logger.error("invalid %s: %s", e.invariant, e)
        return 3
    except (DomainError, DimensionMismatchError, UnknownCheckError) as e:
        logger.error("%s", e)
        return 4
    except OrderingViolationError as e:
        logger.error("ordering violated: %s", e)
        return 1
    except ImaginarityError as e:
        logger.error("%s", e)
        return 1
