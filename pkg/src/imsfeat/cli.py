"""Command-line entry point: ``imsfeat {compute,verify,generate,hcurve,normalize,project}``.

Exit codes: 0 success, 1 a per-instance computation failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .clustering import DEFAULT_ALPHA, h_curve
from .counting import DEFAULT_CAPACITY_BUDGET
from .errors import IMSFeatError, InvariantViolation, MalformedInput
from .instance import generate_control, read_instance, serialize
from .oracle import verify_instance
from .pipeline import (
    FEATURE_NAMES,
    ExtractConfig,
    Normalizer,
    extract_full,
    fit_normalizer,
    project,
    projection_inputs,
    read_feature_csv,
    write_feature_csv,
)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _alpha(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("alpha must lie strictly between 0 and 1")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=_alpha, default=DEFAULT_ALPHA,
                        help="elbow threshold for g* (default: %(default)s)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for every random draw (default: %(default)s)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker processes over instances (default: %(default)s)")
    common.add_argument("--format", choices=("canonical", "literature"), default="canonical",
                        help="instance file format (default: %(default)s)")
    common.add_argument("--capacity-budget", type=_positive_int, default=DEFAULT_CAPACITY_BUDGET,
                        help="max table entries over capacities (default: %(default)s)")
    common.add_argument("--out", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="imsfeat", description="IMS-based features of 0-1 knapsack instances."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="extract features to CSV")
    p.add_argument("paths", nargs="+", help="instance files")
    p.add_argument("--diagnostic-solve", action="store_true",
                   help="add a non-canonical column timing an exact DP solve")

    p = sub.add_parser("verify", parents=[common],
                       help="check fast algorithms against brute force on random instances")
    p.add_argument("--count", type=_positive_int, default=1000, help="instances to verify")
    p.add_argument("--c-max", type=int, default=10**5, help="capacity drawn from [2, C_MAX]")
    p.add_argument("--quiet", action="store_true", help="only print failures and the summary")

    p = sub.add_parser("generate", parents=[common], help="write random control instances")
    p.add_argument("--count", type=_positive_int, default=100, help="instances to write")
    p.add_argument("--c-max", type=int, default=10**5, help="capacity drawn from [2, C_MAX]")

    p = sub.add_parser("hcurve", parents=[common], help="emit the k-means cost curve g,h")
    p.add_argument("path", help="instance file")
    p.add_argument("--g-max", type=_positive_int, default=50, help="largest group count (capped at n)")

    p = sub.add_parser("normalize", parents=[common], help="normalize a feature CSV")
    p.add_argument("features", help="feature CSV from `compute`")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fit", metavar="PARAMS", help="fit on this corpus and save parameters")
    group.add_argument("--params", metavar="PARAMS", help="apply saved parameters")

    p = sub.add_parser("project", parents=[common], help="project normalized features to 2D")
    p.add_argument("normalized", help="normalized feature CSV")
    p.add_argument("--external", required=True,
                   help="CSV with instance,first_weight,smaller_better_pairs,"
                        "reduced_maximum_cardinality,reduced_polyfit_linear")
    return parser


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _err(msg):
    print(msg, file=sys.stderr)


def _map(fn, jobs, threads):
    if threads == 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs, chunksize=1))


# -- compute

def _compute_one(job):
    path, fmt, config = job
    try:
        inst = read_instance(path, fmt)
    except (OSError, MalformedInput, InvariantViolation) as exc:
        return path, None, None, f"parse: {exc}"
    try:
        res = extract_full(inst, config)
    except IMSFeatError as exc:
        return path, None, None, f"compute: {exc}"
    return path, res.features, res.solve_seconds, None


def cmd_compute(args) -> int:
    config = ExtractConfig(alpha=args.alpha, capacity_budget=args.capacity_budget,
                           diagnostic_solve=args.diagnostic_solve)
    results = _map(_compute_one, [(p, args.format, config) for p in args.paths], args.threads)
    rows, solve, code = [], {}, EXIT_OK
    for path, fv, seconds, error in results:
        if error is not None:
            _err(f"{path}: {error}")
            code = max(code, EXIT_USAGE if error.startswith("parse") else EXIT_FAILURE)
            continue
        rows.append((path, fv))
        solve[path] = seconds
    with _output(args.out) as out:
        write_feature_csv(rows, out, solve if args.diagnostic_solve else None)
    return code


# -- verify

def _verify_one(job):
    k, inst, seed, alpha, budget = job
    return verify_instance(inst, instance_id=f"control_{k:05d}", seed=seed,
                           alpha=alpha, capacity_budget=budget)


def cmd_verify(args) -> int:
    instances = generate_control(args.count, args.seed, args.c_max)
    seeds = np.random.SeedSequence(args.seed).generate_state(args.count, dtype=np.uint32)
    jobs = [(k, inst, int(seeds[k]), args.alpha, args.capacity_budget)
            for k, inst in enumerate(instances)]
    reports = _map(_verify_one, jobs, args.threads)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        for line in r.lines():
            if not args.quiet or "FAIL" in line:
                print(line)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["instance", "check", "result", "partition_seed"])
            for r in reports:
                writer.writerows(row + (r.seed,) for row in r.csv_rows())
    n_checks = sum(len(r.checks) for r in reports)
    _err(f"verified {len(reports)} instances, {n_checks} checks, "
         f"{len(failed)} instances with failures")
    return EXIT_OK if not failed else EXIT_FAILURE


# -- generate

def cmd_generate(args) -> int:
    if args.out is None:
        _err("generate: --out DIR is required")
        return EXIT_USAGE
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    instances = generate_control(args.count, args.seed, args.c_max)
    width = max(5, len(str(args.count - 1)))
    for k, inst in enumerate(instances):
        (out_dir / f"control_{k:0{width}d}.txt").write_text(serialize(inst, args.format))
    return EXIT_OK


# -- hcurve

def cmd_hcurve(args) -> int:
    try:
        inst = read_instance(args.path, args.format)
    except (OSError, MalformedInput, InvariantViolation) as exc:
        _err(f"{args.path}: {exc}")
        return EXIT_USAGE
    with _output(args.out) as out:
        out.write("g,h\n")
        for g, h in h_curve(inst.weights, args.g_max):
            out.write(f"{g},{h!r}\n")
    return EXIT_OK


# -- normalize / project

def _fmt_float(v):
    return "NA" if v is None or math.isnan(v) else repr(float(v))


def _read_float_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = []
        for rec in reader:
            rows.append((rec.pop("instance"),
                         {k: (math.nan if v == "NA" else float(v)) for k, v in rec.items()}))
        return rows


def cmd_normalize(args) -> int:
    try:
        rows = read_feature_csv(args.features)
        if args.fit:
            normalizer = fit_normalizer([fv for _, fv in rows])
            normalizer.save(args.fit)
        else:
            normalizer = Normalizer.load(args.params)
    except (OSError, ValueError) as exc:
        _err(f"normalize: {exc}")
        return EXIT_USAGE
    with _output(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["instance", *FEATURE_NAMES])
        for instance_id, fv in rows:
            norm = normalizer.normalize(fv)
            writer.writerow([instance_id] + [_fmt_float(norm[n]) for n in FEATURE_NAMES])
    return EXIT_OK


def cmd_project(args) -> int:
    try:
        normalized = _read_float_csv(args.normalized)
        external = dict(_read_float_csv(args.external))
    except (OSError, ValueError, KeyError) as exc:
        _err(f"project: {exc}")
        return EXIT_USAGE
    code = EXIT_OK
    with _output(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["instance", "z1", "z2"])
        for instance_id, values in normalized:
            try:
                point = project(projection_inputs(values, external.get(instance_id, {})))
            except (IMSFeatError, ValueError) as exc:
                _err(f"{instance_id}: {exc}")
                code = EXIT_FAILURE
                continue
            writer.writerow([instance_id, repr(point.z1), repr(point.z2)])
    return code


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "generate": cmd_generate,
    "hcurve": cmd_hcurve,
    "normalize": cmd_normalize,
    "project": cmd_project,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
