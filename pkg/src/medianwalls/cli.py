"""Command-line front end: ``medianwalls <group> <command> ...``.

Every command prints one JSON report (or writes it to ``--output``). Exit
codes: 0 computed, 1 invalid input, 2 cap exceeded, 3 internal
verification failure.
"""

from __future__ import annotations

import argparse
import copy
import hashlib
import os
import random
import re
import sys
import time
from fractions import Fraction

from . import __version__
from . import io as mio
from .errors import CapExceededError, InvalidInputError, MedianWallsError, VerificationError
from .generators import KERNEL_KINDS, random_kernel
from .kernels import DEFAULT_MAX_VECTORS, classify
from .l1embed import DEFAULT_MAX_POINTS as LP_MAX_POINTS
from .l1embed import cut_cone_decompose, verify_cut_certificate, walls_to_embedding
from .medianization import DEFAULT_MAX_WALLS, check_median, medianize
from .metric import DEFAULT_MAX_POINTS, L1Points, is_median, median_closure, quotient
from .rational import decimal_str, rat_str
from .walls import extract_convex_walls, subdivide_interval

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3

# environment variables holding default caps
CAP_ENV = {
    "max_points": ("MEDIANWALLS_MAX_POINTS", DEFAULT_MAX_POINTS),
    "lp_max_points": ("MEDIANWALLS_LP_MAX_POINTS", LP_MAX_POINTS),
    "max_walls": ("MEDIANWALLS_MAX_WALLS", DEFAULT_MAX_WALLS),
    "max_vectors": ("MEDIANWALLS_MAX_VECTORS", DEFAULT_MAX_VECTORS),
    "closure_max_points": ("MEDIANWALLS_CLOSURE_MAX_POINTS", 4096),
}

_RATIONAL = re.compile(r"^-?\d+/\d+$")


def _env_cap(name):
    var, default = CAP_ENV[name]
    raw = os.environ.get(var)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError(f"{var} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidInputError(f"{var} must be positive")
    return value


def _cap(args, name):
    value = getattr(args, name, None)
    if value is None:
        return _env_cap(name)
    if value < 1:
        raise InvalidInputError(f"--{name.replace('_', '-')} must be positive")
    return value


class _Inputs:
    """Reads input files once, recording digests and contents for the report."""

    def __init__(self):
        self.records = []

    def load(self, path):
        try:
            raw = open(path, "rb").read()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from exc
        record = {"path": str(path), "sha256": hashlib.sha256(raw).hexdigest()}
        self.records.append(record)
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidInputError(f"{path}: not UTF-8 text") from exc
        data = mio.parse_json(text, str(path))
        # echoed so certificates can be re-checked from the report alone
        record["document"] = data
        return data


# -- commands --------------------------------------------------------------

def cmd_median_check(args, inputs):
    M = mio.metric_from_json(inputs.load(args.metric), allow_pseudo=True)
    cap = _cap(args, "max_points")
    Q, classes = quotient(M)
    verdict = is_median(Q, max_points=cap)
    out = {"n": M.n, "quotient_n": Q.n, **mio.median_verdict_to_json(verdict)}
    if Q.n != M.n:
        out["class_map"] = list(classes)
    return out


def cmd_median_closure(args, inputs):
    P = mio.points_from_json(inputs.load(args.points))
    M, coords = median_closure(P, max_points=_cap(args, "closure_max_points"))
    return {"n": M.n, "points": mio.points_to_json(L1Points(coords, P.dim))["points"],
            "metric": mio.metric_to_json(M)}


def cmd_walls_extract(args, inputs):
    M = mio.metric_from_json(inputs.load(args.metric))
    if M.n > _cap(args, "max_points"):
        raise CapExceededError(f"{M.n} points exceed the cap of {_cap(args, 'max_points')}")
    WS = extract_convex_walls(M)
    return {"walls": mio.walls_to_json(WS), "measure_identity_verified": True}


def cmd_walls_medianize(args, inputs):
    WS = mio.walls_from_json(inputs.load(args.walls))
    MS = medianize(WS, max_walls=_cap(args, "max_walls"))
    verdict = check_median(MS, max_points=None)
    out = mio.medianized_to_json(MS)
    out["quotient_is_median"] = mio.median_verdict_to_json(verdict)
    out["iota_isometric"] = True
    return out


def cmd_walls_subdivide(args, inputs):
    M = mio.metric_from_json(inputs.load(args.metric))
    a, b, pairs = mio.pairs_from_json(inputs.load(args.pairs))
    if M.n > _cap(args, "max_points"):
        raise CapExceededError(f"{M.n} points exceed the cap of {_cap(args, 'max_points')}")
    R = subdivide_interval(M, a, b, pairs)
    out = mio.subdivision_to_json(R)
    out["segment_lengths"] = [rat_str(M.d[x][y]) for x, y in zip(R.sequence, R.sequence[1:])]
    out["distance"] = rat_str(M.d[a][b])
    return out


def cmd_embed_l1(args, inputs):
    M = mio.metric_from_json(inputs.load(args.metric), allow_pseudo=True)
    result = cut_cone_decompose(M, max_points=_cap(args, "lp_max_points"))
    if result.feasible:
        return {"l1_embeddable": True, "decomposition": mio.decomposition_to_json(result),
                "verified": result.verify(M)}
    return {"l1_embeddable": False, "certificate": mio.infeasible_to_json(result),
            "verified": verify_cut_certificate(M, result)}


def cmd_embed_from_walls(args, inputs):
    WS = mio.walls_from_json(inputs.load(args.walls))
    coords = walls_to_embedding(WS, args.base)
    return {"base": args.base, "dim": len(WS), "points": [[rat_str(v) for v in p] for p in coords]}


def _classify_json(K, args):
    v = classify(K, bound=args.bound, lp_max_points=_cap(args, "lp_max_points"),
                 max_vectors=_cap(args, "max_vectors"))
    return mio.hierarchy_to_json(v)


def cmd_kernel_classify(args, inputs):
    if args.bound < 1:
        raise InvalidInputError("--bound must be at least 1")
    if args.random is None:
        if args.kernel is None:
            raise InvalidInputError("kernel classify needs a kernel file or --random N")
        K = mio.kernel_from_json(inputs.load(args.kernel))
        return _classify_json(K, args)
    if args.random < 1 or not 1 <= args.points <= 12:
        raise InvalidInputError("--random needs N >= 1 and --points in 1..12")
    rng = random.Random(args.seed)
    runs, tally = [], {}
    for t in range(args.random):
        kind = KERNEL_KINDS[t % len(KERNEL_KINDS)]
        K = random_kernel(rng, args.points, kind)
        result = _classify_json(K, args)
        key = (result["type1"], result["hypermetric"], result["negative_type"])
        tally[key] = tally.get(key, 0) + 1
        runs.append({"kind": kind, "kernel": mio.kernel_to_json(K), "verdict": result})
    return {"seed": args.seed, "count": args.random, "points": args.points,
            "summary": [{"type1": a, "hypermetric": b, "negative_type": c, "count": k}
                        for (a, b, c), k in sorted(tally.items())],
            "inversions": 0, "runs": runs}


# -- argument parsing ------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--decimal", type=int, metavar="K",
                        help="add a decimal rendering with K digits next to the exact values")

    parser = argparse.ArgumentParser(prog="medianwalls",
                                     description="Exact finite median geometry and embedding checks.")
    parser.add_argument("--version", action="version", version=f"medianwalls {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    def add(group, name, func, help):
        p = group.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func, command=name)
        return p

    median = groups.add_parser("median", help="medians and median closures").add_subparsers(
        dest="command", required=True)
    p = add(median, "check", cmd_median_check, "decide whether a metric is median")
    p.add_argument("metric")
    p.add_argument("--max-points", type=int)
    p = add(median, "closure", cmd_median_closure, "median closure of l1 points")
    p.add_argument("points")
    p.add_argument("--closure-max-points", type=int)

    walls = groups.add_parser("walls", help="measured walls").add_subparsers(
        dest="command", required=True)
    p = add(walls, "extract", cmd_walls_extract, "convex walls of a median metric")
    p.add_argument("metric")
    p.add_argument("--max-points", type=int)
    p = add(walls, "medianize", cmd_walls_medianize, "median space of admissible sections")
    p.add_argument("walls")
    p.add_argument("--max-walls", type=int)
    p = add(walls, "subdivide", cmd_walls_subdivide, "subdivide W(a|b) along a geodesic")
    p.add_argument("metric")
    p.add_argument("pairs")
    p.add_argument("--max-points", type=int)

    embed = groups.add_parser("embed", help="l1 embeddings").add_subparsers(
        dest="command", required=True)
    p = add(embed, "l1", cmd_embed_l1, "cut-cone decomposition or Farkas certificate")
    p.add_argument("metric")
    p.add_argument("--lp-max-points", type=int)
    p = add(embed, "from-walls", cmd_embed_from_walls, "l1 coordinates from walls")
    p.add_argument("walls")
    p.add_argument("--base", type=int, required=True)

    kernel = groups.add_parser("kernel", help="kernel hierarchy").add_subparsers(
        dest="command", required=True)
    p = add(kernel, "classify", cmd_kernel_classify, "type 1 / hypermetric / negative type")
    p.add_argument("kernel", nargs="?")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--random", type=int, metavar="N", help="classify N seeded random kernels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=5, help="size of random kernels")
    p.add_argument("--lp-max-points", type=int)
    p.add_argument("--max-vectors", type=int)
    return parser


def _decimal_view(obj, digits):
    if isinstance(obj, dict):
        return {k: _decimal_view(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decimal_view(v, digits) for v in obj]
    if isinstance(obj, str) and _RATIONAL.match(obj):
        return decimal_str(Fraction(obj), digits)
    return obj


def run(argv=None):
    """Execute one command; returns ``(exit_code, report, output_path)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.decimal is not None and args.decimal < 0:
        parser.error("--decimal must be nonnegative")
    inputs = _Inputs()
    report = {"tool": "medianwalls", "version": __version__,
              "command": f"{args.group} {args.command}", "inputs": inputs.records}
    started = time.perf_counter()
    try:
        result = args.func(args, inputs)
        code = EXIT_OK
        report["result"] = result
        if args.decimal is not None:
            report["decimal"] = _decimal_view(copy.deepcopy(result), args.decimal)
    except VerificationError as exc:
        code, report["error"] = EXIT_VERIFY, {"kind": "verification-failure", "message": str(exc)}
    except CapExceededError as exc:
        code, report["error"] = EXIT_CAP, {"kind": "cap-exceeded", "message": str(exc)}
    except (InvalidInputError, MedianWallsError) as exc:
        code, report["error"] = EXIT_INVALID, {"kind": "invalid-input", "message": str(exc)}
        if getattr(exc, "witness", None) is not None:
            report["error"]["witness"] = list(exc.witness)
    report["exit_code"] = code
    report["timings"] = {"total_seconds": round(time.perf_counter() - started, 6)}
    return code, report, args.output


def main(argv=None):
    code, report, output = run(argv)
    text = mio.dumps(report)
    if output:
        try:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            sys.stderr.write(f"medianwalls: cannot write {output}: {exc.strerror}\n")
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    if "error" in report:
        sys.stderr.write(f"medianwalls: {report['error']['kind']}: {report['error']['message']}\n")
    return code
