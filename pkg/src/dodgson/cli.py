"""Command-line front end: ``dodgson {det,verify,pyramid,bench}``.

Exit codes: 0 success, 1 identity failures (verify), 2 input or
configuration error, 3 zero-policy abort.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import dataclass
from itertools import combinations

from .condensation import CondensationAborted, ZeroPolicy, dodgson_det, format_trace
from .identities import (
    CampaignSummary,
    corner_identity_check,
    desnanot_jacobi_check,
    fuzz_identities,
    gamma_lambda_digamma_check,
    lemma1_checks,
    lemma2_checks,
)
from .matfile import MatrixFormatError, read_matrix
from .matrix import COFACTOR_BOUND, Matrix, ShapeError, det_bareiss, det_cofactor, random_matrix
from .scalar import INTEGERS, RingDomain, parse_domain

EXIT_OK, EXIT_FAILURES, EXIT_INPUT, EXIT_ABORT = 0, 1, 2, 3
ALGORITHMS = ("dodgson", "bareiss", "cofactor")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    n: int
    domain: RingDomain
    bound: int
    seed: int

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ConfigError(f"--gen expects n,domain,bound,seed, got {text!r}")
        try:
            spec = cls(int(parts[0]), parse_domain(parts[1]), int(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise ConfigError(f"--gen: {exc}") from None
        if spec.n < 1 or spec.bound < 1:
            raise ConfigError("--gen: n and bound must be positive")
        return spec

    def matrix(self) -> Matrix:
        return random_matrix(self.domain, self.n, self.bound, self.seed)


def _load(args) -> Matrix:
    if bool(args.input) == bool(args.gen):
        raise ConfigError("give exactly one of --input and --gen")
    if args.gen:
        return GenSpec.parse(args.gen).matrix()
    try:
        return read_matrix(args.input)
    except OSError as exc:
        raise ConfigError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    except MatrixFormatError as exc:
        raise ConfigError(f"{args.input}: {exc}") from None


def _determinant(A: Matrix, algorithm: str, policy: ZeroPolicy):
    if not A.is_square:
        raise ConfigError(f"matrix is {A.rows}x{A.cols}, not square")
    if algorithm == "cofactor":
        if A.rows > COFACTOR_BOUND:
            raise ConfigError(f"cofactor is limited to n <= {COFACTOR_BOUND}")
        return det_cofactor(A)
    if algorithm == "bareiss":
        return det_bareiss(A)
    return dodgson_det(A, policy)[0]


def cmd_det(args, out) -> int:
    A = _load(args)
    d = _determinant(A, args.algorithm, args.zero_policy)
    if args.json:
        out.write(json.dumps({"algorithm": args.algorithm, "n": A.rows, "domain": str(A.domain),
                              "det": str(d)}, sort_keys=True) + "\n")
    else:
        out.write(f"{d}\n")
    return EXIT_OK


def _single_matrix_summary(A: Matrix) -> CampaignSummary:
    if not A.is_square or A.rows < 3:
        raise ConfigError("verify needs a square matrix with n >= 3")
    n = A.rows
    summary = CampaignSummary(trials=1)
    for k, l in combinations(range(1, n + 1), 2):
        summary.add(desnanot_jacobi_check(A, k, l))
    summary.add(corner_identity_check(A))
    if n >= 4:
        summary.add(gamma_lambda_digamma_check(A))
        for r in lemma1_checks(A):
            summary.add(r)
    for r in lemma2_checks(A):
        summary.add(r)
    return summary


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("-")
    try:
        rng = (int(lo), int(hi) if sep else int(lo))
    except ValueError:
        raise ConfigError(f"bad --n-range {text!r}; use LO-HI") from None
    if not 3 <= rng[0] <= rng[1]:
        raise ConfigError("--n-range must satisfy 3 <= LO <= HI")
    return rng


def cmd_verify(args, out) -> int:
    if args.input or args.gen:
        summary = _single_matrix_summary(_load(args))
    else:
        if args.trials < 1:
            raise ConfigError("--trials must be >= 1")
        summary = fuzz_identities(args.domain, _parse_range(args.n_range), args.bound, args.trials,
                                  args.seed, workers=args.workers, tamper=args.tamper)
    if args.json:
        for r in summary.reports:
            out.write(r.to_json() + "\n")
    else:
        out.write(summary.format() + "\n")
    return EXIT_OK if summary.failures == 0 else EXIT_FAILURES


def cmd_pyramid(args, out) -> int:
    A = _load(args)
    if not A.is_square:
        raise ConfigError(f"matrix is {A.rows}x{A.cols}, not square")
    _, trace = dodgson_det(A, args.zero_policy)
    out.write(format_trace(trace))
    return EXIT_OK


def cmd_bench(args, out) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"bad --sizes {args.sizes!r}") from None
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {a!r}")
    if not sizes or min(sizes) < 1:
        raise ConfigError("--sizes must list positive integers")
    if "cofactor" in algorithms and max(sizes) > COFACTOR_BOUND:
        raise ConfigError(f"cofactor is limited to n <= {COFACTOR_BOUND}")
    if args.repetitions < 1:
        raise ConfigError("--repetitions must be >= 1")
    rows = []
    for n in sizes:
        A = random_matrix(args.domain, n, args.bound, args.seed)
        for alg in algorithms:
            times = []
            for _ in range(args.repetitions):
                t0 = time.perf_counter()
                _determinant(A, alg, args.zero_policy)
                times.append(time.perf_counter() - t0)
            rows.append({"algorithm": alg, "n": n, "repetitions": args.repetitions,
                         "median_s": statistics.median(times)})
    if args.json:
        for r in rows:
            out.write(json.dumps(r, sort_keys=True) + "\n")
    else:
        out.write(f"{'algorithm':<10} {'n':>5} {'reps':>5} {'median_s':>12}\n")
        for r in rows:
            out.write(f"{r['algorithm']:<10} {r['n']:>5} {r['repetitions']:>5} {r['median_s']:>12.6f}\n")
    return EXIT_OK


def _policy(text: str) -> ZeroPolicy:
    try:
        return ZeroPolicy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _domain(text: str) -> RingDomain:
    try:
        return parse_domain(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dodgson", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        p.add_argument("--input", metavar="PATH", help="matrix file")
        p.add_argument("--gen", metavar="n,domain,bound,seed", help="generate a random matrix")

    def policy(p):
        p.add_argument("--zero-policy", type=_policy, default=ZeroPolicy(), metavar="NAME[:restarts]",
                       help="fail | row_swap[:N] | bareiss_fallback (default)")

    p = sub.add_parser("det", help="print the determinant")
    source(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="dodgson")
    policy(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("verify", help="run the identity campaign")
    source(p)
    p.add_argument("--domain", type=_domain, default=INTEGERS)
    p.add_argument("--n-range", default="3-8", metavar="LO-HI")
    p.add_argument("--bound", type=int, default=9)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pyramid", help="print every condensation level")
    source(p)
    policy(p)
    p.set_defaults(func=cmd_pyramid)

    p = sub.add_parser("bench", help="time determinant algorithms")
    p.add_argument("--sizes", default="20,50,100")
    p.add_argument("--algorithms", default="bareiss,dodgson")
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--domain", type=_domain, default=INTEGERS)
    p.add_argument("--bound", type=int, default=99)
    p.add_argument("--seed", type=int, default=0)
    policy(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (ConfigError, ShapeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CondensationAborted as exc:
        err.write(f"aborted: {exc}\n")
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())
