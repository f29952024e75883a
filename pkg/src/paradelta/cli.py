"""Command-line front end (``paradelta``).

Exit codes: 0 success, 1 verification or solver failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import logging
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, TextIO

from . import dynatomic, modp, regions
from .cache import DeltaCache, resolve_cache_dir
from .cyclotomic import cyclotomic_discriminant, euler_phi
from .errors import ConvergenceFailure, ParadeltaError, PathTooCoarse, PInvalidDividesK, RootOnPath, UnsupportedPeriod
from .exactpoly import BivariatePolynomial, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path
    output: Path | None = None
    format: str = "text"
    precision_bits: int = 53
    parallelism: int = 1

    def __post_init__(self):
        if self.precision_bits < 53:
            raise UsageError("--precision must be at least 53 bits")
        if self.parallelism < 1:
            raise UsageError("--jobs must be at least 1")

    def cache(self) -> DeltaCache:
        return DeltaCache(self.cache_dir)


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


@contextmanager
def _sink(path: Path | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# -- compute ----------------------------------------------------------------

def _poly_csv(poly) -> list[str]:
    obj = serialize.to_json_obj(poly)
    if isinstance(poly, BivariatePolynomial):
        header = ",".join(f"exp_{v}" for v in obj["vars"]) + ",coefficient"
    else:
        header = f"exp_{obj['vars'][0]},coefficient"
    return [header] + [",".join(str(v) for v in term) for term in obj["terms"]]


def _need(args, *names) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"compute {args.object} requires {' '.join(missing)}")


def cmd_compute(args, config: RunConfig) -> int:
    cache = config.cache()
    obj = args.object
    if obj in ("iterate", "dynatomic"):
        _need(args, "n")
        if args.n < (0 if obj == "iterate" else 1) or args.n > 12:
            raise UsageError(f"--n must lie in {0 if obj == 'iterate' else 1}..12")
        poly = dynatomic.iterate(args.n) if obj == "iterate" else dynatomic.dynatomic_poly(args.n)
    elif obj == "delta":
        _need(args, "m")
        poly = dynatomic.multiplier_poly_tilde(args.m, cache).tilde
    elif obj == "delta-factor":
        _need(args, "n", "m")
        if args.n < 1 or args.m < 1 or args.n % args.m:
            raise UsageError("delta-factor needs positive --n and --m with m dividing n")
        poly = dynatomic.delta_factor_tilde(args.n, args.m, cache)
    else:
        _need(args, "k")
        if args.k < 2:
            raise UsageError("--k must be at least 2")
        poly = dynatomic.gamma_poly(args.k)
    with _sink(config.output) as out:
        if config.format == "json":
            out.write(serialize.dumps(poly) + "\n")
        elif config.format == "csv":
            out.write("\n".join(_poly_csv(poly)) + "\n")
        else:
            out.write(serialize.to_text(poly) + "\n")
    return EXIT_OK


# -- verify -----------------------------------------------------------------

Check = tuple[str, bool, str]

# k <= 50 whose cyclotomic discriminant is a perfect square
HARRISON_K = [8, 12, 15, 16, 20, 21, 24, 28, 30, 32, 33, 35, 36, 39, 40, 42, 44, 45, 48]


def _identity_checks(cache: DeltaCache, full: bool) -> Iterator[Check]:
    yield "X3-parametrization", dynatomic.verify_parametrization("X3", cache=cache), ""
    yield "X4-parametrization", dynatomic.verify_parametrization("X4", cache=cache), ""
    for n in (2, 3, 4, 6) if full else (2, 3, 4):
        yield f"delta-product n={n}", dynatomic.delta_product_identity(n, cache), ""
    for k in range(2, 11):
        yield f"gamma-delta k={k}", dynatomic.gamma_delta_identity(k, cache), ""
    for m, k, p, e in ((3, 2, 5, 1), (3, 4, 3, 1), (4, 3, 5, 1)):
        yield f"congruence m={m} k={k} p={p} e={e}", modp.congruence_check(m, k, p, e, cache), ""
    squares = [k for k in range(3, 51) if cyclotomic_discriminant(k)[1]]
    yield "discriminant-squares k<=50", squares == HARRISON_K, str(squares)


def _region_checks(kmax: int, precision: int) -> Iterator[Check]:
    for k in range(2, kmax + 1):
        try:
            c = regions.region_census(k, precision)
        except ConvergenceFailure as exc:
            yield f"census k={k}", False, str(exc)
            continue
        phi = euler_phi(k)
        counts_ok = (c.count_A, c.count_B) == (phi, 2 * phi)
        bounds_ok = (c.max_abs_A < regions.S1 and -regions.S1 <= c.min_re_A and c.max_re_A < 0
                     and c.max_abs_B < regions.S2 and regions.S3 - 1e-9 <= c.min_re_B
                     and c.max_re_B <= regions.S4 + 1e-9 and c.max_residual < regions.RESIDUAL_TOL
                     and c.boundary_hits == 0)
        detail = (f"counts=({c.count_A},{c.count_B}) maxabsA={c.max_abs_A:.6g} reA=[{c.min_re_A:.6g},"
                  f"{c.max_re_A:.6g}] maxabsB={c.max_abs_B:.6g} reB=[{c.min_re_B:.6g},{c.max_re_B:.6g}]")
        yield f"census k={k} ({c.count_A},{c.count_B})", counts_ok and bounds_ok, detail
    expected = {"I1": 1, "I2": 2, "I3": 0, "I4": 0, "I5": 2}
    for i in range(16):
        z0 = cmath.exp(2j * math.pi * i / 16)
        try:
            got = regions.winding_integrals(z0)
        except (PathTooCoarse, RootOnPath) as exc:
            yield f"winding z0=e^(2pi i*{i}/16)", False, str(exc)
            continue
        yield f"winding z0=e^(2pi i*{i}/16)", got == expected, json.dumps(got, sort_keys=True)
    for name, low in regions.sampled_positivity().items():
        yield f"positivity {name}", low > 0, f"min={low:.6g}"
    report = regions.totally_real_enumerate(5)
    union = set().union(*(r.roots for r in report.values()))
    yield "totally-real d<=5", union <= {-1, 0, 1}, str(sorted(union))


def _constant_checks() -> Iterator[Check]:
    for c in regions.paper_constants_check():
        yield f"{c.name}={c.printed}", c.ok, f"computed {c.value!r}"


def cmd_verify(args, config: RunConfig) -> int:
    cache = config.cache()
    suites = ["identities", "regions", "constants"] if args.suite == "all" else [args.suite]
    failures = 0
    with _sink(config.output) as out:
        for suite in suites:
            if suite == "identities":
                checks = _identity_checks(cache, args.full)
            elif suite == "regions":
                checks = _region_checks(args.kmax, config.precision_bits)
            else:
                checks = _constant_checks()
            for name, ok, detail in checks:
                if ok:
                    out.write(f"ok {name}\n")
                else:
                    failures += 1
                    out.write(f"not ok {name} {detail}".rstrip() + "\n")
                out.flush()
    return EXIT_OK if failures == 0 else EXIT_FAIL


# -- table1, congruence -----------------------------------------------------

def cmd_table1(args, config: RunConfig) -> int:
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    primes = modp.table1_scan(args.m, args.k, args.pmax, config.cache(), config.parallelism)
    with _sink(config.output) as out:
        if config.format == "json":
            out.write(json.dumps({"m": args.m, "k": args.k, "pmax": args.pmax, "primes": primes}) + "\n")
        else:
            out.write("m,k,p\n")
            for p in primes:
                out.write(f"{args.m},{args.k},{p}\n")
    return EXIT_OK


def cmd_congruence(args, config: RunConfig) -> int:
    try:
        record = modp.congruence_record(args.m, args.k, args.p, args.e, config.cache())
    except PInvalidDividesK as exc:
        raise UsageError(str(exc)) from exc
    with _sink(config.output) as out:
        out.write(("OK" if record["ok"] else "FAIL") + "\n")
        out.write(json.dumps(record) + "\n")
    return EXIT_OK if record["ok"] else EXIT_FAIL


# -- figure, roots ----------------------------------------------------------

def cmd_figure(args, config: RunConfig) -> int:
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    points = regions.parabolic_parameters_period3(args.kmax, config.precision_bits)
    with _sink(config.output) as out:
        out.write("k,re_c,im_c\n")
        for k, c in points:
            out.write(f"{k},{fmt_float(c.real)},{fmt_float(c.imag)}\n")
    if args.mandelbrot:
        with open(args.grid_output, "w", newline="") as out:
            out.write("re_c,im_c,iterations,inside\n")
            for re, im, iters, inside in regions.mandelbrot_grid(step=args.grid_step):
                out.write(f"{fmt_float(re)},{fmt_float(im)},{iters},{int(inside)}\n")
    return EXIT_OK


def cmd_roots(args, config: RunConfig) -> int:
    kmin = args.k if args.k is not None else 2
    kmax = args.k if args.k is not None else args.kmax
    if kmin < 2 or kmax < kmin:
        raise UsageError("need 2 <= k <= kmax")
    with _sink(config.output) as out:
        out.write("k,j,re_t,im_t,region,re_c,im_c\n")
        for k in range(kmin, kmax + 1):
            for r in regions.gamma_roots(k, config.precision_bits):
                t, c = r.t.value, r.c
                out.write(f"{k},{r.j},{fmt_float(t.real)},{fmt_float(t.imag)},{r.region},"
                          f"{fmt_float(c.real)},{fmt_float(c.imag)}\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="cache directory (default: $PARADELTA_CACHE, then ~/.cache/paradelta)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", type=Path, help="write to this file instead of stdout")
    common.add_argument("--precision", type=int, default=53, help="working precision in bits (>= 53)")
    common.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")
    common.add_argument("--verbose", "-v", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="paradelta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="print a polynomial of the tower")
    p.add_argument("object", choices=("iterate", "dynatomic", "delta", "delta-factor", "gamma"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", choices=("identities", "regions", "constants", "all"), default="all")
    p.add_argument("--kmax", type=int, default=50)
    p.add_argument("--full", action="store_true", help="include the period-6 product identity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table1", parents=[common], help="primes p < pmax with the delta factor irreducible mod p")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pmax", type=int, default=1000)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("figure", parents=[common], help="period-3 parabolic parameters as CSV")
    p.add_argument("--kmax", type=int, default=79)
    p.add_argument("--mandelbrot", action="store_true", help="also write the escape-time grid")
    p.add_argument("--grid-output", type=Path, default=Path("mandelbrot.csv"))
    p.add_argument("--grid-step", type=float, default=0.01)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("roots", parents=[common], help="roots of Gamma_k with region labels")
    p.add_argument("--k", type=int)
    p.add_argument("--kmax", type=int, default=10)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("congruence", parents=[common], help="check one instance of the mod-p congruence")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.set_defaults(func=cmd_congruence)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig(resolve_cache_dir(args.cache), args.output, args.format,
                           args.precision, args.jobs)
        return args.func(args, config)
    except (UsageError, UnsupportedPeriod, PInvalidDividesK) as exc:
        print(f"paradelta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParadeltaError, ArithmeticError) as exc:
        print(f"paradelta: failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"paradelta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
