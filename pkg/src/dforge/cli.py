"""Command-line front end.

Subcommands:
  census    -- cusp/component counts for given q and f
  tate      -- the Tate-Drinfeld expansion as a JSON document
  reduce    -- stable-reduction report for a module over F_{q^m}((x))
  selftest  -- run the deterministic property suites

Output is line-delimited JSON with all integers as decimal strings.
Exit codes: 0 success, 2 configuration error, 3 precision error,
4 mathematical precondition violated.
"""

import argparse
import json
import sys

from .fields import field_make
from .poly import PolyRing, trim
from .series import LaurentDomain, PrecisionError
from .drinfeld import DrinfeldModule, rank1_universal, CharacteristicError
from .cusps import census
from .tate import tate_lattice, tate_module, j_expansion
from .reduction import (stable_normalize, drinfeld_approx, lattice_recover,
                        NonIntegralSlope, NoLattice)
from . import serialize
from . import selftest

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECISION = 3
EXIT_MATH = 4


class ConfigError(ValueError):
    pass


def _parse_q(qstr):
    q = int(qstr)
    for p in (2, 3, 5, 7, 11, 13):
        e = 0
        n = q
        while n % p == 0:
            n //= p
            e += 1
        if n == 1 and e >= 1:
            return p, e
    raise ConfigError("q = %s is not a prime power in range" % qstr)


def _parse_f(fstr, q):
    try:
        coeffs = tuple(int(c) for c in fstr.split(","))
    except ValueError:
        raise ConfigError("malformed f: %r" % fstr)
    if any(c < 0 or c >= q for c in coeffs):
        raise ConfigError("f coefficients must be indices in 0..q-1")
    f = trim(coeffs)
    if len(f) < 2:
        raise ConfigError("f must be non-constant")
    return f


def cmd_census(args, out):
    p, e = _parse_q(args.q)
    K = field_make(p, e, 1)
    f = _parse_f(args.f, K.size)
    rep = census(K, f, h=args.h)
    out.write(serialize.dumps_line(serialize.census_document(rep)) + "\n")
    return EXIT_OK


def cmd_tate(args, out):
    p, e = _parse_q(args.q)
    K = field_make(p, e, 1)
    f = _parse_f(args.f, K.size)
    A = PolyRing(K)
    N = args.N
    if N < K.size ** A.deg(f):
        raise PrecisionError(
            "insufficient precision: need N >= q^deg(f) = %d"
            % K.size ** A.deg(f))
    uni = rank1_universal(K, f)
    L = tate_lattice(uni, N=N)
    te = tate_module(L, N)
    k, alpha = j_expansion(te, A.gen())
    doc = serialize.tate_document(te, k, alpha.coeff(0))
    out.write(serialize.dumps_line(doc) + "\n")
    return EXIT_OK


def cmd_reduce(args, out):
    with open(args.input) as fh:
        doc = json.load(fh)
    p, e = _parse_q(doc["q"])
    m = int(doc.get("m", "1"))
    field = field_make(p, e, m)
    K_base = field_make(p, e, 1)
    f = _parse_f(",".join(doc["f"]) if isinstance(doc["f"], list)
                 else doc["f"], K_base.size)
    N = int(doc["N"])
    A = PolyRing(K_base)
    LD = LaurentDomain(field, default_prec=N + 1, var="x")
    coeffs = [serialize.parse_series_field(c, field) for c in doc["phi"]]
    if len(coeffs) < 2:
        raise ConfigError("phi needs at least a tau-coefficient")
    for c in coeffs:
        if c.prec is not None and c.prec < 2:
            raise PrecisionError("input series truncated too short")
    phi = DrinfeldModule(A, LD, coeffs)
    phi_prime, k, rrank, xi = stable_normalize(phi, f)
    report = {
        "stable_rank": serialize.ser_int(rrank),
        "k": serialize.ser_int(k),
        "psi": None,
        "lattice_generator": None,
        "achieved_precision": None,
    }
    if rrank == 1:
        approx = drinfeld_approx(phi_prime, N)
        ell, _u = lattice_recover(phi_prime, approx.s, f, approx.psi, N)
        report["psi"] = [serialize.ser_series_field(c.truncate(N))
                         for c in approx.psi.phi_T.coeffs]
        report["lattice_generator"] = serialize.ser_series_field(
            ell.truncate(N))
        report["achieved_precision"] = serialize.ser_int(approx.achieved)
    out.write(serialize.dumps_line(report) + "\n")
    return EXIT_OK


def cmd_selftest(args, out):
    failures = selftest.run_all(seed=args.seed, out=out)
    return EXIT_OK if failures == 0 else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dforge",
        description="Exact computations with Drinfeld modules, the "
                    "Tate-Drinfeld degeneration and the cusps of the "
                    "associated modular curve.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("census", help="cusp and component counts")
    c.add_argument("--q", required=True, help="field size q (prime power)")
    c.add_argument("--f", required=True,
                   help="level f, little-endian indices, e.g. 0,1 for T")
    c.add_argument("--h", type=int, default=1,
                   help="class number factor (default 1 for F_q[T])")
    c.set_defaults(fn=cmd_census)

    t = sub.add_parser("tate", help="Tate-Drinfeld expansion")
    t.add_argument("--q", required=True)
    t.add_argument("--f", required=True)
    t.add_argument("--N", type=int, required=True,
                   help="x-adic precision (need N >= q^deg f)")
    t.set_defaults(fn=cmd_tate)

    r = sub.add_parser("reduce", help="stable reduction of a module "
                                      "over F_{q^m}((x))")
    r.add_argument("input", help="JSON module file")
    r.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("selftest", help="run the property suites")
    s.add_argument("--seed", type=int, default=20260809)
    s.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else 0
    try:
        return args.fn(args, out)
    except (NonIntegralSlope, NoLattice, CharacteristicError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_MATH
    except PrecisionError as exc:
        sys.stderr.write("precision error: %s\n" % exc)
        return EXIT_PRECISION
    except (ConfigError, ValueError, OSError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
