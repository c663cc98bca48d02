"""Command-line front end.

Verbs: ``represent``, ``perturb``, ``checks`` and ``gen``.  Every verb
accepts ``--json``, ``--exact``, ``--seed`` and ``--tol``.

Exit codes: 0 success, 1 a check failed, 2 parse/usage error,
3 mathematical precondition violated, 4 resource bound exceeded.

Sign vectors follow the binary convention E_k: entry i (1-based in the
printed output) is -1 iff bit i-1 of k is set, so E_0 = (+1, ..., +1).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import matrixio
from . import tolerances as tol
from .errors import CayleyPerturbError, DimensionTooLarge, ParseError, ZeroPerturbation
from .generators import gen_haar_orthogonal, gen_integer, gen_singular, gen_skew, rng
from .linalg import FLOAT, RATIONAL, Matrix, SignVector, SkewSymmetric, determinant, to_fraction
from .normal_form import (
    PlainCayley,
    SignedCayley,
    SquaredCayley,
    TwoFactor,
    represent,
    represent_as,
)
from .sign_perturb import (
    adjacent_flip_chain,
    enumerate_det_signs,
    kahan_enumerate,
    kahan_identity_check,
    sign_assign,
    sign_matrix_sum_check,
    telescoping_pairing_holds,
)

ORACLE_MAX_N = 12
DEFAULT_SEED = 20240101


# ---------------------------------------------------------------------------
# payload helpers


def _scalar_out(x):
    return str(x) if isinstance(x, Fraction) else float(x)


def _scalar_in(x):
    return Fraction(x) if isinstance(x, str) else float(x)


def rep_payload(rep) -> dict:
    if isinstance(rep, PlainCayley):
        return {"representation": "plain", "S": matrixio.to_json_obj(rep.s)}
    if isinstance(rep, SquaredCayley):
        return {"representation": "squared", "S": matrixio.to_json_obj(rep.s)}
    if isinstance(rep, TwoFactor):
        return {"representation": "two-factor", "S1": matrixio.to_json_obj(rep.s1),
                "S2": matrixio.to_json_obj(rep.s2)}
    return {"representation": "signed", "E": list(rep.signs.signs),
            "S": matrixio.to_json_obj(rep.s)}


def rep_from_payload(payload: dict):
    """Rebuild a representation object from its JSON payload."""
    kind = payload["representation"]

    def skew(key):
        return SkewSymmetric(matrixio.from_json_obj(payload[key]))

    if kind == "plain":
        return PlainCayley(skew("S"))
    if kind == "squared":
        return SquaredCayley(skew("S"))
    if kind == "two-factor":
        return TwoFactor(skew("S1"), skew("S2"))
    if kind == "signed":
        return SignedCayley(SignVector(tuple(payload["E"])), skew("S"))
    raise ParseError(f"unknown representation {kind!r}")


def _report(command: str, m: Matrix | None, result: dict, residuals: dict, seed=None) -> dict:
    out = {
        "command": command,
        "backend": m.backend if m is not None else RATIONAL,
        "input_digest": matrixio.digest(m) if m is not None else None,
        "result": result,
        "residuals": residuals,
    }
    if seed is not None:
        out["seed"] = seed
    return out


def _fmt_matrix(obj: dict) -> str:
    rows = obj["rows"]
    if not rows:
        return "  (empty)"
    cells = [[str(x) if isinstance(x, str) else f"{x: .12g}" for x in row] for row in rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  " + " ".join(c.rjust(width) for c in row) for row in cells)


def _fmt_signs(signs) -> str:
    return "(" + ", ".join("+1" if s > 0 else "-1" for s in signs) + ")"


def _emit(report: dict, as_json: bool, human) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        human(report)


# ---------------------------------------------------------------------------
# verbs


def _load(args) -> Matrix:
    return matrixio.load(args.input, RATIONAL if args.exact else None)


def _nearest_orthogonal(m: Matrix) -> Matrix:
    u, _, vt = np.linalg.svd(m.to_float().array)
    return Matrix(u @ vt, FLOAT)


def cmd_represent(args) -> dict:
    R = _load(args)
    projected = None
    if args.force:
        q = _nearest_orthogonal(R)
        projected = q.max_abs_diff(R)
        R = q
    if args.tol is not None:
        tol.TAU_ORTH = args.tol
    rep = represent_as(R, args.mode) if args.mode else represent(R)
    result = rep_payload(rep)
    if projected is not None:
        result["projection_distance"] = projected
    # residuals are recomputed from the serialized payload, not from ``rep``
    rebuilt = rep_from_payload(result)
    residuals = {"reconstruction": rebuilt.evaluate().max_abs_diff(R)}
    return _report("represent", R, result, residuals)


def _print_represent(rep: dict) -> None:
    res = rep["result"]
    print(f"representation: {res['representation']}  (backend {rep['backend']})")
    if "E" in res:
        print(f"E = {_fmt_signs(res['E'])}")
    for key in ("S", "S1", "S2"):
        if key in res:
            print(f"{key} =")
            print(_fmt_matrix(res[key]))
    for name, val in rep["residuals"].items():
        print(f"residual {name}: {val:.3e}")


def _parse_c(text: str, n: int, backend: str):
    toks = [t for t in text.split(",") if t.strip()]
    if len(toks) != n:
        raise ParseError(f"--c needs {n} comma-separated values, got {len(toks)}")
    try:
        vals = [to_fraction(t) for t in toks]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad --c value: {exc}") from None
    return vals if backend == RATIONAL else [float(v) for v in vals]


def cmd_perturb(args) -> dict:
    A = _load(args)
    n = A.n
    if args.c is not None:
        c = _parse_c(args.c, n, A.backend)
    else:
        scale = to_fraction(args.c_scale) if args.c_scale is not None else Fraction(1)
        c = [scale] * n if A.is_rational else [float(scale)] * n
    if any(x == 0 for x in c):
        raise ZeroPerturbation("every c_i must be nonzero")
    report = sign_assign(A, c)
    result = {
        "signs": list(report.signs.signs),
        "flips": report.flips,
        "c": [_scalar_out(x) for x in report.perturbation.magnitudes],
        "minors": [_scalar_out(x) for x in report.minor_values],
        "det": _scalar_out(report.determinant),
    }
    if args.oracle:
        if n > ORACLE_MAX_N:
            raise DimensionTooLarge(f"--oracle supports n <= {ORACLE_MAX_N}")
        if all(x == 1 for x in c):
            survivors = kahan_enumerate(A)
        else:
            survivors = [sv for sv, d in enumerate_det_signs(A, c) if d != 0]
        result["oracle"] = {
            "survivors": len(survivors),
            "total": 2 ** n,
            "greedy_in_oracle": report.signs in survivors,
        }
    signs = SignVector(tuple(result["signs"]))
    c_back = [_scalar_in(x) for x in result["c"]]
    E = Matrix.diag([s * x for s, x in zip(signs, c_back)], A.backend)
    residuals = {"det": abs(float(determinant(A + E) - _scalar_in(result["det"])))}
    return _report("perturb", A, result, residuals)


def _print_perturb(rep: dict) -> None:
    res = rep["result"]
    print(f"signs: {_fmt_signs(res['signs'])}  flips: {res['flips']}  (backend {rep['backend']})")
    print("minors: " + ", ".join(str(x) for x in res["minors"]))
    print(f"det(E + A) = {res['det']}")
    if "oracle" in res:
        o = res["oracle"]
        verdict = "yes" if o["greedy_in_oracle"] else "NO"
        print(f"oracle: {o['survivors']} of {o['total']} sign vectors survive; greedy in oracle set: {verdict}")
    print(f"residual det: {rep['residuals']['det']:.3e}")


def cmd_checks(args) -> dict:
    results = []
    gen = rng(args.seed)
    if args.sum_zero is not None:
        if args.sum_zero > ORACLE_MAX_N:
            raise DimensionTooLarge(f"--sum-zero supports n <= {ORACLE_MAX_N}")
        total = sign_matrix_sum_check(args.sum_zero)
        results.append({"check": f"sum of E_k is zero (n={args.sum_zero})", "passed": total.is_zero()})
    if args.chain is not None:
        if args.chain > ORACLE_MAX_N:
            raise DimensionTooLarge(f"--chain supports n <= {ORACLE_MAX_N}")
        chain = adjacent_flip_chain(args.chain)
        results.append({"check": f"telescoping pairing of E_k (n={args.chain})",
                        "passed": telescoping_pairing_holds(chain)})
    if args.det_identity:
        n = args.n
        passed = 0
        for _ in range(args.trials):
            a = gen.integers(-5, 5, endpoint=True, size=(n, n))
            b = a.copy()
            j = int(gen.integers(0, n))
            b[:, j] = gen.integers(-5, 5, endpoint=True, size=n)
            A = Matrix([[Fraction(int(x)) for x in r] for r in a], RATIONAL)
            B = Matrix([[Fraction(int(x)) for x in r] for r in b], RATIONAL)
            lhs, rhs = kahan_identity_check(A, B, j)
            passed += lhs == rhs
        results.append({"check": f"det(A+B) = 2^(n-1)(det A + det B) (n={n})",
                        "passed": passed == args.trials, "count": f"{passed}/{args.trials}"})
    matrix = None
    if args.enumerate is not None:
        matrix = matrixio.load(args.enumerate, RATIONAL if args.exact else None)
        if matrix.n > ORACLE_MAX_N:
            raise DimensionTooLarge(f"--enumerate supports n <= {ORACLE_MAX_N}")
        survivors = kahan_enumerate(matrix)
        results.append({"check": "some E_k makes I + E_k A invertible",
                        "passed": bool(survivors),
                        "count": f"{len(survivors)}/{2 ** matrix.n}",
                        "survivors": [list(sv.signs) for sv in survivors]})
    if not results:
        raise ParseError("checks: choose at least one of --sum-zero, --chain, --det-identity, --enumerate")
    return _report("checks", matrix, {"checks": results}, {}, seed=args.seed)


def _print_checks(rep: dict) -> None:
    for r in rep["result"]["checks"]:
        status = "PASS" if r["passed"] else "FAIL"
        extra = f"  [{r['count']}]" if "count" in r else ""
        print(f"{status}  {r['check']}{extra}")
        for sv in r.get("survivors", []):
            print(f"      {_fmt_signs(sv)}")
    print(f"seed: {rep['seed']}")


def cmd_gen(args) -> dict:
    if args.kind == "haar":
        m = gen_haar_orthogonal(args.n, args.seed, det=-1 if args.improper else 1)
    elif args.kind == "skew":
        m = gen_skew(args.n, args.seed)
    elif args.kind == "integer":
        m = gen_integer(args.n, args.seed)
    else:
        rank_ = args.rank if args.rank is not None else max(args.n - 1, 0)
        m = gen_singular(args.n, rank_, args.seed)
    if args.exact:
        m = m.to_rational()
    return {"command": "gen", "kind": args.kind, "seed": args.seed,
            "matrix": matrixio.to_json_obj(m), "_m": m}


# ---------------------------------------------------------------------------


def _global_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--exact", action="store_true", help="use the rational backend")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="PCG64 seed (u64)")
    p.add_argument("--tol", type=float, default=None,
                   help=f"orthogonality tolerance (default {tol.TAU_ORTH:g})")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = argparse.ArgumentParser(
        prog="cayleyperturb",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser(
        "represent", parents=[common],
        help="Cayley-type representation of an orthogonal matrix",
        description="Choice order without --mode: plain if det = +1 and no eigenvalue -1; "
                    "squared if det = +1 with eigenvalue -1; signed if det = -1.",
    )
    p.add_argument("input", help="matrix file (text or JSON), '-' for stdin")
    p.add_argument("--mode", choices=["plain", "squared", "two-factor", "signed"])
    p.add_argument("--force", action="store_true",
                   help="replace the input by its nearest orthogonal matrix")
    p.set_defaults(func=cmd_represent, printer=_print_represent)

    p = sub.add_parser("perturb", parents=[common],
                       help="signs making diag(eps * c) + A invertible")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--c", help="comma-separated nonzero magnitudes (p/q allowed)")
    g.add_argument("--c-scale", help="use c_i = s for every i")
    p.add_argument("--oracle", action="store_true",
                   help=f"also enumerate all 2^n sign vectors (n <= {ORACLE_MAX_N})")
    p.set_defaults(func=cmd_perturb, printer=_print_perturb)

    p = sub.add_parser("checks", parents=[common], help="determinant and sign-matrix identities")
    p.add_argument("--sum-zero", type=int, metavar="N")
    p.add_argument("--chain", type=int, metavar="N")
    p.add_argument("--det-identity", action="store_true")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--enumerate", metavar="FILE")
    p.set_defaults(func=cmd_checks, printer=_print_checks)

    p = sub.add_parser("gen", parents=[common], help="generate a seeded random matrix")
    p.add_argument("kind", choices=["haar", "skew", "integer", "singular"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--improper", action="store_true", help="haar: det = -1")
    p.set_defaults(func=cmd_gen, printer=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved_orth = tol.TAU_ORTH
    try:
        report = args.func(args)
    except CayleyPerturbError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    finally:
        tol.TAU_ORTH = saved_orth

    if args.verb == "gen":
        m = report.pop("_m")
        if args.json:
            print(json.dumps(report, indent=2))
        else:
            print(f"# {args.kind} n={args.n} seed={args.seed}")
            sys.stdout.write(matrixio.to_text(m))
        return 0

    _emit(report, args.json, args.printer)
    if args.verb == "checks":
        return 0 if all(r["passed"] for r in report["result"]["checks"]) else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
