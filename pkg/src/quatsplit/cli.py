"""Command-line front end.

Exit codes: 0 for success or a positive verdict (splits / sufficient /
NonSplit), 1 for a negative verdict (does not split / condition fails /
Inconclusive), 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import arith, fppoly, quadfield, quatalg, symbolalg
from .errors import CapacityError, DomainError

INT64_MAX = 2**63 - 1

SWEEP_COLUMNS = {
    "quaternion": ["d", "p", "q", "splits_over_Q", "splits_over_K", "error"],
    "theorem31": ["d", "p", "q", "sufficient", "reason", "splits", "agree", "violation", "error"],
    "symbol": ["n", "p", "alpha", "verdict", "extension_degree", "error"],
}

SWEEP_EPILOG = """\
CSV/table columns (header always emitted):
  quaternion: d,p,q,splits_over_Q,splits_over_K,error
  theorem31:  d,p,q,sufficient,reason,splits,agree,violation,error
  symbol:     n,p,alpha,verdict,extension_degree,error

'agree' is sufficient == splits; 'violation' is sufficient and not splits.
Ranges are LO:HI (inclusive) or a single integer; write negative bounds
with '=', e.g. --d-range=-50:50. Cells outside the hypotheses (d not
squarefree or in {0,1}, p == q, q < 3, p != 1 mod n) are skipped.
"""


class UsageError(Exception):
    pass


def _int64(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if abs(v) > INT64_MAX:
        raise argparse.ArgumentTypeError(f"{text} exceeds 64-bit capacity")
    return v


def _place(text: str) -> quatalg.Place:
    if text.lower() in ("inf", "infinity", "oo"):
        return quatalg.INFINITE
    return quatalg.Place(_int64(text))


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        bounds = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected LO:HI")
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"empty interval {text!r}")
    if max(abs(b) for b in bounds) > INT64_MAX:
        raise argparse.ArgumentTypeError(f"range {text!r} exceeds 64-bit capacity")
    return bounds


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _emit(args, verdict_line: Optional[str], detail: dict) -> None:
    if args.format == "json":
        print(_dump(detail))
        return
    if verdict_line is not None:
        print(verdict_line)
    print(_dump(detail))


# ---------------------------------------------------------------------------
# single-query commands

def cmd_legendre(args) -> int:
    print(arith.legendre(args.a, args.n))
    return 0


def cmd_kronecker(args) -> int:
    print(arith.kronecker(args.a, args.n))
    return 0


def cmd_decompose(args) -> int:
    K = quadfield.make_field(args.d)
    if args.p.is_infinite:
        kind = quadfield.infinite_place_type(K).value
    else:
        kind = quadfield.splitting_type(K, args.p.p).value
    if args.format == "json":
        print(_dump({"d": K.d, "discriminant": K.discriminant, "place": args.p.to_json(), "type": kind}))
    else:
        print(kind)
    return 0


def _oracle_check(a: int, b: int, place: quatalg.Place) -> Optional[int]:
    if place.is_infinite:
        return None
    try:
        value = quatalg.hilbert_symbol_oracle(a, b, place.p)
    except CapacityError:
        return None
    if value != quatalg.hilbert_symbol(a, b, place):
        raise DomainError(f"closed form and oracle disagree for ({a},{b}) at {place}")
    return value


def cmd_hilbert(args) -> int:
    value = quatalg.hilbert_symbol(args.a, args.b, args.v)
    detail = {"a": args.a, "b": args.b, "place": args.v.to_json(), "hilbert": value}
    if args.oracle:
        detail["oracle"] = _oracle_check(args.a, args.b, args.v)
    if args.format == "json":
        print(_dump(detail))
    else:
        print(value)
    return 0


def cmd_ramified(args) -> int:
    alg = quatalg.QuaternionAlgebra(args.a, args.b)
    data = quatalg.ramified_places(alg)
    detail = data.to_dict()
    if args.oracle:
        detail["oracle"] = {str(v): _oracle_check(alg.a, alg.b, v) for v in data.candidates_checked}
    if args.format == "json":
        print(_dump(detail))
    else:
        print(" ".join(str(v) for v in data.ramified) or "(none)")
    return 0


def cmd_splits(args) -> int:
    alg = quatalg.QuaternionAlgebra(args.a, args.b)
    if args.d is None:
        data = quatalg.ramified_places(alg)
        verdict = not data.ramified
        detail = {"field": "Q", "splits": verdict, **data.to_dict()}
        label = "Q"
    else:
        K = quadfield.make_field(args.d)
        result = quatalg.analyze_over_quadratic(alg, K)
        verdict = result.splits
        detail = result.to_dict()
        label = str(K)
    if args.oracle:
        for v in quatalg.candidate_places(alg):
            _oracle_check(alg.a, alg.b, v)
        detail["oracle_checked"] = True
    _emit(args, f"{alg} splits over {label}: {str(verdict).lower()}", detail)
    return 0 if verdict else 1


def cmd_theorem31(args) -> int:
    result = quatalg.theorem31_sufficient(args.p, args.q, args.d)
    _emit(args, f"sufficient: {str(result.holds).lower()}", result.to_dict())
    return 0 if result else 1


def cmd_corollary31(args) -> int:
    result = quatalg.corollary31_sufficient(args.alpha, args.p, args.d)
    _emit(args, f"sufficient: {str(result.holds).lower()}", result.to_dict())
    return 0 if result else 1


def cmd_residue(args) -> int:
    holds = symbolalg.residue_conditions_hold(args.alpha, args.n, args.p)
    detail = {
        "alpha": args.alpha,
        "n": args.n,
        "p": args.p,
        "checks": [
            {"l": l, "is_power_residue": symbolalg.is_l_power_residue(args.alpha, l, args.p)}
            for l in arith.prime_divisors(args.n)
        ],
        "holds": holds,
    }
    _emit(args, f"residue conditions hold: {str(holds).lower()}", detail)
    return 0 if holds else 1


def cmd_find_alpha(args) -> int:
    alpha = symbolalg.find_alpha(args.n, args.p)
    if args.format == "json":
        print(_dump({"n": args.n, "p": args.p, "alpha": alpha}))
    else:
        print(alpha)
    return 0


def cmd_certificate(args) -> int:
    alpha = args.alpha if args.alpha is not None else symbolalg.find_alpha(args.n, args.p)
    cert = symbolalg.nonsplit_certificate(symbolalg.SymbolAlgebraSpec(args.n, args.p, alpha))
    print(cert.to_json())
    return 0 if cert.verdict is symbolalg.Verdict.NON_SPLIT else 1


def _trial_division_irreducible(f: fppoly.FpPolynomial) -> bool:
    # Brute force: no monic divisor of degree 1..deg/2.
    p, n = f.p, f.degree
    for k in range(1, n // 2 + 1):
        for tail in range(p**k):
            coeffs, t = [], tail
            for _ in range(k):
                t, r = divmod(t, p)
                coeffs.append(r)
            g = fppoly.FpPolynomial(p, tuple(coeffs) + (1,))
            if (f % g).degree < 0:
                return False
    return True


def cmd_factor_fp(args) -> int:
    if args.p < 2 or not arith.is_prime(args.p):
        raise DomainError(f"p = {args.p} is not a prime")
    f = fppoly.parse_poly(args.poly, args.p)
    factors = fppoly.factor(f)
    if args.oracle:
        for g, _ in factors:
            if g.p**(g.degree // 2) > 10**5:
                raise CapacityError(f"trial division on degree {g.degree} over F_{g.p} too large")
            if not _trial_division_irreducible(g):
                raise DomainError(f"oracle found {g} reducible")
        check = fppoly.FpPolynomial(f.p, (f.leading,))
        for g, e in factors:
            check = check * g**e
        if check != f:
            raise DomainError("factors do not reassemble the input")
    rendered = [(g.render(signed=args.signed_poly), e) for g, e in factors]
    if args.format == "json":
        print(_dump({
            "p": f.p,
            "input": f.render(signed=args.signed_poly),
            "leading": f.leading,
            "factors": [{"factor": s, "coeffs": list(g.coeffs), "multiplicity": e}
                        for (s, e), (g, _) in zip(rendered, factors)],
        }))
    else:
        parts = [f"({s})" + (f"^{e}" if e > 1 else "") for s, e in rendered]
        lead = "" if f.leading == 1 else f"{f.leading} * "
        print(lead + " * ".join(parts))
    return 0


# ---------------------------------------------------------------------------
# sweeps

@dataclass(frozen=True)
class SweepRequest:
    mode: str
    d_range: tuple[int, int] = (-1, -1)
    p_range: tuple[int, int] = (2, 30)
    q_range: tuple[int, int] = (3, 30)
    n_range: tuple[int, int] = (3, 12)
    output_format: str = "table"

    def __post_init__(self) -> None:
        if self.mode not in SWEEP_COLUMNS:
            raise DomainError(f"unknown sweep mode {self.mode!r}")
        for name in ("d_range", "p_range", "q_range", "n_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise DomainError(f"{name} is empty")
            if max(abs(lo), abs(hi)) > INT64_MAX:
                raise DomainError(f"{name} exceeds 64-bit capacity")


def _primes_in(lo: int, hi: int) -> list[int]:
    return [x for x in range(max(lo, 2), hi + 1) if arith.is_prime(x)]


def _valid_d(d: int) -> bool:
    return d not in (0, 1) and arith.is_squarefree(d)


def sweep_cells(req: SweepRequest) -> list[tuple]:
    """Grid cells in lexicographic order of their inputs."""
    if req.mode == "symbol":
        return [
            (n, p)
            for n in range(max(req.n_range[0], 3), req.n_range[1] + 1)
            for p in _primes_in(*req.p_range)
            if p % n == 1
        ]
    ds = [d for d in range(req.d_range[0], req.d_range[1] + 1) if _valid_d(d)]
    ps = _primes_in(*req.p_range)
    qs = [q for q in _primes_in(*req.q_range) if q >= 3]
    return [(d, p, q) for d in ds for p in ps for q in qs if p != q]


def evaluate_cell(mode: str, cell: tuple) -> dict:
    try:
        if mode == "symbol":
            n, p = cell
            alpha = symbolalg.find_alpha(n, p)
            cert = symbolalg.nonsplit_certificate(symbolalg.SymbolAlgebraSpec(n, p, alpha))
            return {"n": n, "p": p, "alpha": alpha, "verdict": cert.verdict.value,
                    "extension_degree": cert.extension_degree, "error": None}
        d, p, q = cell
        K = quadfield.make_field(d)
        alg = quatalg.QuaternionAlgebra(p, q)
        splits = quatalg.splits_over_quadratic(alg, K)
        if mode == "quaternion":
            return {"d": d, "p": p, "q": q, "splits_over_Q": quatalg.splits_over_Q(alg),
                    "splits_over_K": splits, "error": None}
        suff = quatalg.theorem31_sufficient(p, q, d)
        return {"d": d, "p": p, "q": q, "sufficient": suff.holds, "reason": suff.reason,
                "splits": splits, "agree": suff.holds == splits,
                "violation": suff.holds and not splits, "error": None}
    except (DomainError, CapacityError) as exc:
        keys = ("n", "p") if mode == "symbol" else ("d", "p", "q")
        row = {c: None for c in SWEEP_COLUMNS[mode]}
        row.update(zip(keys, cell))
        row["error"] = str(exc)
        return row


def _evaluate_many(mode: str, cells: Sequence[tuple]) -> list[dict]:
    return [evaluate_cell(mode, c) for c in cells]


def run_sweep(req: SweepRequest, jobs: int = 1) -> list[dict]:
    cells = sweep_cells(req)
    if jobs <= 1 or len(cells) < 2:
        return _evaluate_many(req.mode, cells)
    size = max(1, len(cells) // (4 * jobs))
    chunks = [cells[i : i + size] for i in range(0, len(cells), size)]
    rows: list[dict] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map() yields in submission order, so output order is schedule-independent.
        for part in pool.map(_evaluate_many, [req.mode] * len(chunks), chunks):
            rows.extend(part)
    return rows


def _cell_text(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def render_rows(rows: Iterable[dict], mode: str, fmt: str) -> str:
    rows = list(rows)
    columns = SWEEP_COLUMNS[mode]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell_text(r.get(c)) for c in columns])
        return buf.getvalue()
    table = [columns] + [[_cell_text(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    return "".join(
        "  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() + "\n"
        for line in table
    )


def cmd_sweep(args) -> int:
    req = SweepRequest(
        mode=args.mode,
        d_range=args.d_range,
        p_range=args.p_range,
        q_range=args.q_range,
        n_range=args.n_range,
        output_format=args.format or "table",
    )
    rows = run_sweep(req, jobs=args.jobs)
    sys.stdout.write(render_rows(rows, req.mode, req.output_format))
    if rows and all(r["error"] for r in rows):
        return 2
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default=None,
                        help="output format (csv/table apply to sweep)")

    parser = argparse.ArgumentParser(
        prog="quatsplit",
        description="Splitting of quaternion algebras over Q and Q(sqrt d); "
                    "non-split certificates for degree-n symbol algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, **kw) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help, description=help, **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("legendre", cmd_legendre, "Legendre symbol (a/n), n an odd prime")
    sp.add_argument("a", type=_int64)
    sp.add_argument("n", type=_int64)

    sp = add("kronecker", cmd_kronecker, "Kronecker symbol (a/n)")
    sp.add_argument("a", type=_int64)
    sp.add_argument("n", type=_int64)

    sp = add("decompose", cmd_decompose, "decomposition type of a place of Q in Q(sqrt d)")
    sp.add_argument("p", type=_place, help="prime, or 'inf'")
    sp.add_argument("--d", type=_int64, required=True)

    sp = add("hilbert", cmd_hilbert, "local Hilbert symbol (a,b)_v")
    sp.add_argument("a", type=_int64)
    sp.add_argument("b", type=_int64)
    sp.add_argument("v", type=_place, help="prime, or 'inf'")
    sp.add_argument("--oracle", action="store_true", help="cross-check by brute-force search")

    sp = add("ramified", cmd_ramified, "ramified places of H(a,b) over Q")
    sp.add_argument("a", type=_int64)
    sp.add_argument("b", type=_int64)
    sp.add_argument("--oracle", action="store_true", help="cross-check by brute-force search")

    sp = add("splits", cmd_splits, "does H(a,b) split over Q, or over Q(sqrt d) with --d")
    sp.add_argument("a", type=_int64)
    sp.add_argument("b", type=_int64)
    sp.add_argument("--d", type=_int64, default=None)
    sp.add_argument("--oracle", action="store_true", help="cross-check by brute-force search")

    sp = add("theorem31", cmd_theorem31, "sufficient condition for H(p,q) to split over Q(sqrt d)")
    sp.add_argument("p", type=_int64)
    sp.add_argument("q", type=_int64)
    sp.add_argument("--d", type=_int64, required=True)

    sp = add("corollary31", cmd_corollary31,
             "sufficient condition for H(alpha,p) to split over Q(sqrt d)")
    sp.add_argument("alpha", type=_int64)
    sp.add_argument("p", type=_int64)
    sp.add_argument("--d", type=_int64, required=True)

    sp = add("residue", cmd_residue, "power-residue conditions for alpha, n, p")
    sp.add_argument("alpha", type=_int64)
    sp.add_argument("n", type=_int64)
    sp.add_argument("p", type=_int64)

    sp = add("find-alpha", cmd_find_alpha, "smallest admissible alpha for (n, p)")
    sp.add_argument("n", type=_int64)
    sp.add_argument("p", type=_int64)

    sp = add("certificate", cmd_certificate, "non-split certificate for (alpha, p / Q(xi))")
    sp.add_argument("n", type=_int64)
    sp.add_argument("p", type=_int64)
    sp.add_argument("--alpha", type=_int64, default=None)

    sp = add("factor-fp", cmd_factor_fp, "factor a polynomial over F_p, e.g. 'x^6 - 2'")
    sp.add_argument("p", type=_int64)
    sp.add_argument("poly")
    sp.add_argument("--signed-poly", action="store_true", help="render coefficients in (-p/2, p/2]")
    sp.add_argument("--oracle", action="store_true", help="verify factors by trial division")

    sp = add("sweep", cmd_sweep, "batch evaluation over a grid",
             epilog=SWEEP_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("--mode", choices=sorted(SWEEP_COLUMNS), default="theorem31")
    sp.add_argument("--d-range", type=parse_range, default=(-1, -1))
    sp.add_argument("--p-range", type=parse_range, default=(2, 30))
    sp.add_argument("--q-range", type=parse_range, default=(3, 30))
    sp.add_argument("--n-range", type=parse_range, default=(3, 12))
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
