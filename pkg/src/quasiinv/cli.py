"""Command-line interface.

Exit codes: 0 success, 1 bad invocation, 2 an exact identity failed.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from .coxeter import build_group
from .errors import TheoremViolation, UsageError
from .exact.poly import default_names, parse_poly
from .exact.scalars import scalar_str

ENV_MAX_DEGREE = "QUASIINV_MAX_DEGREE"
MAX_DEGREE_GUARD = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_degree():
    raw = os.environ.get(ENV_MAX_DEGREE)
    if raw is None:
        return 12
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_MAX_DEGREE} must be an integer, got {raw!r}") from None


def _degree(value: int) -> int:
    if value < 0 or value > MAX_DEGREE_GUARD:
        raise UsageError(f"degree must lie in 0..{MAX_DEGREE_GUARD}")
    return value


def _int_list(text: str, W):
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"multiplicities must be integers: {text!r}") from None
    if len(vals) != len(W.orbits):
        raise UsageError(f"{W.name} has {len(W.orbits)} reflection orbit(s); got {len(vals)} multiplicity value(s)")
    if any(v < 0 for v in vals):
        raise UsageError("multiplicities must be nonnegative")
    return vals


def _fraction_list(text: str, W):
    try:
        vals = tuple(Fraction(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"couplings must be rationals such as 1/2: {text!r}") from None
    if len(vals) != len(W.orbits):
        raise UsageError(f"{W.name} has {len(W.orbits)} reflection orbit(s); got {len(vals)} coupling value(s)")
    return vals


def _point(text: str, n: int):
    try:
        vals = [Fraction(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"points are comma-separated rationals: {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"points must have {n} coordinate(s)")
    return vals


def _poly(text: str, n: int):
    try:
        return parse_poly(text, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _names(W):
    return list(default_names(W.rank))


def _couplings(args, W):
    if args.c:
        return [_fraction_list(args.c, W)]
    rng = random.Random(args.seed)
    return [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in W.orbits) for _ in range(3)]


def _fmt_tuple(vals):
    return "(" + ", ".join(scalar_str(v) for v in vals) + ")"


# ---------------------------------------------------------------- commands


def cmd_group_info(args):
    W = build_group(args.group)
    data = W.to_json()
    lines = [
        f"group {W.name}: rank {W.rank}, order {W.order}, field {data['field'] if W.field is None else W.field.label}",
        f"degrees: {', '.join(map(str, W.degrees))}",
        f"reflections: {W.n_reflections} in {len(W.orbits)} orbit(s) of sizes {[len(o) for o in W.orbits]}",
        "root forms: " + ", ".join(data["root_forms"]),
        "invariant form: " + W.quadratic_invariant.to_text(_names(W)),
        "characters (degree): " + ", ".join(f"{l} ({d})" for l, d in zip(W.character_table.labels,
                                                                          W.character_table.degrees)),
    ]
    return data, lines


def cmd_basis(args):
    from .quasi import QuasiInvariantProblem, graded_basis, graded_component
    W = build_group(args.group)
    m = _int_list(args.mult, W)
    names = _names(W)
    if args.degree is not None:
        r = _degree(args.degree)
        basis = [p.to_text(names) for p in graded_component(QuasiInvariantProblem(W, m, r), r)]
        return {"group": W.name, "mult": list(m), "degree": r, "basis": basis}, [json.dumps(basis, ensure_ascii=False)]
    N = _degree(args.max_degree)
    B = graded_basis(QuasiInvariantProblem(W, m, N))
    data = {"group": W.name, "mult": list(m), "max_degree": N,
            "basis": {str(r): [p.to_text(names) for p in B[r]] for r in range(N + 1)}}
    lines = [f"{r}: {json.dumps(data['basis'][str(r)], ensure_ascii=False)}" for r in range(N + 1)]
    return data, lines


def cmd_hilbert(args):
    from .quasi import QuasiInvariantProblem, hilbert_direct
    from .series import freeness_certificate, gorenstein_certificate, hilbert_formula
    W = build_group(args.group)
    m = _int_list(args.mult, W)
    N = _degree(args.max_degree)
    data = {"group": W.name, "mult": list(m), "max_degree": N, "method": args.method}
    lines = []
    if args.method in ("formula", "compare"):
        hf = hilbert_formula(W, m)
        coeffs = hf.coefficients(N)
        gor = gorenstein_certificate(W, m)
        data.update({
            "P_m": hf.P.int_coefficients(),
            "denominator_degrees": list(W.degrees),
            "series": coeffs,
            "xi": hf.xi,
            "palindromy_exponent": gor.exponent,
            "functional_equation_l": gor.l,
        })
        lines.append("formula: " + ",".join(map(str, coeffs)))
    if args.method in ("direct", "compare"):
        direct = hilbert_direct(QuasiInvariantProblem(W, m, N))
        data["direct"] = direct
        lines.append("direct: " + ",".join(map(str, direct)))
    if args.method == "compare":
        if data["series"] != data["direct"]:
            raise TheoremViolation(f"direct and formula Hilbert coefficients differ for {W.name}, m={m}")
        fr = freeness_certificate(W, m, N, direct=data["direct"])
        data["freeness_generator_degrees"] = fr.generator_degrees
        data["match"] = True
        lines.append("MATCH")
    if "P_m" in data:
        lines.append(f"P_m(t) = {hilbert_formula(W, m).P.to_text()}; palindromic, exponent {data['palindromy_exponent']}")
    if "freeness_generator_degrees" in data:
        lines.append(f"free over invariants; generator degrees {data['freeness_generator_degrees']}")
    return data, lines


def cmd_separate(args):
    from .quasi import QuasiInvariantProblem, is_quasi_invariant, separating_polynomial
    W = build_group(args.group)
    m = _int_list(args.mult, W)
    P = QuasiInvariantProblem(W, m)
    z, y = _point(args.z, W.rank), _point(args.y, W.rank)
    p = separating_polynomial(z, y, P)
    ok = is_quasi_invariant(p, P) and p.evaluate(z) != 0 and p.evaluate(y) == 0
    if not ok:
        raise TheoremViolation("separating polynomial failed its own checks")
    text = p.to_text(_names(W))
    data = {"group": W.name, "mult": list(m), "z": [scalar_str(v) for v in z], "y": [scalar_str(v) for v in y],
            "p": text, "p(z)": scalar_str(p.evaluate(z)), "p(y)": scalar_str(p.evaluate(y))}
    return data, [f"p = {text}", f"p(z) = {data['p(z)']}, p(y) = 0, quasi-invariant: yes"]


def cmd_dunkl_check(args):
    from .operators import calogero_moser, commutator, dunkl_basis
    W = build_group(args.group)
    runs = []
    lines = []
    for c in _couplings(args, W):
        D = dunkl_basis(W, c)
        zero = all(not commutator(D[i], D[j]) for i in range(len(D)) for j in range(i + 1, len(D)))
        if not zero:
            raise TheoremViolation(f"Dunkl operators fail to commute for c = {_fmt_tuple(c)}")
        cm = calogero_moser(W, c)
        runs.append({"c": [scalar_str(v) for v in c], "commute": True, "gauge": cm.gauge_ok,
                     "restriction": cm.restriction_ok})
        lines.append(f"c = {_fmt_tuple(c)}: [D_i, D_j] = 0, m(sum D^2) = L, delta H delta^-1 = L")
    if W.rank == 1 or args.show:
        D = dunkl_basis(W, _couplings(args, W)[0])
        for i, d in enumerate(D):
            lines.append(f"D_{i + 1} = {d}")
    return {"group": W.name, "runs": runs}, lines


def cmd_berest(args):
    from .operators import berest_integral, negative_control
    from .quasi import QuasiInvariantProblem, is_quasi_invariant
    W = build_group(args.group)
    m = _int_list(args.mult, W)
    q = _poly(args.q, W.rank)
    names = _names(W)
    if not is_quasi_invariant(q, QuasiInvariantProblem(W, m)):
        neg = negative_control(W, q, m)
        data = {"group": W.name, "mult": list(m), "q": q.to_text(names), "in_Q_m": False,
                "ad_L_d_plus_1": neg.to_text(names)}
        return data, [f"q = {q.to_text(names)} is not in Q_m", f"(ad L)^{q.degree + 1} q = {neg.to_text(names)}"]
    res = berest_integral(W, q, m)
    data = {"group": W.name, "mult": list(m), "q": q.to_text(names), "in_Q_m": True,
            "L_q": res.Lq.to_text(names), "commutes_with_L": res.commutes, "nilpotent": res.nilpotent}
    return data, [f"L_q = {res.Lq.to_text(names)}", "[L_q, L] = 0; (ad L)^(d+1) q = 0"]


def cmd_sl2(args):
    from .operators import expected_sl2_constant, sl2_triple
    W = build_group(args.group)
    c = _couplings(args, W)[0]
    tr = sl2_triple(W, c)
    names = _names(W)
    data = {"group": W.name, "c": [scalar_str(v) for v in c], "E": tr.E.to_text(names), "F": tr.F.to_text(names),
            "H": tr.H.to_text(names), "C": scalar_str(tr.C), "expected_C": scalar_str(expected_sl2_constant(W, c))}
    lines = [f"c = {_fmt_tuple(c)}", f"E = {data['E']}", f"F = {data['F']}", f"H = {data['H']}",
             "[H, E] = 2E, [H, F] = -2F", f"H = -sum x_i d_i + C with C = {data['C']}"]
    return data, lines


def cmd_cherednik(args):
    from .operators import cherednik_relation_check
    W = build_group(args.group)
    c = _couplings(args, W)[0]
    rep = cherednik_relation_check(W, c, pbw=args.pbw, seed=args.seed, pbw_degree=args.pbw_degree)
    coeffs = {f"{i + 1},{j + 1},s{k + 1}": scalar_str(v) for (i, j, k), v in sorted(rep.coefficients.items())}
    ratios = sorted(scalar_str(r) for r in rep.ratio_to_displayed)
    data = {"group": W.name, "c": [scalar_str(v) for v in c], "identity_part_ok": rep.identity_part_ok,
            "matches_formula": rep.matches_prediction, "x_commute": rep.x_commute,
            "dunkl_commute": rep.dunkl_commute, "equivariant": rep.equivariant,
            "reflection_coefficients": coeffs, "ratio_to_plus_c_formula": ratios, "pbw": rep.pbw}
    if not rep.ok:
        raise TheoremViolation(f"Cherednik relations failed: {data}")
    lines = [f"c = {_fmt_tuple(c)}",
             "[D_i, x_j] = delta_ij + sum_s k_s(i, j) s with k_s(i, j) = -2 c_s alpha_s(e_i) r_s[j] / (alpha_s, alpha_s): verified",
             f"ratio of computed to c_s(alpha,e_i)(alpha,e_j)/(alpha,alpha) coefficients: {', '.join(ratios)}",
             "[x_i, x_j] = 0, [D_i, D_j] = 0, w D_y w^-1 = D_{w y}: verified"]
    if rep.pbw:
        lines.append(f"PBW shadow: words agree {rep.pbw['words_agree']}, x_I D_J w independent {rep.pbw['independent']}"
                     f" ({rep.pbw['rank']}/{rep.pbw['operators']})")
    return data, lines


def cmd_ba(args):
    from .baker_akhiezer import ba_report
    if args.m < 0:
        raise UsageError("m must be nonnegative")
    qs = None
    if args.check_q:
        qs = [_poly(t, 1) for t in args.check_q]
    rep = ba_report(args.m, qs)
    P = rep.P.to_text(["k", "x"])
    data = {"m": args.m, "P": P, "leading_coefficient": scalar_str(rep.leading), "symmetric": rep.symmetric,
            "eigen": rep.eigen, "intertwining": rep.intertwining, "induction": rep.induction}
    lines = [f"psi_{args.m} = ({P}) e^(kx)", f"symmetric P(k,x) = P(x,k): {'yes' if rep.symmetric else 'no'}",
             "eigen checks: " + ", ".join(f"{q}: {'ok' if v else 'FAIL'}" for q, v in rep.eigen.items()),
             "L_q S_m = S_m q(d): " + ", ".join(f"{q}: {'ok' if v else 'FAIL'}" for q, v in rep.intertwining.items())]
    return data, lines


def cmd_verify_all(args):
    from .acceptance import CRITERIA, run_all
    nums = None
    if args.criteria:
        try:
            nums = [int(v) for v in args.criteria.split(",")]
        except ValueError:
            raise UsageError("criteria are comma-separated integers") from None
        if any(not 1 <= n <= len(CRITERIA) for n in nums):
            raise UsageError(f"criteria are numbered 1..{len(CRITERIA)}")
    results = run_all(nums)
    data = {"criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
                         for r in results], "all_passed": all(r.passed for r in results)}
    lines = [r.line() for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return data, lines


COMMANDS = {
    "group-info": cmd_group_info,
    "basis": cmd_basis,
    "hilbert": cmd_hilbert,
    "separate": cmd_separate,
    "dunkl-check": cmd_dunkl_check,
    "berest": cmd_berest,
    "sl2-report": cmd_sl2,
    "cherednik-check": cmd_cherednik,
    "ba": cmd_ba,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="quasiinv", description="Quasi-invariants, Dunkl operators and Calogero-Moser integrals.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group(sp):
        sp.add_argument("--group", required=True, help="A1, A2, A3, B2, B3 or I2(k)")

    def mult(sp, default="1"):
        sp.add_argument("--mult", default=default, help="one integer per reflection orbit, e.g. 1,0")

    def coupling(sp):
        sp.add_argument("--c", help="one rational coupling per orbit, e.g. 1/2,3; default: 3 seeded random choices")

    sp = sub.add_parser("group-info", parents=[common], help="roots, orbits, degrees, characters")
    group(sp)
    sp = sub.add_parser("basis", parents=[common], help="graded basis of Q_m")
    group(sp), mult(sp)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--max-degree", type=int, default=_default_degree())
    sp = sub.add_parser("hilbert", parents=[common], help="Hilbert series of Q_m")
    group(sp), mult(sp)
    sp.add_argument("--method", choices=["formula", "direct", "compare"], default="compare")
    sp.add_argument("--max-degree", type=int, default=_default_degree())
    sp = sub.add_parser("separate", parents=[common], help="quasi-invariant separating two points")
    group(sp), mult(sp)
    sp.add_argument("--z", required=True, help="comma-separated coordinates")
    sp.add_argument("--y", required=True, help="comma-separated coordinates")
    sp = sub.add_parser("dunkl-check", parents=[common], help="Dunkl commutativity and Calogero-Moser assembly")
    group(sp), coupling(sp)
    sp.add_argument("--show", action="store_true", help="print the Dunkl operators")
    sp = sub.add_parser("berest", parents=[common], help="quantum integral L_q by Berest's formula")
    group(sp), mult(sp)
    sp.add_argument("--q", required=True, help="homogeneous polynomial, e.g. x^3")
    sp = sub.add_parser("sl2-report", parents=[common], help="the sl(2) triple E, F, H")
    group(sp), coupling(sp)
    sp = sub.add_parser("cherednik-check", parents=[common], help="rational Cherednik relations")
    group(sp), coupling(sp)
    sp.add_argument("--pbw", action="store_true", help="also run the PBW independence shadow")
    sp.add_argument("--pbw-degree", type=int, default=6)
    sp = sub.add_parser("ba", parents=[common], help="rank-one Baker-Akhiezer function")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--check-q", action="append", help="polynomial in x for an eigenvalue check (repeatable)")
    sp = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    sp.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,5")
    return p


def _emit(args, data, lines):
    if args.format == "json":
        text = json.dumps(data, ensure_ascii=False, indent=2, default=str) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        data, lines = COMMANDS[args.command](args)
        _emit(args, data, lines)
        if args.command == "verify-all" and not data["all_passed"]:
            return 2
        if args.command == "berest" and not data["in_Q_m"]:
            # the negative control is still reported before the usage error
            sys.stderr.write(f"error: {data['q']} is not in Q_m\n")
            return 1
        return 0
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except TheoremViolation as exc:
        sys.stderr.write(f"theorem violation: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
