"""Exact Laurent-module computations from the command line.

Exit codes: 0 success, 1 input or parse error, 2 mathematical domain error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dynamics as dyn
from .errors import DomainError, InputError, LaurentKError, ParseError
from .io import parse_endo, parse_module
from .laurent import evaluate, format_root, numeric_roots, parse_poly, root_residual_ok
from .localize import (
    EVEN_MINUS_ODD,
    graded_localized_trace,
    graded_trace,
    localize,
    module_trace,
)
from .modules import Support, annihilator, classify, graded_support, support
from .models import (
    cp1_fixed_point_data,
    cp1_map,
    cp1_module,
    cp1_twisted_trace,
    euler_number,
    lefschetz_crosscheck,
    nonequivariant_euler_number,
    parse_fixed_point_data,
)
from .ratfunc import RationalFunction
from .report import Report
from .series import DEFAULT_ORDER


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _poly_arg(text: str):
    try:
        return parse_poly(text)
    except ParseError as exc:
        raise ParseError(f"--at: {exc.message}", exc.column, text=text) from None


def _matrix_arg(name: str, text: str):
    try:
        return dyn.parse_int_matrix(text)
    except ParseError as exc:
        raise ParseError(f"{name}: {exc.message}") from None


def support_fields(s: Support, tol: float = 1e-9) -> dict:
    if s.is_full:
        return {"kind": "FULL (C*)"}
    if s.is_empty:
        return {"kind": "EMPTY", "generator": "1", "roots": []}
    roots = numeric_roots(s.generator)
    return {
        "kind": "FINITE",
        "generator": str(s.generator),
        "roots": [format_root(z) for z in roots],
        "roots_verified": all(root_residual_ok(s.generator, z) for z in roots),
    }


def _factors_fields(inv) -> dict:
    return {
        "invariant_factors": [str(d) for d in inv.torsion],
        "free_rank": inv.free_rank,
        "structure": inv.describe(),
    }


def cmd_classify(path: str, tol: float = 1e-9) -> Report:
    gm = parse_module(_read(path))
    rep = Report(f"classify {path}")
    for d in (0, 1):
        inv = classify(gm.degree(d))
        fields = _factors_fields(inv)
        fields["annihilator"] = str(annihilator(inv))
        fields["support"] = support_fields(support(inv), tol)
        rep.add(f"degree{d}", fields)
    rep.add("t_spectrum", support_fields(graded_support(gm), tol))
    return rep


def cmd_localize(path: str, at: str, tol: float = 1e-9) -> Report:
    gm = parse_module(_read(path))
    f = _poly_arg(at)
    rep = Report(f"localize {path} --at {at}")
    rep.add("inverted", str(localize(classify(gm.degree0), f).inverted))
    for d in (0, 1):
        loc = localize(classify(gm.degree(d)), f)
        fields = _factors_fields(loc.factors)
        fields["support"] = support_fields(loc.support(), tol)
        fields["support_avoids_Z_f"] = loc.support().is_full or loc.support().is_disjoint_from_zeros_of(loc.inverted)
        rep.add(f"degree{d}", fields)
    return rep


def cmd_trace(path: str, endo_path: str, at: str | None = None) -> Report:
    gm = parse_module(_read(path))
    L = parse_endo(_read(endo_path))
    cmd = f"trace {path} {endo_path}" + (f" --at {at}" if at else "")
    rep = Report(cmd)
    rep.add("parity", L.parity)
    gt = graded_trace(gm, L, EVEN_MINUS_ODD)
    if L.parity == 0:
        rep.add("trace_degree0", str(module_trace(gm.degree0, L.blocks[0])))
        rep.add("trace_degree1", str(module_trace(gm.degree1, L.blocks[1])))
    rep.add("graded_trace", str(gt.value))
    rep.add("convention", "K0 - K1")
    if gt.note:
        rep.add("note", gt.note)
    if at:
        f = _poly_arg(at)
        lt = graded_localized_trace(gm, L, f, EVEN_MINUS_ODD)
        rep.add("localized_at", at)
        rep.add("localized_trace", str(lt.value))
        rep.add("localization_consistent", lt.value == RationalFunction(gt.value))
    return rep


def _action_from_args(args) -> tuple[dyn.KTheoryAction, bool]:
    if args.torus:
        T = _matrix_arg("--torus", args.torus)
        return dyn.KTheoryAction.of_torus(T), True
    return dyn.KTheoryAction(_matrix_arg("--k0", args.k0 or ""), _matrix_arg("--k1", args.k1 or "")), False


def _spectrum_fields(rep: Report, s: Support, tol: float) -> None:
    rep.add("spectrum", support_fields(s, tol))
    rep.add("monic_integer_generator", s.generator.is_integral and s.generator.coeff(0) != 0)
    ob = dyn.commutativity_obstruction(s, tol)
    rep.add("commutativity_obstruction", ob.obstructed)
    rep.add("witnesses", [format_root(z) for z in ob.witnesses])


def cmd_tspec(args) -> Report:
    a, torus = _action_from_args(args)
    rep = Report("tspec " + _action_echo(args))
    rep.add("k0", dyn.format_int_matrix(a.k0_matrix))
    rep.add("k1", dyn.format_int_matrix(a.k1_matrix))
    _spectrum_fields(rep, dyn.tspec_of_crossed_product(a), args.tolerance)
    if torus:
        rep.warn(dyn.TORUS_DISCREPANCY)
    return rep


def _action_echo(args) -> str:
    if args.torus:
        return f"--torus {args.torus}"
    return f"--k0 '{args.k0 or ''}' --k1 '{args.k1 or ''}'"


def cmd_ck(matrix: str, tol: float = 1e-9) -> Report:
    A = _matrix_arg("matrix", matrix)
    rep = Report(f"ck {matrix}")
    _spectrum_fields(rep, dyn.ck_spectrum(A), tol)
    return rep


def cmd_zeta(args) -> Report:
    a, torus = _action_from_args(args)
    N = args.order
    rep = Report(f"zeta {_action_echo(args)} --order {N}")
    c = dyn.char_function(a)
    num, den = c.constant_term_normalized()
    rep.add("char_function", c.format("t", ascending=True, normalize_constant=True))
    rep.add("char_numerator", num.format("t", ascending=True))
    rep.add("char_denominator", den.format("t", ascending=True))
    z = dyn.zeta_series(a, N)
    rep.add("order", N)
    rep.add("char_series", z.char_series.to_poly().format("t", ascending=True))
    rep.add("exp_trace_series", z.exp_series.to_poly().format("t", ascending=True))
    rep.add("graded_power_traces", dyn.graded_power_traces(a, N))
    rep.add("trace_convention", "K1 - K0")
    rep.add("zeta_identity", z.equal)
    if torus:
        rep.warn(dyn.TORUS_DISCREPANCY)
    return rep


def cmd_periodic(matrix: str, max_n: int) -> Report:
    T = dyn.ToralAutomorphism(_matrix_arg("matrix", matrix))
    rep = Report(f"periodic {matrix} --max-n {max_n}")
    rep.add("hyperbolic", T.is_hyperbolic())
    rows = []
    for n in range(1, max_n + 1):
        p = dyn.periodic_points(T, n)
        row = {"n": n, "P_n": p, "oracle": "OK" if dyn.lattice_point_count(T, n) == p else "MISMATCH"}
        if T.is_symmetric:
            ls = dyn.lefschetz_sign(T, n)
            row.update({"graded_trace": ls.graded_trace, "k": ls.k, "sign_check": "OK" if ls.holds else "FAIL"})
        rows.append(row)
    rep.add("periodic_points", rows)
    return rep


def _cp1_row(k: int) -> dict:
    tr = cp1_twisted_trace(k)
    fp = cp1_fixed_point_data(k)
    return {
        "k": k,
        "trace": str(tr),
        "euler_number": str(euler_number(fp)),
        "lefschetz_crosscheck": "OK" if lefschetz_crosscheck(fp, cp1_module(), cp1_map(k)) else "FAIL",
        "at_X_1": str(evaluate(tr, 1)),
    }


def cmd_cp1(euler: int | None, max_k: int) -> Report:
    if euler is not None:
        rep = Report(f"cp1 --euler {euler}")
        if euler < 0:
            raise InputError("--euler must be nonnegative")
        for key, value in _cp1_row(euler).items():
            rep.add(key, value)
        return rep
    rep = Report(f"cp1 --max-k {max_k}")
    rep.add("relation", "[H]^2 = (X + X^-1)[H] - 1")
    rep.add("traces", [_cp1_row(k) for k in range(max_k + 1)])
    return rep


def cmd_euler(path: str, module_path: str | None = None, endo_path: str | None = None) -> Report:
    fp = parse_fixed_point_data(_read(path))
    cmd = f"euler {path}"
    if module_path:
        cmd += f" --module {module_path} --endo {endo_path}"
    rep = Report(cmd)
    rep.add("components", [{"euler": c.euler_characteristic,
                            "characters": " ".join(f"X^{e}:{m}" for e, m in sorted(c.characters))}
                           for c in fp.components])
    e = euler_number(fp)
    rep.add("euler_number", str(e))
    rep.add("nonequivariant", nonequivariant_euler_number(fp))
    if module_path:
        if not endo_path:
            raise InputError("--module needs --endo")
        gm = parse_module(_read(module_path))
        L = parse_endo(_read(endo_path))
        gt = graded_trace(gm, L, EVEN_MINUS_ODD)
        rep.add("graded_trace", str(gt.value))
        rep.add("lefschetz_crosscheck", "OK" if e == gt.value else "FAIL")
    return rep


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage problems are input errors (exit 1), not domain errors
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--tolerance", type=float, default=1e-9, help="numeric tolerance for root tests")

    p = _Parser(prog="laurentk", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="invariant factors and supports of a module file")
    s.add_argument("path")

    s = sub.add_parser("localize", parents=[common], help="localize a module file at U_f")
    s.add_argument("path")
    s.add_argument("--at", required=True, metavar="POLY")

    s = sub.add_parser("trace", parents=[common], help="graded module trace of an endomorphism")
    s.add_argument("path")
    s.add_argument("endo")
    s.add_argument("--at", metavar="POLY")

    for name, help_ in (("tspec", "spectrum of a crossed product from its K-theory action"),
                        ("zeta", "characteristic function and zeta identity")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--k0", metavar="ROWS", help="integer matrix on K0, e.g. '1,0;0,-1'")
        s.add_argument("--k1", metavar="ROWS", help="integer matrix on K1")
        s.add_argument("--torus", metavar="ROWS", help="toral automorphism T; K-theory via exterior powers")
        if name == "zeta":
            s.add_argument("--order", type=int, default=DEFAULT_ORDER)

    s = sub.add_parser("ck", parents=[common], help="Cuntz-Krieger spectrum of a 0/1 matrix")
    s.add_argument("matrix")

    s = sub.add_parser("periodic", parents=[common], help="periodic points of a toral automorphism")
    s.add_argument("matrix")
    s.add_argument("--max-n", type=int, default=10)

    s = sub.add_parser("cp1", parents=[common], help="twisted traces on K_T(CP^1)")
    s.add_argument("--euler", type=int, metavar="K")
    s.add_argument("--max-k", type=int, default=10)

    s = sub.add_parser("euler", parents=[common], help="equivariant Euler number from fixed-point data")
    s.add_argument("path")
    s.add_argument("--module")
    s.add_argument("--endo")
    return p


def run(args) -> Report:
    c = args.command
    if c == "classify":
        return cmd_classify(args.path, args.tolerance)
    if c == "localize":
        return cmd_localize(args.path, args.at, args.tolerance)
    if c == "trace":
        return cmd_trace(args.path, args.endo, args.at)
    if c == "tspec":
        return cmd_tspec(args)
    if c == "zeta":
        if args.order < 1:
            raise InputError("--order must be positive")
        return cmd_zeta(args)
    if c == "ck":
        return cmd_ck(args.matrix, args.tolerance)
    if c == "periodic":
        if args.max_n < 1:
            raise InputError("--max-n must be positive")
        return cmd_periodic(args.matrix, args.max_n)
    if c == "cp1":
        return cmd_cp1(args.euler, args.max_k)
    if c == "euler":
        return cmd_euler(args.path, args.module, args.endo)
    raise InputError(f"unknown command {c}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except LaurentKError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
