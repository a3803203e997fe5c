"""Command-line verifier.

    phicomplex check-maxwell FIELD.json
    phicomplex check-eed FIELD.json
    phicomplex dualize FIELD.json --alpha pi/6
    phicomplex invariants FIELD.json
    phicomplex symmetry --field VECTOR.json
    phicomplex flows --family boost_x --param 1/2 --point 1,0,0,1
    phicomplex metric-table
    phicomplex wave-check --u "cos(z - xi)"

Exit status: 0 all residuals zero, 1 some NonZero, 2 bad input,
3 an Indeterminate verdict.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import eed
from . import maxwell as mx
from . import structures as st
from . import symmetry as sy
from .report import EXIT_CONFIG, Report, digest
from .scalar import expr as ex
from .scalar.parser import ExprSyntaxError, parse, parse_with_parameters
from .scalar.poly import to_expr
from .scalar.zero import INDETERMINATE, NONZERO, NUMERIC_ZERO, Verdict
from .verdicts import verdict_map


class ConfigError(Exception):
    pass


def _read(path: str) -> tuple:
    try:
        raw = Path(path).read_bytes()
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err.strerror}") from None
    try:
        return json.loads(raw), digest(raw)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}: invalid JSON ({err.msg})") from None


def _field(path: str):
    data, dg = _read(path)
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    try:
        return mx.EMField3.from_json(data), dg
    except (ValueError, TypeError) as err:
        raise ConfigError(f"{path}: {err}") from None


def _show(p) -> str:
    return ex.render(to_expr(p))


def _timed(report: Report, check: str, fn, numeric_only: bool):
    t0 = time.perf_counter()
    verdicts = verdict_map(fn(), numeric_only)
    report.add(check, verdicts, time.perf_counter() - t0)


def cmd_check_maxwell(args) -> Report:
    f, dg = _field(args.field)
    rep = Report("check-maxwell", dg)
    n = args.numeric_only
    _timed(rep, "maxwell3d", lambda: mx.maxwell_residual_3d(f), n)
    _timed(rep, "omega", lambda: mx.omega_residual(mx.omega(f)), n)
    _timed(rep, "maxwell4d", lambda: mx.maxwell_residual_4d(mx.build_F(f)), n)
    return rep


def cmd_check_eed(args) -> Report:
    f, dg = _field(args.field)
    rep = Report("check-eed", dg)
    F = mx.build_F(f)
    n = args.numeric_only
    _timed(rep, "eed.star", lambda: eed.eed_residuals_star(F), n)
    _timed(rep, "eed.insertion", lambda: eed.eed_residuals_insertion(F), n)
    _timed(rep, "eed.lie", lambda: eed.eed_residuals_lie(F), n)
    i1, i2 = mx.invariants(f)
    rep.values = {
        "I1": _show(i1),
        "I2": _show(i2),
        "constraint_factors": {"I1": str(eed.I1_FACTOR), "I2": str(eed.I2_FACTOR)},
        "constraint_factor_derivation": "i(DF)F and i(DF)PhiF on constant basis fields",
    }
    return rep


def _angle(text: str):
    try:
        return parse_with_parameters(text)
    except ExprSyntaxError:
        try:
            return float(text)
        except ValueError:
            raise ConfigError(f"cannot read angle {text!r}") from None


def cmd_dualize(args) -> Report:
    f, dg = _field(args.field)
    alpha = _angle(args.alpha)
    rep = Report("dualize", dg + f";alpha={args.alpha}")
    g = mx.duality_rotate(f, alpha)
    n = args.numeric_only
    _timed(rep, "rotated.maxwell3d", lambda: mx.maxwell_residual_3d(g), n)
    law = mx.invariants_rotation(f, alpha)
    w0, s0 = mx.energy_momentum(f)
    w1, s1 = mx.energy_momentum(g)
    _timed(
        rep,
        "duality",
        lambda: {
            "I1_law": law["predicted"][0] - law["direct"][0],
            "I2_law": law["predicted"][1] - law["direct"][1],
            "energy": w1 - w0,
            "poynting": tuple(a - b for a, b in zip(s1, s0)),
        },
        n,
    )
    rep.values = {"E": [_show(c) for c in g.E], "B": [_show(c) for c in g.B]}
    return rep


def cmd_invariants(args) -> Report:
    f, dg = _field(args.field)
    rep = Report("invariants", dg)
    i1, i2 = mx.invariants(f)
    w, S = mx.energy_momentum(f)
    rep.values = {"I1": _show(i1), "I2": _show(i2), "w": _show(w), "S": [_show(c) for c in S]}
    return rep


def cmd_symmetry(args) -> Report:
    data, dg = _read(args.field)
    try:
        X = sy.VectorField4.from_json(data)
    except (ValueError, TypeError) as err:
        raise ConfigError(f"{args.field}: {err}") from None
    rep = Report("symmetry", dg)
    t0 = time.perf_counter()
    report = sy.symmetry_report(X, args.numeric_only)
    pdes = {k: v for k, v in report.items() if k != "conformal_condition"}
    rep.add("symmetry.pde", pdes, time.perf_counter() - t0)
    rep.add("symmetry.h2", {"conformal_condition": report["conformal_condition"]})
    rep.values = {"div_X": _show(X.div())}
    return rep


def _numbers(text: str, count: int, what: str) -> tuple:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise ConfigError(f"{what} needs {count} comma-separated numbers")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot read {what} {text!r}") from None


def cmd_flows(args) -> Report:
    if args.family not in sy.FAMILIES:
        raise ConfigError(f"unknown family {args.family!r}; choose from {', '.join(sy.FAMILIES)}")
    try:
        s = Fraction(args.param)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot read parameter {args.param!r}") from None
    point = _numbers(args.point, 4, "--point")
    vector = _numbers(args.vector, 4, "--vector") if args.vector else None
    rep = Report("flows", digest(f"{args.family};{s};{point};{vector}".encode()))
    fmap = sy.flow_map(args.family, s, vector)
    try:
        image = fmap.at(point, exact=args.family in ("translation", "special_conformal"))
    except sy.SingularPoint as err:
        raise ConfigError(f"singular point: {err}") from None
    rep.values = {
        "image": [str(c) if isinstance(c, Fraction) else repr(float(c)) for c in image],
        "map": fmap.to_json()["targets"],
    }
    t0 = time.perf_counter()
    tol = 1e-6
    try:
        gap = sy.flow_consistency_check(args.family, float(s), point, vector, args.step)
    except sy.SingularPoint as err:
        # the closed form is defined at s, but the orbit from the point crosses a pole
        v = Verdict(INDETERMINATE)
        rep.values["integrator"] = str(err)
    else:
        rep.values["discrepancy"] = gap
        v = (
            Verdict(NUMERIC_ZERO, tolerance=tol)
            if gap <= tol
            else Verdict(NONZERO, witness=dict(zip(sy.CHART, map(float, point))), value=gap)
        )
    rep.add("flow", {"integrator_gap": v}, time.perf_counter() - t0)
    return rep


def cmd_metric_table(args) -> Report:
    rep = Report("metric-table", digest(b"metric-table"))
    rep.values = st.structure_tables()
    return rep


def cmd_wave_check(args) -> Report:
    try:
        u = parse(args.u)
    except ExprSyntaxError as err:
        raise ConfigError(str(err)) from None
    rep = Report("wave-check", digest(args.u.encode()))
    n = args.numeric_only
    res = mx.wave_f_map(u)
    coeff = res[(1, 2, 3, 4)]
    _timed(rep, "wave", lambda: {"f_map_residual": res, "dalembert_identity": coeff - st.dalembertian(u)}, n)
    rep.values = {"coefficient": _show(coeff)}
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phicomplex", description="Exterior-calculus verifier.")
    p.add_argument("--json", action="store_true", help="emit the machine-readable report")
    p.add_argument("--numeric-only", action="store_true", help="force the sampled zero test")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, helptext):
        sp = sub.add_parser(name, help=helptext)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--numeric-only", action="store_true", default=argparse.SUPPRESS)
        return sp

    verb("check-maxwell", cmd_check_maxwell, "3-d, omega and 4-d Maxwell residuals").add_argument("field")
    verb("check-eed", cmd_check_eed, "extended-electrodynamics residuals").add_argument("field")
    sp = verb("dualize", cmd_dualize, "duality rotation and invariant law")
    sp.add_argument("field")
    sp.add_argument("--alpha", required=True)
    verb("invariants", cmd_invariants, "I1, I2, w and S").add_argument("field")
    verb("symmetry", cmd_symmetry, "twelve symmetry equations and the h2 condition").add_argument(
        "--field", required=True
    )
    sp = verb("flows", cmd_flows, "closed-form flow and integrator check")
    sp.add_argument("--family", required=True)
    sp.add_argument("--param", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--vector")
    sp.add_argument("--step", type=float, default=1e-3)
    verb("metric-table", cmd_metric_table, "operator and metric tables")
    verb("wave-check", cmd_wave_check, "f-map form of the wave equation").add_argument("--u", required=True)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else 0
    try:
        rep = args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    out.write(rep.dumps() if args.json else rep.render_text())
    return rep.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
