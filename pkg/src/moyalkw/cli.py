"""Batch verification harness: ``moyalkw verify|sweep|list-cases``.

Exit codes: 0 when every reported residual is within tolerance, 1 when
some residual is not, 2 on configuration errors (unknown case, bad box,
bad parameters, evaluation on a singular point).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .expr import DomainError, UnboundSymbol, X0, X1, X2, X3, evaluate, sample_points
from .algebra import MOYAL
from .forms import Form
from .gauge import (
    EquationResidual,
    GaugePair,
    ParameterError,
    ResidualReport,
    lagrangian_density,
    residual_stats,
)
from .hitchin import equivalence_check, identity_terms, random_hitchin_data
from .numbers import GaussQ, parse_number
from .phase import (
    PhasePoly,
    chi,
    moyal_bracket,
    poisson_bracket,
    random_phase_poly,
    star,
)
from .solutions import dh_curved, dh_flat, dh_flat_deformed, witten_classical, witten_deformed

__all__ = [
    "RunConfig",
    "UnknownCase",
    "InvalidBox",
    "CASES",
    "run_case",
    "sweep",
    "render",
    "main",
    "OUTPUT_DIR_ENV",
]

OUTPUT_DIR_ENV = "MOYALKW_OUTPUT_DIR"
PARAMS = ("hbar", "beta", "r", "t")
DEFAULT_PARAMS = {"hbar": "1/2", "beta": "1/2", "r": "1", "t": "1"}


class UnknownCase(KeyError):
    pass


class InvalidBox(ValueError):
    pass


@dataclass
class RunConfig:
    case: str
    params: dict = field(default_factory=dict)  # name -> text ("1/4", "0.5")
    samples: int | None = None
    seed: int = 0
    tol: float = 1e-10
    box: dict | None = None
    pq_box: tuple = (-1.0, 1.0)
    pq_grid: int = 16
    fmt: str = "json"

    def param(self, name):
        text = self.params.get(name, DEFAULT_PARAMS[name])
        return parse_number(str(text))

    def param_float(self, name):
        v = complex(self.param(name))
        return v.real if v.imag == 0 else v

    def validate(self):
        if not self.tol > 0:
            raise ParameterError("tolerance must be > 0")
        if self.samples is not None and self.samples < 1:
            raise ParameterError("sample count must be >= 1")
        for k in self.params:
            if k not in PARAMS:
                raise ParameterError(f"unknown parameter {k!r}")


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

_WITTEN_COORDS = ("x1", "x2", "x3")
_DH_COORDS = ("x0", "x1", "x2", "x3")
_HITCHIN_COORDS = ("x1", "x2")


def _resolve_box(cfg, coords, default):
    box = dict(default)
    if cfg.box is not None:
        given = cfg.box
        if "*" in given:
            box = {c: given["*"] for c in coords}
        else:
            for c in coords:
                if c not in given:
                    raise InvalidBox(f"box is missing coordinate {c}")
                box[c] = given[c]
    for c, (lo, hi) in box.items():
        if not lo < hi:
            raise InvalidBox(f"empty interval for {c}: [{lo}, {hi}]")
    return box


def _check_singular(case, box):
    full = {c: box.get(c, (0.5, 2.0)) for c in _DH_COORDS}
    problems = case.box_problems(full)
    if problems:
        raise InvalidBox("; ".join(problems))


def _points(box, n, seed, extra):
    pts = sample_points(box, n, seed)
    for k, v in extra.items():
        pts[k] = np.full(n, v)
    return pts


def _params_out(cfg, names):
    return {k: str(cfg.params.get(k, DEFAULT_PARAMS[k])) for k in names}


def _report_from_checks(cfg, case, names, default_box, coords, extra):
    """Evaluate every convention of a SolutionCase; the report lists the
    first passing convention, or the one with the smallest residual."""
    n = cfg.samples or 64
    box = _resolve_box(cfg, coords, {c: default_box[c] for c in coords})
    _check_singular(case, box)
    pts = _points(box, n, cfg.seed, extra)
    per_conv = {}
    for conv, chks in case.checks.items():
        per_conv[conv] = [residual_stats(name, res, pts, n) for name, res in chks]
    worst = {c: max(e.max_abs_residual for e in eqs) for c, eqs in per_conv.items()}
    passing = [c for c in per_conv if worst[c] <= cfg.tol]
    chosen = passing[0] if passing else min(per_conv, key=lambda c: (worst[c], list(per_conv).index(c)))
    rep = ResidualReport(case.name, _params_out(cfg, names), cfg.seed, cfg.tol)
    rep.equations = per_conv[chosen]
    rep.notes["convention"] = chosen
    if len(per_conv) > 1:
        rep.notes["conventions"] = {c: worst[c] for c in per_conv}
        rep.notes["annihilating_conventions"] = passing
    if case.info:
        rep.notes["diagnostics"] = {
            name: residual_stats(name, res, pts, n).max_abs_residual for name, res in case.info
        }
    rep.notes["box"] = {c: list(box[c]) for c in coords}
    return rep


# ---------------------------------------------------------------------------
# case runners
# ---------------------------------------------------------------------------


def _exact_equation(name, residuals, at):
    """Exact identity check over a list of symbolic residuals; any nonzero
    residual is measured at the parameter values ``at``."""
    lv = []
    for r in residuals:
        lv.extend(r.leaves() if hasattr(r, "leaves") else [r])
    lv = [x for x in lv if not x.is_zero()]
    if not lv:
        return EquationResidual(name, len(residuals), 0.0, 0.0, len(residuals), True)
    vals = [float(np.max(np.abs(evaluate(x, at)))) for x in lv]
    return EquationResidual(name, len(residuals), max(vals), float(np.mean(vals)), len(residuals), False)


def _bound(cfg, name):
    return name in cfg.params


def _run_star_properties(cfg):
    n = cfg.samples or 200
    assoc, anti, jac = [], [], []
    for i in range(n):
        rng = np.random.default_rng([cfg.seed, i])
        f, g, h = (random_phase_poly(rng) for _ in range(3))
        assoc.append(star(star(f, g), h) - star(f, star(g, h)))
        anti.append(moyal_bracket(f, g) + moyal_bracket(g, f))
        jac.append(
            moyal_bracket(f, moyal_bracket(g, h))
            + moyal_bracket(g, moyal_bracket(h, f))
            + moyal_bracket(h, moyal_bracket(f, g))
        )
    hb = cfg.param_float("hbar")
    at = {"hbar": hb}
    rep = ResidualReport("star-properties", _params_out(cfg, ("hbar",)), cfg.seed, cfg.tol)
    rep.equations = [
        _exact_equation("associativity", assoc, at),
        _exact_equation("bracket antisymmetry", anti, at),
        _exact_equation("Jacobi identity", jac, at),
    ]
    rep.notes["bracket_difference"] = _bracket_difference(cfg.seed, hb)
    return rep


def _bracket_difference(seed, hbar, pairs=8, points=8):
    """max |{f,g}_M - {f,g}_P| over seeded degree-3 pairs at fixed (p, q)."""
    pq = sample_points({"p": (-1.0, 1.0), "q": (-1.0, 1.0)}, points, seed)
    pq["hbar"] = np.full(points, float(hbar))
    worst = 0.0
    for i in range(pairs):
        rng = np.random.default_rng([seed, 10_000 + i])
        f = random_phase_poly(rng, degree=3, terms=4) + PhasePoly({(3, 0): Fraction(1), (0, 3): Fraction(1)})
        g = random_phase_poly(rng, degree=3, terms=4) + PhasePoly({(0, 3): Fraction(1), (3, 0): Fraction(-1)})
        d = (moyal_bracket(f, g) - poisson_bracket(f, g)).to_expr()
        if d.is_zero():
            continue
        worst = max(worst, float(np.max(np.abs(evaluate(d, pq)))))
    return worst


def _run_chi_su2(cfg):
    kw = {}
    names = []
    for name in ("hbar", "beta"):
        if _bound(cfg, name):
            kw[name] = cfg.param(name)
            names.append(name)
    hbar = kw.get("hbar")
    from .expr import HBAR, _coerce, power

    h = _coerce(hbar) if hbar is not None else HBAR
    c = {i: chi(i, **kw) for i in (1, 2, 3)}
    inv_ih = power(h, -1) * _coerce(GaussQ(0, -1))  # 1/(i hbar)
    eqs = []
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        res = moyal_bracket(c[i], c[j]) + c[k] * inv_ih
        rev = moyal_bracket(c[j], c[i]) - c[k] * inv_ih
        eqs.append(_exact_equation(f"{{chi{i},chi{j}}}_M + chi{k}/(i hbar)", [res], {"hbar": 1.0, "beta": 0.5}))
        eqs.append(_exact_equation(f"{{chi{j},chi{i}}}_M - chi{k}/(i hbar)", [rev], {"hbar": 1.0, "beta": 0.5}))
    for i in (1, 2, 3):
        eqs.append(_exact_equation(f"{{chi{i},chi{i}}}_M", [moyal_bracket(c[i], c[i])], {"hbar": 1.0, "beta": 0.5}))
    params = {k: str(cfg.params[k]) for k in names}
    for k in ("hbar", "beta"):
        params.setdefault(k, "formal")
    rep = ResidualReport("chi-su2", params, cfg.seed, cfg.tol, eqs)
    rep.notes["mode"] = "exact"
    return rep


def _run_witten_classical(cfg):
    case = witten_classical(cfg.param("r"))
    return _report_from_checks(cfg, case, ("r",), case.box, _WITTEN_COORDS, {})


def _run_witten_deformed(cfg):
    case = witten_deformed(cfg.param("r"))
    extra = {"hbar": cfg.param_float("hbar"), "beta": cfg.param_float("beta")}
    return _report_from_checks(cfg, case, ("r", "hbar", "beta"), case.box, _WITTEN_COORDS, extra)


def _run_dh_flat_classical(cfg):
    case = dh_flat()
    return _report_from_checks(cfg, case, (), case.box, _DH_COORDS, {})


def _run_dh_flat_deformed(cfg):
    case = dh_flat_deformed()
    extra = {"hbar": cfg.param_float("hbar"), "beta": cfg.param_float("beta")}
    return _report_from_checks(cfg, case, ("hbar", "beta"), case.box, _DH_COORDS, extra)


def _run_dh_curved(cfg):
    case = dh_curved()
    extra = {"hbar": cfg.param_float("hbar"), "beta": cfg.param_float("beta")}
    return _report_from_checks(cfg, case, ("hbar", "beta"), case.box, _DH_COORDS, extra)


HITCHIN_CONFIGS = 50


def _run_hitchin(cfg):
    n = cfg.samples or 64
    box = _resolve_box(cfg, _HITCHIN_COORDS, {c: (-1.0, 1.0) for c in _HITCHIN_COORDS})
    eq_i, eq_ii = [], []
    exact_i = True
    for k in range(HITCHIN_CONFIGS):
        d = random_hitchin_data([cfg.seed, k])
        ident_i, _ = identity_terms(d)
        exact_i = exact_i and ident_i.is_zero()
        rep = equivalence_check(d, box, n, cfg.tol, cfg.seed)
        eq_i.append(rep.equations[0])
        eq_ii.append(rep.equations[1])

    def merge(name, eqs):
        return EquationResidual(
            name,
            eqs[0].components,
            max(e.max_abs_residual for e in eqs),
            float(np.mean([e.mean_abs_residual for e in eqs])),
            sum(e.samples for e in eqs),
            all(e.exact for e in eqs),
        )

    out = ResidualReport("hitchin-equivalence", {}, cfg.seed, cfg.tol)
    out.equations = [merge(eq_i[0].name, eq_i), merge(eq_ii[0].name, eq_ii)]
    out.notes["configurations"] = HITCHIN_CONFIGS
    out.notes["identity_i_exact"] = exact_i
    out.notes["box"] = {c: list(box[c]) for c in _HITCHIN_COORDS}
    return out


def _density_fields():
    A = Form(1, {(0,): X1 * X2, (1,): X3 * X3, (3,): -X0})
    phi = Form(1, {(0,): X2, (2,): X0 * X3, (3,): X1 - X2})
    return A, phi


def _run_density_demo(cfg):
    n = cfg.samples or 16
    box = _resolve_box(cfg, _DH_COORDS, {c: (0.5, 2.0) for c in _DH_COORDS})
    pts = sample_points(box, n, cfg.seed)
    hb = cfg.param_float("hbar")
    A, phi = _density_fields()
    classical = GaugePair(A, phi)
    lift = lambda f: f.map(PhasePoly.scalar, algebra=MOYAL)
    deformed = GaugePair(lift(A), lift(phi))
    zero = GaugePair(Form.zero(1), Form.zero(1))
    pq_box = (cfg.pq_box, cfg.pq_box)
    d_ymh, d_top, z = [], [], []
    ymh_vals = []
    for i in range(n):
        at = {k: v[i] for k, v in pts.items()}
        at["hbar"] = hb
        c = lagrangian_density(classical, at)
        d = lagrangian_density(deformed, at, pq_box=pq_box, grid=cfg.pq_grid)
        d_ymh.append(abs(d[0] - c[0]))
        d_top.append(abs(d[1] - c[1]))
        z.append(max(abs(x) for x in lagrangian_density(zero, at)))
        ymh_vals.append(c[0].real)
    t = complex(cfg.param("t"))
    if t == 0:
        raise ParameterError("t = 0 is outside the family")
    weight = (t - 1 / t) / (t + 1 / t)

    def eq(name, vals):
        return EquationResidual(name, 1, float(max(vals)), float(np.mean(vals)), n, False)

    rep = ResidualReport("density-demo", _params_out(cfg, ("hbar", "t")), cfg.seed, cfg.tol)
    rep.equations = [
        eq("deformed - classical Yang-Mills-Higgs density", d_ymh),
        eq("deformed - classical Tr F^F density", d_top),
        eq("zero-field densities", z),
    ]
    rep.notes["mean_classical_density"] = float(np.mean(ymh_vals))
    rep.notes["topological_weight"] = float(weight.real)
    rep.notes["pq_box"] = list(cfg.pq_box)
    rep.notes["pq_grid"] = cfg.pq_grid
    return rep


CASES = {
    "star-properties": (_run_star_properties, "associativity, antisymmetry and Jacobi of the star algebra"),
    "chi-su2": (_run_chi_su2, "su(2) Moyal table of the chi functions (exact)"),
    "witten-classical": (_run_witten_classical, "Witten ansatz: scalar equation, pairwise conditions, F12"),
    "witten-deformed": (_run_witten_deformed, "phase-space Witten solution: conditions and F12"),
    "dh-flat-classical": (_run_dh_flat_classical, "self-dual ansatz on flat R^4 (classical)"),
    "dh-flat-deformed": (_run_dh_flat_deformed, "self-dual ansatz on flat R^4 (deformed, all conventions)"),
    "dh-curved": (_run_dh_curved, "sigma-coframe background: monopole data, structure, F display"),
    "hitchin-equivalence": (_run_hitchin, "complex vs real Hitchin equations on random data"),
    "density-demo": (_run_density_demo, "classical vs phase-space Lagrangian density"),
}


def run_case(cfg):
    """Run one catalog case and return its ResidualReport."""
    if cfg.case not in CASES:
        raise UnknownCase(cfg.case)
    cfg.validate()
    return CASES[cfg.case][0](cfg)


def _trend_metric(rep):
    if "bracket_difference" in rep.notes:
        return rep.notes["bracket_difference"]
    return max((e.max_abs_residual for e in rep.equations), default=0.0)


def sweep(cfg, param, values):
    """One report per value of ``param`` plus a max-residual trend.

    The fitted order is the least-squares slope of log(metric) against
    log|value|, reported when every metric and value is nonzero.
    """
    if param not in PARAMS:
        raise ParameterError(f"cannot sweep {param!r}")
    reports = []
    for v in values:
        c = RunConfig(**{**cfg.__dict__, "params": {**cfg.params, param: v}})
        reports.append(run_case(c))
    metric = [_trend_metric(r) for r in reports]
    xs = [abs(complex(parse_number(str(v)))) for v in values]
    order = None
    if len(xs) >= 2 and all(m > 0 for m in metric) and all(x > 0 for x in xs) and len(set(xs)) > 1:
        order = float(np.polyfit(np.log(xs), np.log(metric), 1)[0])
    return reports, {"parameter": param, "values": [str(v) for v in values], "metric": metric, "fitted_order": order}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _g17(x):
    return f"{x:.17g}"


def render(report, fmt="json"):
    d = report.as_dict(__version__) if isinstance(report, ResidualReport) else report
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", "equation", "components", "max_abs_residual", "mean_abs_residual", "samples", "exact", "pass"])
        for e in d["equations"]:
            w.writerow([
                d["case"], e["name"], e["components"], _g17(e["max_abs_residual"]),
                _g17(e["mean_abs_residual"]), e["samples"], str(e["exact"]).lower(), str(d["pass"]).lower(),
            ])
        return buf.getvalue()
    if fmt == "table":
        rows = [("equation", "comp", "max |res|", "mean |res|", "samples")]
        for e in d["equations"]:
            mx = "exact" if e["exact"] else f"{e['max_abs_residual']:.3e}"
            mn = "exact" if e["exact"] else f"{e['mean_abs_residual']:.3e}"
            rows.append((e["name"], str(e["components"]), mx, mn, str(e["samples"])))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = [f"case {d['case']}  seed {d['seed']}  tol {d.get('tolerance')}"]
        for r in rows:
            lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(r)))
        lines.append("PASS" if d["pass"] else "FAIL")
        return "\n".join(lines) + "\n"
    raise ParameterError(f"unknown format {fmt!r}")


def _render_sweep(reports, trend, fmt):
    if fmt == "json":
        d = {
            "sweep": trend,
            "reports": [r.as_dict(__version__) for r in reports],
            "pass": all(r.passed for r in reports),
            "version": __version__,
        }
        return json.dumps(d, indent=2) + "\n"
    parts = [render(r, fmt) for r in reports]
    if fmt == "csv":
        head, *rest = parts
        parts = [head] + ["".join(p.splitlines(True)[1:]) for p in rest]
        return "".join(parts)
    summary = f"sweep {trend['parameter']}: metric {['%.3e' % m for m in trend['metric']]}"
    if trend["fitted_order"] is not None:
        summary += f", fitted order {trend['fitted_order']:.3f}"
    return "".join(parts) + summary + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parse_interval(text):
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise InvalidBox(f"bad interval {text!r}; expected MIN:MAX") from None


def parse_box(text, case):
    """``MIN:MAX`` for every coordinate, or one interval per coordinate."""
    parts = [_parse_interval(p) for p in text.split(",")]
    if len(parts) == 1:
        return {"*": parts[0]}
    coords = {
        "witten-classical": _WITTEN_COORDS,
        "witten-deformed": _WITTEN_COORDS,
        "hitchin-equivalence": _HITCHIN_COORDS,
    }.get(case, _DH_COORDS)
    if len(parts) != len(coords):
        raise InvalidBox(f"{case} takes {len(coords)} intervals ({', '.join(coords)}), got {len(parts)}")
    return dict(zip(coords, parts))


def _common(p):
    p.add_argument("case")
    for name in PARAMS:
        p.add_argument(f"--{name}", dest=name, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--box", default=None)
    p.add_argument("--pq-box", default=None)
    p.add_argument("--pq-grid", type=int, default=16)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", default=None)


def _build_parser():
    ap = argparse.ArgumentParser(prog="moyalkw", description="Residual verification of Moyal-deformed gauge equations")
    sub = ap.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("verify", help="run one case"))
    sw = sub.add_parser("sweep", help="run one case over several parameter values")
    _common(sw)
    sw.add_argument("--param", required=True, choices=PARAMS)
    sw.add_argument("--values", required=True)
    sub.add_parser("list-cases", help="list the case catalog")
    return ap


def _config(ns):
    params = {k: getattr(ns, k) for k in PARAMS if getattr(ns, k) is not None}
    for k, v in params.items():
        try:
            parse_number(v)
        except ValueError:
            raise ParameterError(f"--{k}: not a number: {v!r}") from None
    cfg = RunConfig(
        case=ns.case,
        params=params,
        samples=ns.samples,
        seed=ns.seed,
        tol=ns.tol,
        box=parse_box(ns.box, ns.case) if ns.box else None,
        pq_box=_parse_interval(ns.pq_box) if ns.pq_box else (-1.0, 1.0),
        pq_grid=ns.pq_grid,
        fmt=ns.format,
    )
    if ns.case not in CASES:
        raise UnknownCase(ns.case)
    if cfg.pq_grid < 1:
        raise ParameterError("--pq-grid must be >= 1")
    return cfg


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


_VALUE_FLAGS = ("--box", "--pq-box", "--values", "--hbar", "--beta", "--r", "--t")


def _join_negative_values(argv):
    # "--box -1:1" would otherwise read "-1:1" as an option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None):
    ap = _build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = ap.parse_args(_join_negative_values(argv))
    if ns.command == "list-cases":
        for name, (_, desc) in CASES.items():
            print(f"{name:22s} {desc}")
        return 0
    try:
        cfg = _config(ns)
        if ns.command == "verify":
            rep = run_case(cfg)
            _emit(render(rep, cfg.fmt), ns.out)
            return 0 if rep.passed else 1
        values = [v.strip() for v in ns.values.split(",") if v.strip()]
        if not values:
            raise ParameterError("--values is empty")
        reports, trend = sweep(cfg, ns.param, values)
        _emit(_render_sweep(reports, trend, cfg.fmt), ns.out)
        return 0 if all(r.passed for r in reports) else 1
    except UnknownCase as e:
        print(f"error: unknown case {e.args[0]!r}; see list-cases", file=sys.stderr)
    except (InvalidBox, ParameterError, UnboundSymbol) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
    except DomainError as e:
        print(f"error: DomainError: {e}", file=sys.stderr)
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
