"""
Command-line interface.

    sis-lab figure 1            # Var q of even SIS along v = -x
    sis-lab inspect sis --param z=-5 --param "u=sqrt(26)" --param v=-5
    sis-lab sweep --config sweep.json --format json

Exit status: 0 on success, 1 on invalid input, 2 on numerical failure.
"""

import argparse
import ast
import cmath
import csv
import io
import json
import math
import operator
import os
import re
import sys
from contextlib import redirect_stderr
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analysis, fock, states
from .errors import InadmissibleParams, SisLabError

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2


class ValidationError(ValueError):
    """Bad command-line input, reported with exit status 1."""


# -- safe parameter expressions -----------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_FUNCS = {
    "sqrt": cmath.sqrt,
    "exp": cmath.exp,
    "log": cmath.log,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "tanh": cmath.tanh,
    "abs": abs,
    "conj": lambda x: complex(x).conjugate(),
}
_CONSTS = {"pi": math.pi, "e": math.e, "i": 1j, "j": 1j}


def evaluate(expr, variables=None):
    """Evaluate an arithmetic expression such as ``-5``, ``sqrt(26)``,
    ``1+2j`` or ``-x`` to a complex number, without ``eval``."""
    if isinstance(expr, (int, float, complex)):
        return complex(expr)
    if not isinstance(expr, str):
        raise ValidationError(f"cannot interpret {expr!r} as a number")
    env = dict(_CONSTS)
    env.update(variables or {})

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            return complex(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](walk(node.operand))
        if isinstance(node, ast.Name) and node.id in env:
            return complex(env[node.id])
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return complex(_FUNCS[node.func.id](walk(node.args[0])))
        raise ValidationError(f"unsupported expression {expr!r}")

    try:
        # bare root signs bind to the following number or name: √26 -> sqrt(26)
        text = re.sub(r"√\s*([\w.]+)", r"sqrt(\1)", expr).replace("√", "sqrt")
        tree = ast.parse(text, mode="eval")
        return walk(tree)
    except (SyntaxError, ZeroDivisionError, OverflowError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"cannot evaluate {expr!r}: {exc}") from None


def _real(x, name):
    x = complex(x)
    if x.imag != 0:
        raise ValidationError(f"{name} must be real, got {x}")
    return x.real


# -- state families -------------------------------------------------------------

@dataclass
class Built:
    state: fock.FockVector
    params: states.SisParams = None


def _sis_params(p):
    v = p.get("v", 0j)
    u = p.get("u", math.sqrt(1 + abs(v) ** 2))
    return states.SisParams(p.get("z", 0j), u, v)


def _parity_of(p, default="even"):
    par = p.get("parity", default)
    if isinstance(par, complex):
        raise ValidationError("parity must be 'even' or 'odd'")
    return par


def _build(family, p, n_max, tol):
    if family == "sis":
        sp_ = _sis_params(p)
        return Built(states.sis(sp_, _parity_of(p), n_max=n_max, tol=tol), sp_)
    if family == "sis_combination":
        sp_ = _sis_params(p)
        c_plus = p.get("c_plus", 1)
        c_minus = p.get("c_minus", 0)
        return Built(states.sis_combination(sp_, c_plus, c_minus, n_max=n_max, tol=tol), sp_)
    if family == "kummer_state":
        sp_ = _sis_params(p)
        return Built(states.kummer_state(sp_, _parity_of(p), n_max=n_max))
    if family == "coherent":
        return Built(states.coherent(p.get("alpha", 0j), n_max=n_max, tol=tol))
    if family in ("even_cs", "odd_cs"):
        return Built(states.even_odd_cs(p.get("alpha", 0j), family[:-3], n_max=n_max, tol=tol))
    if family == "yurke_stoler":
        return Built(states.yurke_stoler(p.get("alpha", 0j), n_max=n_max, tol=tol))
    if family == "squeezed_fock":
        n = _real(p.get("n", 0), "n")
        if n < 0 or n != int(n):
            raise ValidationError("n must be a nonnegative integer")
        return Built(states.squeeze_fock(p.get("zeta", 0j), int(n), n_max=n_max))
    if family == "squeezed_even_cs":
        return Built(states.squeezed_even_cs(p.get("zeta", 0j), p.get("z", 0j), n_max=n_max))
    if family == "perelomov_vacuum":
        return Built(states.perelomov_vacuum(p.get("xi", 0j), n_max=n_max, tol=tol))
    if family == "fock":
        n = _real(p.get("n", 0), "n")
        if n < 0 or n != int(n):
            raise ValidationError("n must be a nonnegative integer")
        return Built(fock.FockVector.basis(int(n), n_max))
    raise ValidationError(f"unknown state family {family!r}; known: {', '.join(FAMILIES)}")


FAMILIES = {
    "sis": ("z", "u", "v", "parity"),
    "sis_combination": ("z", "u", "v", "c_plus", "c_minus"),
    "kummer_state": ("z", "u", "v", "parity"),
    "coherent": ("alpha",),
    "even_cs": ("alpha",),
    "odd_cs": ("alpha",),
    "yurke_stoler": ("alpha",),
    "squeezed_fock": ("zeta", "n"),
    "squeezed_even_cs": ("zeta", "z"),
    "perelomov_vacuum": ("xi",),
    "fock": ("n",),
}


def _resolve_params(family, raw, variables=None):
    if family not in FAMILIES:
        raise ValidationError(f"unknown state family {family!r}; known: {', '.join(FAMILIES)}")
    out = {}
    for key, val in raw.items():
        if key not in FAMILIES[family]:
            raise ValidationError(f"family {family!r} takes {FAMILIES[family]}, got {key!r}")
        if key == "parity":
            if val not in ("even", "odd"):
                raise ValidationError("parity must be 'even' or 'odd'")
            out[key] = val
        else:
            out[key] = evaluate(val, variables)
    return out


# -- one row ------------------------------------------------------------------

def audit(report):
    """Diagnostic string when a report breaks the Schrodinger inequality, else None."""
    floor = analysis.schrodinger_floor(report)
    bad = []
    for name in ("schrodinger_residual_qp", "schrodinger_residual_sa"):
        val = getattr(report, name)
        if val is not None and val < floor:
            bad.append(f"{name}={val:.3e} < {floor:.1e}")
    return "; ".join(bad) or None


@dataclass
class Row:
    values: dict
    error: str = None
    extras: dict = field(default_factory=dict)


def evaluate_state(family, params, n_max, tol):
    """MomentReport of one state plus bookkeeping; failures become a Row error."""
    try:
        built = _build(family, params, n_max, tol)
        rep = analysis.moment_report(built.state)
    except (SisLabError, ArithmeticError, ValueError) as exc:
        if isinstance(exc, (ValidationError, InadmissibleParams)):
            raise
        return Row({}, error=f"{type(exc).__name__}: {exc}")
    extras = {"n_max": built.state.n_max, "tail_norm": built.state.tail_norm}
    if built.params is not None and family == "sis":
        extras["eigen_residual"] = states.eigen_residual(built.params, built.state)
    return Row(rep.to_dict(), error=audit(rep), extras=extras)


# -- output ---------------------------------------------------------------------

def fmt(value, name=""):
    if value is None:
        return "undefined" if name.endswith("mandel_q") else ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        if value.imag == 0:
            return "%.15g" % value.real
        return "%.15g%+.15gj" % (value.real, value.imag)
    if isinstance(value, (float, np.floating)):
        return "%.15g" % value
    return str(value)


def jsonable(value):
    if isinstance(value, complex):
        return value.real if value.imag == 0 else {"re": value.real, "im": value.imag}
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_table(columns, rows, out, form):
    if form == "json":
        json.dump([{c: jsonable(r.get(c)) for c in columns} for r in rows], out, indent=1)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r.get(c), c) for c in columns])


def _map(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _report_failures(labels_rows, err):
    failed = 0
    for label, row in labels_rows:
        if row.error:
            failed += 1
            err.write(f"row {label}: {row.error}\n")
    return failed


# -- figures --------------------------------------------------------------------

FIG12_Z = (-1.0, -2.0, -5.0)


def figure_grid(fig, start=None, stop=None, points=None):
    if fig in (1, 2):
        lo, hi, n = 0.01, 10.0, 200
    elif fig == 4:
        lo, hi, n = 0.0, 1.0, 101
    else:
        raise ValidationError("figure 3 has no continuous grid")
    lo = lo if start is None else start
    hi = hi if stop is None else stop
    n = n if points is None else points
    if n < 2 or not lo < hi:
        raise ValidationError(f"invalid grid: start={lo}, stop={hi}, points={n}")
    return np.linspace(lo, hi, n)


def figure_rows(fig, n_max=None, tol=states.TAIL_TOL, threads=1, grid=None, err=sys.stderr):
    """(columns, rows, failures) for figure ``fig``."""
    if fig in (1, 2):
        xs = figure_grid(fig) if grid is None else grid
        key = "var_q" if fig == 1 else "var_Ysa"
        tasks = [(x, z) for x in xs for z in FIG12_Z]

        def one(task):
            x, z = task
            return evaluate_state("sis", {"z": complex(z), "v": complex(-x)}, n_max, tol)

        results = _map(one, tasks, threads)
        rows, labelled = [], []
        for i, x in enumerate(xs):
            row = {"x": float(x)}
            for j, name in enumerate(("curve_a", "curve_b", "curve_c")):
                res = results[3 * i + j]
                labelled.append((f"x={x:.6g} z={FIG12_Z[j]:g}", res))
                row[name] = res.values.get(key, math.nan) if not res.error else math.nan
            rows.append(row)
        return ["x", "curve_a", "curve_b", "curve_c"], rows, _report_failures(labelled, err)

    if fig == 3:
        pa = states.SisParams(-5, math.sqrt(37), -6)
        pb = states.SisParams(-5, math.sqrt(1.04), 0.2)
        fa = states.sis(pa, "even", n_max=n_max, tol=tol).probabilities()
        fb = states.sis(pb, "even", n_max=n_max, tol=tol).probabilities()
        m = max(fa.size, fb.size)
        fa, fb = np.pad(fa, (0, m - fa.size)), np.pad(fb, (0, m - fb.size))
        rest = np.cumsum((fa + fb)[::-1])[::-1]
        keep = int(np.argmax(rest < 1e-17)) if np.any(rest < 1e-17) else m
        keep = max(keep, 2)
        rows = [{"n": n, "f_a": float(fa[n]), "f_b": float(fb[n])} for n in range(keep)]
        return ["n", "f_a", "f_b"], rows, 0

    if fig == 4:
        rs = figure_grid(4) if grid is None else grid

        def one(r):
            a = evaluate_state("squeezed_even_cs", {"zeta": complex(-r), "z": -4 + 0j}, n_max, tol)
            b = evaluate_state("squeezed_even_cs", {"zeta": complex(0.3 * r), "z": -0.4 + 0j}, n_max, tol)
            return a, b

        results = _map(one, rs, threads)
        rows, labelled = [], []
        for r, (a, b) in zip(rs, results):
            labelled += [(f"r={r:.6g} (a)", a), (f"r={r:.6g} (b)", b)]
            rows.append({
                "r": float(r),
                "f_a": 2 * a.values["var_q"] if not a.error else math.nan,
                "f_b": b.values["var_Xsa"] if not b.error else math.nan,
            })
        return ["r", "f_a", "f_b"], rows, _report_failures(labelled, err)

    raise ValidationError(f"figure must be 1, 2, 3 or 4, got {fig}")


# -- sweep ----------------------------------------------------------------------

@dataclass
class SweepConfig:
    state_family: str
    fixed_params: dict
    sweep_var: str
    range: tuple
    outputs: list
    n_max_override: int = None
    tolerance_override: float = None

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise ValidationError("sweep config must be a JSON object")
        allowed = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - allowed
        if unknown:
            raise ValidationError(f"unknown sweep config keys: {sorted(unknown)}")
        missing = {"state_family", "sweep_var", "range", "outputs"} - set(d)
        if missing:
            raise ValidationError(f"sweep config lacks {sorted(missing)}")
        cfg = cls(
            state_family=d["state_family"],
            fixed_params=dict(d.get("fixed_params") or {}),
            sweep_var=d["sweep_var"],
            range=tuple(d["range"]),
            outputs=list(d["outputs"]),
            n_max_override=d.get("n_max_override"),
            tolerance_override=d.get("tolerance_override"),
        )
        cfg.validate()
        return cfg

    def validate(self):
        if self.state_family not in FAMILIES:
            raise ValidationError(f"unknown state family {self.state_family!r}")
        if len(self.range) != 3:
            raise ValidationError("range must be [start, stop, steps]")
        start, stop, steps = self.range
        if not all(isinstance(x, (int, float)) for x in (start, stop, steps)):
            raise ValidationError("range entries must be numbers")
        if steps < 2 or int(steps) != steps:
            raise ValidationError(f"steps must be an integer >= 2, got {steps}")
        if not start < stop:
            raise ValidationError(f"empty range: start={start} is not below stop={stop}")
        if not self.outputs:
            raise ValidationError("outputs must name at least one MomentReport field")
        bad = [o for o in self.outputs if o not in analysis.REPORT_FIELDS]
        if bad:
            raise ValidationError(f"not MomentReport fields: {bad}")
        if not self.sweep_var.isidentifier() or self.sweep_var in _CONSTS or self.sweep_var in _FUNCS:
            raise ValidationError(f"invalid sweep variable name {self.sweep_var!r}")
        if self.n_max_override is not None and (
                not isinstance(self.n_max_override, int) or self.n_max_override < 2 * fock.GUARD_BAND):
            raise ValidationError("n_max_override must be an integer >= 16")
        if self.tolerance_override is not None and not (
                isinstance(self.tolerance_override, (int, float)) and self.tolerance_override > 0):
            raise ValidationError("tolerance_override must be a positive number")
        # resolve once so that bad expressions fail before any computation
        self.params_at(float(start))

    def grid(self):
        start, stop, steps = self.range
        return np.linspace(start, stop, int(steps))

    def params_at(self, x):
        raw = dict(self.fixed_params)
        if self.sweep_var in FAMILIES[self.state_family] and self.sweep_var not in raw:
            raw[self.sweep_var] = self.sweep_var
        return _resolve_params(self.state_family, raw, {self.sweep_var: x})


def sweep_rows(cfg, n_max=None, tol=None, threads=1, err=sys.stderr):
    n_max = cfg.n_max_override if cfg.n_max_override is not None else n_max
    tol = cfg.tolerance_override if cfg.tolerance_override is not None else tol
    tol = states.TAIL_TOL if tol is None else tol
    xs = cfg.grid()

    def one(x):
        return evaluate_state(cfg.state_family, cfg.params_at(float(x)), n_max, tol)

    results = _map(one, xs, threads)
    rows, labelled = [], []
    for x, res in zip(xs, results):
        labelled.append((f"{cfg.sweep_var}={x:.6g}", res))
        row = {cfg.sweep_var: float(x)}
        for o in cfg.outputs:
            row[o] = res.values.get(o, math.nan) if not res.error else math.nan
        rows.append(row)
    return [cfg.sweep_var] + cfg.outputs, rows, _report_failures(labelled, err)


# -- entry point ----------------------------------------------------------------

def _parse_kv(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ValidationError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sis-lab",
        description="Squared-amplitude Schrodinger intelligent states: figures, inspection, sweeps.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int, default=None,
                        help="starting truncation (default: SIS_LAB_NMAX or 256)")
    common.add_argument("--tol", type=float, default=None,
                        help="relative guard-band mass accepted by state constructors")
    common.add_argument("--out", default=None, help="output file (default: standard output)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for grid rows (default: all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", parents=[common], help="data behind one of the four figures")
    fig.add_argument("id", type=int, choices=(1, 2, 3, 4))
    fig.add_argument("--start", type=float, default=None, help="grid start (figures 1, 2, 4)")
    fig.add_argument("--stop", type=float, default=None, help="grid stop (figures 1, 2, 4)")
    fig.add_argument("--points", type=int, default=None, help="grid size (figures 1, 2, 4)")

    ins = sub.add_parser("inspect", parents=[common], help="moment report of a single state")
    ins.add_argument("family", help=f"one of: {', '.join(FAMILIES)}")
    ins.add_argument("--param", action="append", metavar="KEY=VALUE",
                     help="state parameter, e.g. z=-5 or 'u=sqrt(26)'; repeatable")

    sw = sub.add_parser("sweep", parents=[common], help="moment reports along a parameter grid")
    sw.add_argument("--config", required=True, help="JSON sweep configuration")
    return parser


def run(args, out, err):
    if args.n_max is not None and args.n_max < 2 * fock.GUARD_BAND:
        raise ValidationError(f"--n-max must be at least {2 * fock.GUARD_BAND}")
    if args.tol is not None and not args.tol > 0:
        raise ValidationError("--tol must be positive")
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    if threads < 1:
        raise ValidationError("--threads must be positive")
    tol = states.TAIL_TOL if args.tol is None else args.tol

    if args.command == "figure":
        grid = None
        if args.id in (1, 2, 4) and (args.start, args.stop, args.points) != (None, None, None):
            grid = figure_grid(args.id, args.start, args.stop, args.points)
        cols, rows, failed = figure_rows(args.id, args.n_max, tol, threads, grid, err)
        write_table(cols, rows, out, args.format or "csv")
        return EXIT_NUMERIC if failed else EXIT_OK

    if args.command == "inspect":
        params = _resolve_params(args.family, _parse_kv(args.param))
        row = evaluate_state(args.family, params, args.n_max, tol)
        if row.error and not row.values:
            err.write(f"{args.family}: {row.error}\n")
            return EXIT_NUMERIC
        record = dict(row.values)
        record.update(row.extras)
        record["family"] = args.family
        record["params"] = {k: jsonable(v) for k, v in params.items()}
        if (args.format or "json") == "json":
            json.dump({k: jsonable(v) for k, v in record.items()}, out, indent=1)
            out.write("\n")
        else:
            cols = [c for c in record if c != "params"]
            write_table(cols, [record], out, "csv")
        if row.error:
            err.write(f"{args.family}: {row.error}\n")
            return EXIT_NUMERIC
        return EXIT_OK

    if args.command == "sweep":
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read sweep config: {exc}") from None
        cfg = SweepConfig.from_dict(raw)
        cols, rows, failed = sweep_rows(cfg, args.n_max, args.tol, threads, err)
        write_table(cols, rows, out, args.format or "csv")
        return EXIT_NUMERIC if failed else EXIT_OK
    raise ValidationError(f"unknown command {args.command!r}")


def main(argv=None, out=None, err=None):
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        with redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    buf = io.StringIO()
    try:
        status = run(args, buf, err)
    except (ValidationError, InadmissibleParams) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except (SisLabError, ArithmeticError) as exc:
        err.write(f"numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        try:
            (out or sys.stdout).write(text)
        except BrokenPipeError:
            # downstream closed early (e.g. piped into head); not an error here
            sys.stderr.close()
    return status


if __name__ == "__main__":
    sys.exit(main())
