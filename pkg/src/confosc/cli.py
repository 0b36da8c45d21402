"""Command-line front end: ``confosc <command> [flags]``.

Commands: spectrum, converge, pt, limits, figure, table. Output is CSV (the
default) or JSON; every numeric cell is a decimal string. Exit status is 0
on success, 1 on a computational failure or golden mismatch, 2 on a usage
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from decimal import Decimal, localcontext
from fractions import Fraction

import mpmath

from . import __version__
from . import tables
from .basis import BasisKind, BasisSpec
from .eigensolver import convergence_study, sector_spectrum, spectrum
from .model import InvalidInput, LevelLabel, ModelParams, as_rational
from .perturbation import pt2_sum_over_states, rs_expansion
from .policy import PolicyKind, ScalarPolicy
from .reference import large_box_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x, digits: int) -> str:
    """``x`` as a decimal string with ``digits`` significant digits.

    Integers and terminating rationals (grid coordinates) are written exactly.
    """
    if isinstance(x, str):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, Fraction):
        exact = _terminating(x)
        if exact is not None:
            return exact
        with mpmath.workdps(digits + 5):
            x = mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, mpmath.mpf):
        with mpmath.workdps(digits + 5):
            s = mpmath.nstr(x, digits, strip_zeros=False)
    else:
        s = f"{float(x):#.{digits}g}"
    s = re.sub(r"e([+-])0*(\d)", r"e\1\2", s).replace("e+", "e")
    return s[:-1] if s.endswith(".") else s


def _terminating(x: Fraction) -> str | None:
    d, k = x.denominator, 0
    while d % 10 == 0 or d % 2 == 0 or d % 5 == 0:
        for f in (10, 2, 5):
            if d % f == 0:
                d //= f
                break
        k += 1
    if d != 1 or k > 30:
        return None
    with localcontext() as ctx:
        ctx.prec = 60
        text = format(Decimal(x.numerator) / Decimal(x.denominator), "f")
    return text.rstrip("0").rstrip(".") if "." in text else text


# ---------------------------------------------------------------- parsing


def parse_number_list(text: str) -> list[Fraction]:
    """Comma list of values or ``start:stop:step`` ranges (inclusive)."""
    out: list[Fraction] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise UsageError(f"range {item!r} must be start:stop:step")
            a, b, h = (Fraction(p) for p in parts)
            if h <= 0:
                raise UsageError("range step must be positive")
            x = a
            while x <= b:
                out.append(x)
                x += h
        else:
            out.append(Fraction(item))
    if not out:
        raise UsageError("empty value list")
    return out


def parse_int_range(text: str) -> list[int]:
    """``a..b`` or a comma list of integers."""
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",") if t.strip()]


def read_config(path: str) -> list[str]:
    """key=value lines -> equivalent flags (placed before command-line flags)."""
    argv: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line {raw.strip()!r} is not key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                argv.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                argv += [flag, value]
    return argv


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--digits", type=int, default=10, help="significant digits in the output (default 10)")
    p.add_argument("--policy-digits", type=int, default=None,
                   help="working precision override (>= 15 decimal digits)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    p.add_argument("--golden", action="store_true", help="compare with checked-in golden values; no timestamp")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for grid commands")
    p.add_argument("--config", default=None, help="file of key=value lines mirroring the flags")


def _model(p: argparse.ArgumentParser, lam: bool = True, n: bool = True) -> None:
    p.add_argument("--r0", default="1")
    if lam:
        p.add_argument("--lambda", dest="lam", default="0")
    p.add_argument("--basis", choices=("poly", "gauss", "auto"), default="auto")
    if n:
        p.add_argument("--n", type=int, default=None, help="basis order (default: radius-dependent rule)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confosc", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"confosc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="lowest levels of both parity sectors")
    _model(p)
    p.add_argument("--lambda-range", default=None, help="e.g. 0.05,0.5:6:0.5 (overrides --lambda)")
    p.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    p.add_argument("--count", type=int, default=5)
    _common(p)

    p = sub.add_parser("converge", help="eigenvalues against basis order")
    _model(p, n=False)
    p.add_argument("--parity", choices=("even", "odd", "both"), default="even")
    p.add_argument("--n-range", default="2..10")
    p.add_argument("--count", type=int, default=4)
    _common(p)

    p = sub.add_parser("pt", help="perturbation coefficients")
    _model(p, lam=False)
    p.add_argument("--levels", type=int, default=5, help="number of lowest levels")
    p.add_argument("--label", action="append", default=None, help="n,nu,e|o (repeatable)")
    p.add_argument("--ground", action="store_true", help="ground level only")
    p.add_argument("--order", type=int, default=2, help="highest even order 2J")
    p.add_argument("--grid", default=None, help="r0 values, e.g. r0=1..5 or 1,2,3")
    p.add_argument("--terms", type=int, default=None, help="sum-over-states terms (second order)")
    p.add_argument("--show-partials", action="store_true", help="list the sum-over-states terms")
    _common(p)

    p = sub.add_parser("limits", help="small- and large-box limit checks")
    p.add_argument("--kind", choices=("small", "large"), default="small")
    p.add_argument("--r0", default=None, help="small: box radius (default 0.01); large: list")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--lambda-range", default=None)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--n", type=int, default=None)
    _common(p)

    p = sub.add_parser("figure", help="RRM levels and second-order PT curves on a lam grid")
    _model(p, lam=False)
    p.add_argument("--lambda-range", default="0,0.05,0.5:6:0.5")
    p.add_argument("--count", type=int, default=5)
    _common(p)

    p = sub.add_parser("table", help="reproduce a benchmark table by id (1-7)")
    p.add_argument("--id", type=int, required=True, choices=range(1, 8), metavar="{1..7}")
    _common(p)
    return parser


# ---------------------------------------------------------------- results


@dataclass
class Check:
    name: str
    value: object
    expected: str
    tol: float
    relative: bool = True

    def ok(self) -> bool:
        # compared in extended precision so 30-digit goldens are really checked
        with mpmath.workdps(80):
            e = mpmath.mpf(self.expected)
            err = abs(mpmath.mpf(self.value) - e)
            return bool(err <= self.tol * (abs(e) if self.relative else 1))


@dataclass
class Result:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    basis: str = ""
    policy: ScalarPolicy | None = None


def _policy(args) -> ScalarPolicy:
    if args.policy_digits is not None:
        if args.policy_digits < 15:
            raise UsageError("--policy-digits must be >= 15")
        return ScalarPolicy.decimal(args.policy_digits)
    if args.digits < 1:
        raise UsageError("--digits must be >= 1")
    return tables.output_policy(args.digits)


def _kind(args, r0) -> BasisKind:
    return tables.auto_kind(r0) if args.basis == "auto" else BasisKind.parse(args.basis)


def _pmap(fn, items, jobs: int):
    """Order-preserving map, optionally over worker processes."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _spectrum_job(task):
    r0, lam, kind, N, parity, policy, count = task
    params = ModelParams(r0, lam)
    if parity == "both":
        sp = spectrum(params, kind, N, policy, count)
        return list(sp.values), [str(lv.label) for lv in sp.levels]
    sp = sector_spectrum(params, kind, N, parity, policy, count)
    return list(sp.values), [str(lab) for lab in sp.labels]


def cmd_spectrum(args) -> Result:
    r0 = as_rational(args.r0)
    kind = _kind(args, r0)
    N = args.n if args.n is not None else tables.spectrum_order(kind, r0)
    lams = parse_number_list(args.lambda_range) if args.lambda_range else [as_rational(args.lam)]
    policy = _policy(args)
    size = sum(BasisSpec(kind, p, N).size for p in ("even", "odd") if args.parity in (p, "both") and (p == "even" or N >= 1))
    if not 1 <= args.count <= size:
        raise UsageError(f"--count must be 1..{size} for this basis")
    tasks = [(r0, lam, kind, N, args.parity, policy, args.count) for lam in lams]
    out = _pmap(_spectrum_job, tasks, args.jobs)
    k = min(len(v) for v, _ in out) if out else 0
    res = Result(["r0", "lambda", "N"] + [f"E{i + 1}" for i in range(k)] + [f"label{i + 1}" for i in range(k)],
                 basis=kind.value, policy=policy)
    for lam, (vals, labs) in zip(lams, out):
        res.rows.append([r0, lam, N] + vals[:k] + labs[:k])
    if args.golden:
        for row in tables.golden_values()["spectrum"]["rows"]:
            if as_rational(row["r0"]) == r0 and as_rational(row["lambda"]) in lams:
                vals = out[lams.index(as_rational(row["lambda"]))][0]
                for i, (v, e) in enumerate(zip(vals, row["values"])):
                    res.checks.append(Check(f"r0={r0} lambda={row['lambda']} E{i + 1}", v, e, 5e-9))
    return res


def _golden_convergence(table: str, r0, lam, parity: str) -> dict | None:
    t = tables.golden_values()[table]
    if as_rational(t["r0"]) == r0 and as_rational(t["lambda"]) == lam and t["parity"] == parity:
        return {row["N"]: row["values"] for row in t["rows"]}
    return None


def cmd_converge(args) -> Result:
    r0, lam = as_rational(args.r0), as_rational(args.lam)
    kind = _kind(args, r0)
    Ns = parse_int_range(args.n_range)
    policy = _policy(args)
    study = convergence_study(ModelParams(r0, lam), kind, Ns, policy, args.count, args.parity)
    k = args.count
    res = Result(["source", "N"] + [f"E{i + 1}" for i in range(k)] + [f"digits{i + 1}" for i in range(k)],
                 basis=kind.value, policy=policy)
    agree = dict(study.agreement)
    for N, vals in study.rows:
        digs = agree.get(N, [float("nan")] * len(vals))
        res.rows.append(["rrm", N] + list(vals) + [("inf" if d == float("inf") else f"{d:.1f}") for d in digs])
    if args.golden:
        ref = _golden_convergence("even_convergence", r0, lam, args.parity) or _golden_convergence("odd_convergence", r0, lam, args.parity)
        if ref:
            for N, vals in study.rows:
                if N in ref:
                    res.rows.append(["golden", N] + list(ref[N]) + [""] * k)
                    for i, (v, e) in enumerate(zip(vals, ref[N])):
                        res.checks.append(Check(f"N={N} E{i + 1}", v, e, 5e-9))
    return res


def _pt_labels(args, r0) -> list[LevelLabel] | None:
    if args.ground:
        return [LevelLabel(0, 0)]
    if args.label:
        return [LevelLabel.parse(s) for s in args.label]
    return None


def _pt_policy(args) -> ScalarPolicy:
    policy = _policy(args)
    if policy.kind is PolicyKind.DOUBLE:
        policy = ScalarPolicy.decimal(20)
    return policy


def _pt_job(task):
    r0, labels, kind, N, policy, J, levels = task
    if labels is None:
        exps = tables.lowest_pt_levels(r0, levels, kind, N, policy, J)
    else:
        digits = policy.digits
        n = N or tables.pt_order(kind, r0, digits)
        exps = [rs_expansion(r0, lab, BasisSpec(kind, lab.parity, n), policy, J) for lab in labels]
    return [(e.label, list(e.coefficients)) for e in exps]


def cmd_pt(args) -> Result:
    if args.order < 2 or args.order % 2:
        raise UsageError("--order must be an even number >= 2")
    J = args.order // 2
    policy = _pt_policy(args)
    if args.terms is not None or args.show_partials:
        return _pt_partials(args, policy)
    if args.grid:
        text = args.grid.split("=", 1)[1] if args.grid.startswith("r0=") else args.grid
        r0s = [as_rational(x) for x in parse_int_range(text)] if ".." in text else parse_number_list(text)
        labels = _pt_labels(args, r0s[0]) or list(tables.LIMIT_LABELS)
    else:
        r0s = [as_rational(args.r0)]
        labels = _pt_labels(args, r0s[0])
    kinds = {r0: (BasisKind.GAUSSIAN if args.grid and args.basis == "auto" else _kind(args, r0)) for r0 in r0s}
    tasks = [(r0, labels, kinds[r0], args.n, policy, J, args.levels) for r0 in r0s]
    out = _pmap(_pt_job, tasks, args.jobs)
    res = Result(["r0", "label"] + [f"E({2 * k})" for k in range(J + 1)],
                 basis=",".join(sorted({k.value for k in kinds.values()})), policy=policy)
    for r0, rows in zip(r0s, out):
        for lab, coeffs in rows:
            res.rows.append([r0, lab] + coeffs)
    if args.golden:
        res.checks += _pt_golden(res.rows, policy)
    for row in res.rows:
        row[1] = str(row[1])
    return res


def _pt_golden(rows, policy: ScalarPolicy) -> list[Check]:
    checks = []
    # 28 significant digits need Decimal(50); coarser policies are held to what they carry
    tol6 = max(1e-27, 10.0 ** (3 - _policy_digits(policy)))
    coef_ref = tables.golden_values()["pt_coefficients"]["rows"]
    limit_ref = tables.golden_values()["pt_limits"]
    r1 = [r for r in rows if r[0] == 1]
    for r in rows:
        lab = r[1]
        text = f"{lab.n},{lab.nu},{lab.parity.tag}"
        r0 = str(r[0])
        if text in limit_ref["E0"] and r0 in limit_ref["E0"][text]:
            checks.append(Check(f"r0={r0} {r[1]} E(0)", r[2], limit_ref["E0"][text][r0], 5e-8, relative=False))
            if len(r) > 3:
                checks.append(Check(f"r0={r0} {r[1]} E(2)", r[3], limit_ref["E2"][text][r0], 5e-8, relative=False))
    if len(r1) == len(coef_ref) and all(r[1] == LevelLabel.parse(g["label"]) for r, g in zip(r1, coef_ref)):
        for r, g in zip(r1, coef_ref):
            checks.append(Check(f"{r[1]} E(0)", r[2], g["E0"], tol6))
            checks.append(Check(f"{r[1]} E(2)", r[3], g["E2"], tol6))
    return checks


def _pt_partials(args, policy) -> Result:
    r0 = as_rational(args.r0)
    kind = _kind(args, r0)
    labels = _pt_labels(args, r0) or [LevelLabel(0, 0)]
    res = Result(["r0", "label", "term", "value"], basis=kind.value, policy=policy)
    for lab in labels:
        N = args.n or tables.pt_order(kind, r0, policy.digits)
        total, terms = pt2_sum_over_states(r0, lab, BasisSpec(kind, lab.parity, N), policy, args.terms)
        if args.show_partials:
            for i, t in enumerate(terms):
                res.rows.append([r0, str(lab), str(i + 1), t])
        res.rows.append([r0, str(lab), "sum", total])
        if args.golden and r0 == 1 and lab == LevelLabel(0, 0) and args.terms == 3:
            g = tables.golden_values()["sos_partials"]
            for i, (t, e) in enumerate(zip(terms, g["terms"])):
                res.checks.append(Check(f"term {i + 1}", t, e, _last_digit_unit(e), relative=False))
            res.checks.append(Check("sum", total, g["sum"], _last_digit_unit(g["sum"]), relative=False))
    return res


def _last_digit_unit(text: str) -> float:
    """One unit in the last printed digit of a decimal string."""
    mant, _, exp = text.lower().partition("e")
    frac = mant.split(".")[1] if "." in mant else ""
    return 10.0 ** (-len(frac) + (int(exp) if exp else 0))


def cmd_limits(args) -> Result:
    policy = _policy(args)
    if args.kind == "small":
        r0 = as_rational(args.r0 or "0.01")
        lam = as_rational(args.lam or "0.05")
        rows = tables.small_box_check(r0, args.count, policy, lam, args.n or 10)
        res = Result(["r0", "label", "r0^2E", "E_PB", "deviation"], basis="poly", policy=policy)
        for r in rows:
            res.rows.append([r0, str(r.label), r.scaled_energy, r.pib, r.deviation])
        if args.golden and r0 == Fraction(1, 100):
            for r, g in zip(rows, tables.golden_values()["small_box"]["rows"]):
                res.checks.append(Check(f"{r.label} r0^2E", r.scaled_energy, g["r0sqE"], 5e-9))
                res.checks.append(Check(f"{r.label} vs E_PB", r.scaled_energy, f"{r.pib!r}", 2e-8))
        return res
    r0s = parse_number_list(args.r0) if args.r0 else [as_rational(x) for x in tables.LARGE_BOX_R0]
    text = args.lambda_range or args.lam
    lams = parse_number_list(text) if text else [as_rational(x) for x in tables.LARGE_BOX_LAMBDAS]
    rule = (lambda r0: args.n) if args.n else large_box_order
    tasks = [([r0], lams, policy) for r0 in r0s]
    parts = _pmap(_large_job, [(t, rule) for t in tasks], args.jobs) if not args.n else [
        tables.large_box_check([r0], lams, policy, rule) for r0 in r0s]
    res = Result(["r0", "N"] + [f"lambda={fmt(l, 6)}" for l in lams], basis="gauss", policy=policy)
    for r0, part in zip(r0s, parts):
        res.rows.append([r0, part.orders[0]] + list(part.values[0]))
    res.rows.append(["inf", ""] + list(parts[0].asymptote))
    if args.golden:
        g = tables.golden_values()["large_box"]
        for r0, part in zip(r0s, parts):
            for row in g["rows"]:
                if as_rational(row["r0"]) == r0:
                    for lam, v in zip(lams, part.values[0]):
                        key = str(lam.numerator) if lam.denominator == 1 else None
                        if key in g["lambdas"]:
                            e = row["values"][g["lambdas"].index(key)]
                            res.checks.append(Check(f"r0={r0} lambda={key}", v, e, 1e-7))
        for lam, a in zip(lams, parts[0].asymptote):
            if a != 1 - lam * lam / 2:
                res.checks.append(Check(f"inf lambda={lam}", a, str(float(1 - lam * lam / 2)), 0.0))
    return res


def _large_job(task):
    (r0s, lams, policy), rule = task
    return tables.large_box_check(r0s, lams, policy, rule)


def cmd_figure(args) -> Result:
    r0 = as_rational(args.r0)
    kind = _kind(args, r0)
    lams = parse_number_list(args.lambda_range)
    policy = _policy(args)
    rows = tables.figure_series(r0, lams, args.count, kind, args.n, policy)
    k = args.count
    labels = [str(x) for x in rows[0].labels] if rows else []
    res = Result(["lambda"] + [f"A_{lab}" for lab in labels] + [f"B_{lab}" for lab in labels],
                 basis=kind.value, policy=policy)
    for r in rows:
        res.rows.append([r.lam] + list(r.rrm[:k]) + list(r.pt2[:k]))
    if args.golden and r0 == 1:
        for row in tables.golden_values()["spectrum"]["rows"]:
            lam = as_rational(row["lambda"])
            if as_rational(row["r0"]) == 1 and lam in lams:
                vals = rows[lams.index(lam)].rrm
                for i, (v, e) in enumerate(zip(vals, row["values"])):
                    res.checks.append(Check(f"lambda={row['lambda']} A{i + 1}", v, e, 5e-9))
    return res


BENCHMARK_ARGS = {
    1: ["converge", "--r0", "1", "--lambda", "0.05", "--parity", "even", "--n-range", "2..10", "--basis", "poly"],
    2: ["converge", "--r0", "1", "--lambda", "0.05", "--parity", "odd", "--n-range", "3..11", "--basis", "poly"],
    3: None,
    4: ["limits", "--kind", "small"],
    5: ["limits", "--kind", "large"],
    6: ["pt", "--r0", "1", "--levels", "5", "--order", "2", "--basis", "poly", "--policy-digits", "50"],
    7: ["pt", "--grid", "r0=1..5", "--order", "2", "--basis", "gauss", "--policy-digits", "20"],
}


def cmd_table(args, parser) -> Result:
    common = ["--format", args.format, "--digits", str(args.digits)]
    if args.golden:
        common.append("--golden")
    if args.jobs != 1:
        common += ["--jobs", str(args.jobs)]
    if args.id == 3:
        parts = []
        for r0 in ("1", "2", "3"):
            sub = parser.parse_args(["spectrum", "--r0", r0, "--basis", "poly",
                                     "--lambda-range", ",".join(tables.SPECTRUM_LAMBDAS)] + common)
            parts.append(cmd_spectrum(sub))
        res = parts[0]
        for p in parts[1:]:
            res.rows += p.rows
            res.checks += p.checks
        return res
    argv = BENCHMARK_ARGS[args.id] + common
    if args.id == 6 and args.digits == 10:
        argv[argv.index("--digits") + 1] = "32"
    sub = parser.parse_args(argv)
    args.digits = sub.digits
    return COMMANDS[sub.command](sub)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "converge": cmd_converge,
    "pt": cmd_pt,
    "limits": cmd_limits,
    "figure": cmd_figure,
}


# ---------------------------------------------------------------- output


def render(res: Result, args, command: str) -> str:
    cells = [[fmt(x, args.digits) for x in row] for row in res.rows]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(res.columns)
        w.writerows(cells)
        return buf.getvalue()
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "config")}
    meta = {
        "command": command,
        "policy_digits": _policy_digits(res.policy),
        "policy": str(res.policy) if res.policy else None,
        "basis": res.basis,
        "version": __version__,
    }
    if res.checks:
        meta["golden"] = {"checked": len(res.checks), "failed": sum(not c.ok() for c in res.checks)}
    if not args.golden:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    payload = {"config": config, "rows": [dict(zip(res.columns, row)) for row in cells], "metadata": meta}
    return json.dumps(payload, indent=1, default=str) + "\n"


def _policy_digits(policy: ScalarPolicy | None):
    if policy is None:
        return None
    if policy.kind is PolicyKind.DECIMAL:
        return policy.digits
    return 16


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if "--config" in argv:
            i = argv.index("--config")
            if i + 1 >= len(argv):
                raise UsageError("--config needs a path")
            path = argv[i + 1]
            del argv[i : i + 2]
            if not argv:
                raise UsageError("missing command")
            argv = argv[:1] + read_config(path) + argv[1:]
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except (UsageError, OSError, ValueError) as exc:
        print(f"confosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "table":
            res = cmd_table(args, parser)
        else:
            res = COMMANDS[args.command](args)
    except (UsageError, InvalidInput, ZeroDivisionError) as exc:
        print(f"confosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError) as exc:
        print(f"confosc: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(res, args, args.command)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [c for c in res.checks if not c.ok()]
    for c in failed:
        print(f"golden mismatch: {c.name}: got {fmt(c.value, 14)}, expected {c.expected}", file=sys.stderr)
    if args.golden and not res.checks:
        print("confosc: note: no golden values match this configuration", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
