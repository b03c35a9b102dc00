"""Command-line front end tying the library into reproducible verification runs.

Verbs: characters, decompose, weights, lhs, verify, fit, cache.  CSV output
carries a versioned schema comment line; JSON is the canonical machine
format.  Verification reports contain only numerically relevant fields, so
runs that differ only in thread count emit identical JSON.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import goldens
from .cache import TableCache, cache_tables, default_cache_dir
from .characters import enumerate_characters
from .errors import BmvtError, OutOfRegimeError
from .funtable import build_standard, conv_inverse, convolve
from .meanvalue import (
    BoundReport,
    ComponentSums,
    ExponentProfile,
    F_ROLE,
    LAM_ROLE,
    MU_ROLE,
    build_report,
    classic_profile,
    fit_exponent,
    lambda_k_profile,
    lhs_contributions,
    sedunova_params,
)
from .vaughan import VaughanParams, weighted_decomposition
from .weights import BARBAN_VEHOV, INDICATOR, h4_ratio, h4prime_bilinear, make_eta

CSV_SCHEMA_PREFIX = "# schema=bmvt"

RESIDUAL_TOL = 1e-9
TRIANGLE_REL_TOL = 1e-6
TRIVIAL_REL_TOL = 1e-6
GOLDEN_REL_TOL = 1e-6
MONOTONE_REL_TOL = 1e-9

_STANDARD_CACHE_SET = ("mobius", "totient", "von_mangoldt", "log")


def _parse_grid(text: str, parser: argparse.ArgumentParser, what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v != ""]
    except ValueError:
        parser.error(f"malformed {what} grid {text!r}")
    if not vals:
        parser.error(f"empty {what} grid")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        parser.error(f"{what} grid must be strictly ascending, got {text!r}")
    return vals


def combined_log_exponent(profile: ExponentProfile) -> float:
    """The single log exponent that absorbs every bound term once the cuts
    are powers of x: max over the per-term exponents (epsilon excluded)."""
    b = profile.beta_of
    th, ga = profile.theta_f, profile.gamma_f
    return max(
        b(LAM_ROLE, 0.0),
        b(MU_ROLE, th) + b(LAM_ROLE, th) + 1,
        b(MU_ROLE, ga) + b(LAM_ROLE, ga),
        b(F_ROLE, 0.0) + b(MU_ROLE, 1.0) + b(LAM_ROLE, 1.0),
        (profile.alpha_of(LAM_ROLE) + 3) / 2,
        b(MU_ROLE, 0.0) + 1,
        b(MU_ROLE, 1.0),
    )


@dataclass
class RunConfig:
    """One verification run: case, grids, parameter source, output policy."""

    case: str                       # "classic", "lambda_k(k)", or "custom"
    x_grid: list[float]
    q_grid: list[int]
    epsilon: float = 0.01
    k: int = 2
    f_name: str = "one"
    g_name: str = "log"
    theta: float = 0.0
    gamma: float = 0.0
    params_source: str = "sedunova"         # or "explicit"
    explicit_params: tuple[float, float, float, float] | None = None
    eta_kind: str = BARBAN_VEHOV
    output: str = "json"
    cache_dir: Path = field(default_factory=default_cache_dir)
    threads: int = 1
    fixtures_path: Path | None = None
    bless: bool = False

    def __post_init__(self):
        if not self.x_grid or not self.q_grid:
            raise ValueError("grids must be nonempty")
        if any(b <= a for a, b in zip(self.x_grid, self.x_grid[1:])):
            raise ValueError("x grid must be ascending")
        if any(b <= a for a, b in zip(self.q_grid, self.q_grid[1:])):
            raise ValueError("Q grid must be ascending")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if self.params_source == "explicit":
            if self.explicit_params is None:
                raise ValueError("explicit parameter source needs U0,U1,V1,V2")
            u0, u1, v1, v2 = self.explicit_params
            VaughanParams.with_kind(u0, u1, v1, v2, self.eta_kind)  # validates


def _case_tables(config: RunConfig, cache: TableCache, n_max: int):
    """Resolve (label, f, g, mu_f, profile, gx_fn) for the configured case."""
    if config.case == "classic":
        f = build_standard("one", n_max, allow_large=True)
        g = cache.load_or_build("log", n_max)
        mu = cache.load_or_build("mobius", n_max)
        profile = classic_profile(0.0)
        return "classic", f, g, mu, profile, lambda x: math.log(x)
    if config.case.startswith("lambda_k"):
        k = config.k
        f = build_standard("one", n_max, allow_large=True)
        g = cache.load_or_build(f"log_pow({k})", n_max)
        mu = cache.load_or_build("mobius", n_max)
        profile = lambda_k_profile(k, config.epsilon)
        return f"lambda_k({k})", f, g, mu, profile, lambda x: math.log(x) ** k
    # custom pair: exponents are fitted from the tables themselves
    f = build_standard(config.f_name, n_max, allow_large=True)
    g = build_standard(config.g_name, n_max, allow_large=True)
    mu = conv_inverse(f)
    lam = convolve(mu, g)
    xs = sorted({max(10, n_max // 100), max(30, n_max // 10), n_max})
    profile = ExponentProfile(
        alpha={F_ROLE: max(fit_exponent("alpha", f, xs).estimate, 0.0),
               MU_ROLE: max(fit_exponent("alpha", mu, xs).estimate, 0.0),
               LAM_ROLE: max(fit_exponent("alpha", lam, xs).estimate, 0.0)},
        beta={(role, k): max(fit_exponent("beta", t, xs, k=k).estimate, 0.0)
              for role, t in ((F_ROLE, f), (MU_ROLE, mu), (LAM_ROLE, lam))
              for k in (0.0, 1.0)},
        theta_f=config.theta, gamma_f=config.gamma, epsilon=config.epsilon)
    g_floats = g.to_floats()
    return (f"custom({config.f_name},{config.g_name})", f, g, mu, profile,
            lambda x: float(g_floats[int(math.floor(x))]))


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute a verification run; returns (exit_status, report_payload)."""
    fixtures_path = config.fixtures_path or goldens.default_path()
    gold = goldens.load_goldens(fixtures_path)
    cache = TableCache(config.cache_dir)
    n_max = int(math.floor(config.x_grid[-1]))
    label, f, g, mu, profile, gx_fn = _case_tables(config, cache, n_max)
    log_exp = combined_log_exponent(profile)

    failures: list[str] = []
    reports: list[BoundReport] = []
    fresh_ratios: dict[str, float] = {}

    for x in config.x_grid:
        xi = int(math.floor(x))
        # Q values sharing cut parameters share one decomposition and one
        # per-q contribution pass
        groups: dict[tuple, list[int]] = {}
        params_for: dict[int, VaughanParams] = {}
        for q_cap in config.q_grid:
            if config.params_source == "explicit":
                u0, u1, v1, v2 = config.explicit_params
                params = VaughanParams.with_kind(u0, u1, v1, v2, config.eta_kind)
            else:
                params = sedunova_params_checked(x, q_cap, config.epsilon,
                                                 config.eta_kind, failures, label)
                if params is None:
                    continue
            params_for[q_cap] = params
            groups.setdefault(params.key(), []).append(q_cap)
        for key, q_caps in groups.items():
            params = params_for[q_caps[0]]
            decomp = weighted_decomposition(f, g, params, xi, mu_f=mu)
            tables = [decomp.lambda_fg, decomp.lambda1, decomp.lambda2_low,
                      decomp.lambda2_high, decomp.lambda3, decomp.lambda4]
            rows = lhs_contributions(tables, max(q_caps), x, threads=config.threads)
            for q_cap in q_caps:
                totals = rows[: q_cap].sum(axis=0)
                comps = ComponentSums(float(totals[0]), float(totals[1]),
                                      float(totals[2]), float(totals[3]),
                                      float(totals[4]), float(totals[5]), decomp)
                report = build_report(label, f, g, params, profile, q_cap, x,
                                      gx_fn(x), log_exp, comps=comps)
                reports.append(report)
                _check_report(report, gold, fresh_ratios, failures, config.bless)

    _check_monotone(reports, config, failures)

    if config.bless and fresh_ratios:
        goldens.bless(gold, goldens.THEOREM_RATIO, fresh_ratios, echo=_echo_err)
        goldens.save_goldens(gold, fixtures_path)

    payload = {
        "case": label,
        "epsilon": config.epsilon,
        "params_source": config.params_source,
        "eta_kind": config.eta_kind,
        "x_grid": config.x_grid,
        "Q_grid": config.q_grid,
        "reports": [r.to_dict() for r in reports],
        "passed": not failures,
        "failures": failures,
    }
    return (0 if not failures else 1), payload


def sedunova_params_checked(x, q_cap, epsilon, eta_kind, failures, label):
    try:
        return sedunova_params(x, q_cap, epsilon, eta_kind=eta_kind)
    except OutOfRegimeError as exc:
        failures.append(f"params out of regime at case={label} x={x:g} Q={q_cap}: {exc}")
        return None


def _echo_err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _check_report(report: BoundReport, gold: dict, fresh: dict,
                  failures: list[str], bless: bool) -> None:
    where = f"case={report.case} x={report.x:g} Q={report.Q}"
    if report.residual > RESIDUAL_TOL:
        failures.append(
            f"identity-residual exceeds {RESIDUAL_TOL:g} at {where}: {report.residual:.3e}")
    if report.lhs_total > report.component_total + TRIANGLE_REL_TOL * report.lhs_total:
        failures.append(
            f"triangle-inequality violated at {where}: "
            f"lhs={report.lhs_total!r} > components={report.component_total!r}")
    for tag, bound in (("triv1", report.triv1_bound), ("triv2", report.triv2_bound)):
        if report.lhs_total > bound * (1 + TRIVIAL_REL_TOL):
            failures.append(
                f"{tag}-bound violated at {where}: lhs={report.lhs_total!r} > {bound!r}")
    key = goldens.theorem_key(report.case, report.x, report.Q)
    if bless:
        fresh[key] = report.theorem_ratio
        return
    want = gold.get(goldens.THEOREM_RATIO, {}).get(key)
    if want is not None and abs(report.theorem_ratio - want) > GOLDEN_REL_TOL * abs(want):
        failures.append(
            f"theorem-ratio-golden mismatch at {where}: "
            f"got={report.theorem_ratio!r} want={want!r}")


def _check_monotone(reports: list[BoundReport], config: RunConfig,
                    failures: list[str]) -> None:
    if len(config.x_grid) < 2:
        return
    for q_cap in config.q_grid:
        seq = [r for r in reports if r.Q == q_cap]
        seq.sort(key=lambda r: r.x)
        for a, b in zip(seq, seq[1:]):
            if b.theorem_ratio > a.theorem_ratio * (1 + MONOTONE_REL_TOL):
                failures.append(
                    f"theorem-ratio not non-increasing at case={b.case} Q={q_cap}: "
                    f"ratio({a.x:g})={a.theorem_ratio!r} < ratio({b.x:g})={b.theorem_ratio!r}")


# -- output helpers ------------------------------------------------------------

def _emit_json(obj, out) -> None:
    json.dump(obj, out, indent=2, sort_keys=True)
    out.write("\n")


_REPORT_COLUMNS = [
    "case", "x", "Q", "profile_epsilon", "U0", "U1", "V1", "V2", "eta_kind",
    "lhs_total", "S1", "S2_low", "S2_high", "S3", "S4", "component_total",
    "residual", "term1", "term2", "term3", "term4", "term5", "term6", "term7",
    "bound_total", "M", "L", "ratio_bound", "ratio_ML", "triv1_bound",
    "triv2_bound", "theorem_log_exponent", "theorem_denominator", "theorem_ratio",
]


def _emit_report_csv(payload: dict, out) -> None:
    out.write(f"{CSV_SCHEMA_PREFIX}.report/1\n")
    w = csv.DictWriter(out, fieldnames=_REPORT_COLUMNS, extrasaction="ignore")
    w.writeheader()
    for rep in payload["reports"]:
        w.writerow({k: rep.get(k) for k in _REPORT_COLUMNS})


# -- verb implementations -------------------------------------------------------

def _cmd_characters(args, parser) -> int:
    chars = enumerate_characters(args.modulus)
    if args.primitive_only:
        chars = [c for c in chars if c.primitive]
    out = sys.stdout
    if args.output == "json":
        _emit_json([{
            "index": c.index, "modulus": c.modulus, "conductor": c.conductor,
            "primitive": c.primitive, "principal": c.principal, "order": c.order,
        } for c in chars], out)
        return 0
    if args.values:
        out.write(f"{CSV_SCHEMA_PREFIX}.character-values/1\n")
        w = csv.writer(out)
        w.writerow(["index", "n", "angle_num", "angle_den"])
        for c in chars:
            for n in range(1, c.modulus + 1):
                a = c.angle(n)
                if a is None:
                    w.writerow([c.index, n, "zero"])
                else:
                    w.writerow([c.index, n, a.numerator, a.denominator])
    else:
        out.write(f"{CSV_SCHEMA_PREFIX}.characters/1\n")
        w = csv.writer(out)
        w.writerow(["index", "modulus", "conductor", "primitive", "principal", "order"])
        for c in chars:
            w.writerow([c.index, c.modulus, c.conductor,
                        int(c.primitive), int(c.principal), c.order])
    return 0


def _cmd_decompose(args, parser) -> int:
    n = args.N
    f = build_standard(args.f, n, allow_large=True)
    g = build_standard(args.g, n, allow_large=True)
    u0 = args.u0 if args.u0 is not None else args.u1
    params = VaughanParams.with_kind(u0, args.u1, args.v1, args.v2, args.eta)
    decomp = weighted_decomposition(f, g, params, n)
    out = sys.stdout
    if args.output == "json":
        _emit_json({
            "f": args.f, "g": args.g, "N": n,
            "U0": params.U0, "U1": params.U1, "V1": params.V1, "V2": params.V2,
            "eta_kind": params.eta.kind, "residual": decomp.residual,
        }, out)
        return 0
    out.write(f"{CSV_SCHEMA_PREFIX}.decompose/1\n")
    out.write(f"# residual={decomp.residual!r}\n")
    w = csv.writer(out)
    w.writerow(["n", "lambda1", "lambda2", "lambda3", "lambda4", "total", "lambda_fg"])
    t1, t2, t3, t4 = (t.to_floats() for t in decomp.components)
    lam = decomp.lambda_fg.to_floats()
    for i in range(1, n + 1):
        tot = t1[i] + t2[i] + t3[i] + t4[i]
        w.writerow([i, repr(t1[i]), repr(t2[i]), repr(t3[i]), repr(t4[i]),
                    repr(tot), repr(lam[i])])
    return 0


def _cmd_weights(args, parser) -> int:
    v1s = _parse_grid(args.v1, parser, "V1")
    v2s = _parse_grid(args.v2, parser, "V2")
    vs = _parse_grid(args.V, parser, "V")
    n_max = int(max(vs))
    f = build_standard(args.f, n_max, allow_large=True)
    rows = []
    for v1 in v1s:
        for v2 in v2s:
            if v2 <= v1:
                continue
            eta = make_eta(v1, v2, BARBAN_VEHOV)
            for v in vs:
                ratio = h4_ratio(f, eta, v)
                _, normalized = h4prime_bilinear(f, v1, v2, v)
                rows.append((v1, v2, v, ratio, normalized))
    if args.bless:
        path = args.fixtures or goldens.default_path()
        gold = goldens.load_goldens(path)
        goldens.bless(gold, goldens.H4_RATIO,
                      {goldens.h4_key(args.f, v1, v2, v): r
                       for v1, v2, v, r, _ in rows}, echo=_echo_err)
        goldens.bless(gold, goldens.H4PRIME_NORMALIZED,
                      {goldens.h4_key(args.f, v1, v2, v): nrm
                       for v1, v2, v, _, nrm in rows}, echo=_echo_err)
        goldens.save_goldens(gold, path)
    out = sys.stdout
    if args.output == "json":
        _emit_json([{"V1": v1, "V2": v2, "V": v, "h4_ratio": r,
                     "h4prime_normalized": nrm} for v1, v2, v, r, nrm in rows], out)
        return 0
    out.write(f"{CSV_SCHEMA_PREFIX}.weights/1\n")
    w = csv.writer(out)
    w.writerow(["V1", "V2", "V", "h4_ratio", "h4prime_normalized"])
    for v1, v2, v, r, nrm in rows:
        w.writerow([f"{v1:g}", f"{v2:g}", f"{v:g}", repr(r), repr(nrm)])
    return 0


def _cmd_lhs(args, parser) -> int:
    xi = int(math.floor(args.x))
    f = build_standard(args.f, xi, allow_large=True)
    rows = lhs_contributions([f], args.Q, args.x, threads=args.threads)
    per_q = [float(v) for v in rows[:, 0]]
    total = float(sum(per_q))
    out = sys.stdout
    if args.output == "csv":
        out.write(f"{CSV_SCHEMA_PREFIX}.lhs/1\n")
        w = csv.writer(out)
        w.writerow(["q", "contribution", "cumulative"])
        run_sum = 0.0
        for q, c in enumerate(per_q, start=1):
            run_sum += c
            w.writerow([q, repr(c), repr(run_sum)])
        return 0
    _emit_json({"f": args.f, "Q": args.Q, "x": args.x,
                "lhs": total, "per_q": per_q}, out)
    return 0


def _cmd_verify(args, parser) -> int:
    x_grid = _parse_grid(args.x, parser, "x")
    q_grid = [int(v) for v in _parse_grid(args.Q, parser, "Q")]
    explicit = None
    source = "sedunova"
    if args.params:
        parts = args.params.split(",")
        if len(parts) != 4:
            parser.error("--params needs U0,U1,V1,V2")
        explicit = tuple(float(v) for v in parts)
        source = "explicit"
    case = args.case if args.case != "lambda-k" else f"lambda_k({args.k})"
    try:
        config = RunConfig(
            case=case, x_grid=x_grid, q_grid=q_grid, epsilon=args.epsilon,
            k=args.k, f_name=args.f, g_name=args.g,
            params_source=source, explicit_params=explicit,
            eta_kind=args.eta, output=args.output,
            cache_dir=Path(args.cache_dir), threads=args.threads,
            fixtures_path=Path(args.fixtures) if args.fixtures else None,
            bless=args.bless)
    except ValueError as exc:
        parser.error(str(exc))
    status, payload = run(config)
    if args.output == "csv":
        _emit_report_csv(payload, sys.stdout)
    else:
        _emit_json(payload, sys.stdout)
    for failure in payload["failures"]:
        print(f"FAIL: {failure}", file=sys.stderr)
    return status


def _cmd_fit(args, parser) -> int:
    grid = [int(v) for v in _parse_grid(args.grid, parser, "x")]
    stat = args.stat
    k = None
    kind = stat
    if stat.startswith("beta:"):
        kind = "beta"
        k = float(stat.split(":", 1)[1])
    elif stat != "alpha":
        parser.error(f"--stat must be alpha or beta:k, got {stat!r}")
    f = build_standard(args.f, grid[-1], allow_large=True)
    fit = fit_exponent(kind, f, grid, k=k)
    out = sys.stdout
    if args.output == "csv":
        out.write(f"{CSV_SCHEMA_PREFIX}.fit/1\n")
        w = csv.writer(out)
        w.writerow(["f", "stat", "grid", "estimate", "r2"])
        w.writerow([args.f, stat, ";".join(str(v) for v in grid),
                    repr(fit.estimate), repr(fit.r2)])
        return 0
    _emit_json({"f": args.f, "stat": stat, "grid": grid,
                "estimate": fit.estimate, "r2": fit.r2}, out)
    return 0


def _cmd_cache(args, parser) -> int:
    names = args.names.split(",") if args.names else list(_STANDARD_CACHE_SET)
    manifest = cache_tables(Path(args.cache_dir), names, args.N)
    _emit_json(manifest, sys.stdout)
    return 0


# -- parser ---------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_threads_arg, default=1,
                        help="worker count, or 'auto' for the machine's cores")
    common.add_argument("--cache-dir", default=str(default_cache_dir()),
                        help="table cache directory (BMVT_CACHE_DIR overrides the default)")
    common.add_argument("--output", choices=("csv", "json"), default=None,
                        help="output format (default depends on the verb)")
    common.add_argument("--epsilon", type=float, default=0.01,
                        help="slack exponent for parameter recipes")
    common.add_argument("--fixtures", default=None,
                        help="override the golden fixtures file")

    parser = argparse.ArgumentParser(
        prog="bmvt",
        description="Arithmetic-function mean value computations and bound checks")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("characters", parents=[common],
                       help="list Dirichlet characters mod q")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--primitive-only", action="store_true")
    p.add_argument("--values", action="store_true",
                   help="emit per-residue exact angles")
    p.set_defaults(fn=_cmd_characters, default_output="csv")

    p = sub.add_parser("decompose", parents=[common],
                       help="tabulate a weighted four-part decomposition")
    p.add_argument("--f", default="one")
    p.add_argument("--g", default="log")
    p.add_argument("--u1", type=float, required=True)
    p.add_argument("--v1", type=float, required=True)
    p.add_argument("--v2", type=float, required=True)
    p.add_argument("--u0", type=float, default=None)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--eta", choices=(BARBAN_VEHOV, INDICATOR), default=BARBAN_VEHOV)
    p.set_defaults(fn=_cmd_decompose, default_output="csv")

    p = sub.add_parser("weights", parents=[common],
                       help="quadratic/bilinear weighted sieve sums")
    p.add_argument("--f", default="one")
    p.add_argument("--v1", required=True, help="comma grid")
    p.add_argument("--v2", required=True, help="comma grid")
    p.add_argument("--V", required=True, help="comma grid")
    p.add_argument("--bless", action="store_true",
                   help="record the computed values as golden fixtures")
    p.set_defaults(fn=_cmd_weights, default_output="csv")

    p = sub.add_parser("lhs", parents=[common],
                       help="the character-sum mean value S(x, Q)")
    p.add_argument("--f", required=True)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(fn=_cmd_lhs, default_output="json")

    p = sub.add_parser("verify", parents=[common],
                       help="grid verification run with golden-ratio checks")
    p.add_argument("--case", choices=("classic", "lambda-k", "custom"),
                   default="classic")
    p.add_argument("--k", type=int, default=2, help="exponent for --case lambda-k")
    p.add_argument("--f", default="one", help="f table for --case custom")
    p.add_argument("--g", default="log", help="g table for --case custom")
    p.add_argument("--x", required=True, help="comma grid of cutoffs")
    p.add_argument("--Q", required=True, help="comma grid of modulus caps")
    p.add_argument("--params", default=None, help="explicit U0,U1,V1,V2")
    p.add_argument("--eta", choices=(BARBAN_VEHOV, INDICATOR), default=BARBAN_VEHOV)
    p.add_argument("--bless", action="store_true",
                   help="re-record golden theorem ratios for this grid")
    p.set_defaults(fn=_cmd_verify, default_output="json")

    p = sub.add_parser("fit", parents=[common],
                       help="fit a partial-sum log exponent")
    p.add_argument("--f", required=True)
    p.add_argument("--stat", required=True, help="alpha or beta:k")
    p.add_argument("--grid", required=True, help="comma grid of cutoffs")
    p.set_defaults(fn=_cmd_fit, default_output="json")

    p = sub.add_parser("cache", parents=[common],
                       help="build and persist sieved tables")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--names", default=None,
                   help="comma list of table names (default standard set)")
    p.set_defaults(fn=_cmd_cache, default_output="json")
    return parser


def _threads_arg(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("thread count must be >= 1 or 'auto'")
    return n


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.output is None:
        args.output = args.default_output
    try:
        return args.fn(args, parser)
    except BmvtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
