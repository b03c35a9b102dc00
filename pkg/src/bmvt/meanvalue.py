"""The character-sum mean value S(x, Q), its decomposition pieces, and the
explicit bound terms they are compared against.

The left-hand side is

    S(x, Q) = sum_{q <= Q} q/phi(q) sum*_{chi mod q} max_{y <= x}
              |sum_{n <= y} lam_fg(n) chi(n)|

with sum* restricted to primitive characters and the q = 1 term supplying
the plain partial-sum maximum.  ``component_sums`` applies the same
functional to each table of a weighted Vaughan decomposition, so the sum
of the per-component values dominates the total by the triangle
inequality.

``bound_H`` evaluates the seven bound terms with all implicit
constants set to one; ``corollary_ML`` evaluates the main-term/log-term
maxima.  Every log power is guarded as max(log a, 1)^e: the bounds are
asymptotic, and tiny arguments would otherwise produce spurious zeros.
Acceptance is therefore via recorded golden ratios, never by asserting an
asymptotic inequality literally at finite x.

Exponent profiles hold the growth exponents (alpha, beta(k), theta, gamma)
used in the bound formulas; presets cover the classic pair (f = 1,
g = log) and the generalized pair (f = 1, g = log^k), and ``fit_exponent``
estimates exponents empirically from partial-sum profiles.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .characters import enumerate_characters
from .errors import (
    FitError,
    InsufficientTableError,
    OutOfRegimeError,
    WrongBranchError,
)
from .funtable import FunTable, weighted_partial_sums
from .vaughan import Decomposition, VaughanParams, weighted_decomposition
from .weights import BARBAN_VEHOV, make_eta

F_ROLE = "f"
MU_ROLE = "mu_f"
LAM_ROLE = "lambda_fg"


def _lg(a: float) -> float:
    """Guarded logarithm: max(log a, 1)."""
    return max(math.log(a), 1.0) if a > 0 else 1.0


@dataclass(frozen=True)
class ExponentProfile:
    """Growth exponents for the three roles f, mu_f, lambda_fg.

    alpha[role] bounds sum |D|^2 <= x log^alpha x; beta[(role, k)] bounds
    sum |D|/n^k <= x^{1-k} log^beta x; theta_f/gamma_f are the character
    cancellation exponents for f; epsilon is the slack added to every log
    exponent (0 when the exponents are known to be attained).
    """

    alpha: Mapping[str, float]
    beta: Mapping[tuple[str, float], float]
    theta_f: float
    gamma_f: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not 0 <= self.theta_f <= 1 or not 0 <= self.gamma_f <= 1:
            raise ValueError("theta_f and gamma_f must lie in [0, 1]")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if any(v < 0 for v in self.alpha.values()):
            raise ValueError("alpha exponents must be >= 0")
        if any(v < 0 for v in self.beta.values()):
            raise ValueError("beta exponents must be >= 0")

    def alpha_of(self, role: str) -> float:
        return self.alpha[role]

    def beta_of(self, role: str, k: float) -> float:
        try:
            return self.beta[(role, float(k))]
        except KeyError as exc:
            raise KeyError(f"profile has no beta({role}, {k})") from exc


def classic_profile(epsilon: float = 0.0) -> ExponentProfile:
    """Exponents for f = 1, g = log; they are attained, so epsilon defaults to 0."""
    return ExponentProfile(
        alpha={F_ROLE: 0.0, MU_ROLE: 0.0, LAM_ROLE: 1.0},
        beta={(F_ROLE, 0.0): 0.0, (F_ROLE, 1.0): 1.0,
              (MU_ROLE, 0.0): 0.0, (MU_ROLE, 1.0): 1.0,
              (LAM_ROLE, 0.0): 0.0, (LAM_ROLE, 1.0): 1.0},
        theta_f=0.0, gamma_f=0.0, epsilon=epsilon)


def lambda_k_profile(k: int, epsilon: float = 0.01) -> ExponentProfile:
    """Exponents for f = 1, g = log^k (lam_fg is the k-th von Mangoldt table).

    alpha = 2k - 1 is only an upper bound, so a positive epsilon is kept by
    default.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return ExponentProfile(
        alpha={F_ROLE: 0.0, MU_ROLE: 0.0, LAM_ROLE: float(2 * k - 1)},
        beta={(F_ROLE, 0.0): 0.0, (F_ROLE, 1.0): 1.0,
              (MU_ROLE, 0.0): 0.0, (MU_ROLE, 1.0): 1.0,
              (LAM_ROLE, 0.0): float(k - 1), (LAM_ROLE, 1.0): float(k)},
        theta_f=0.0, gamma_f=0.0, epsilon=epsilon)


# -- the left-hand side ------------------------------------------------------

def lhs_contributions(tables: Sequence[FunTable], Q: int, x: float, *,
                      threads: int = 1) -> np.ndarray:
    """Per-modulus contributions, shape (Q, len(tables)).

    Row q-1 holds q/phi(q) times the sum over primitive characters mod q of
    the max partial character sum for each table.  Work may be distributed
    over threads, but rows are reduced in ascending q, so the result does
    not depend on the schedule.
    """
    xi = int(math.floor(x))
    if xi < 1:
        raise ValueError(f"cutoff x must be >= 1, got {x}")
    if Q < 1:
        raise ValueError(f"modulus cap Q must be >= 1, got {Q}")
    for t in tables:
        if t.N < xi:
            raise InsufficientTableError(
                f"lhs to x={xi} needs table {t.name!r} that long (N={t.N})")
    slices = [t.to_floats()[1: xi + 1] for t in tables]

    def per_q(q: int) -> np.ndarray:
        out = np.zeros(len(slices))
        prim = [c for c in enumerate_characters(q) if c.primitive]
        if not prim:
            return out
        for chi in prim:
            cv = chi.values_prefix(xi)[1:]
            for j, w in enumerate(slices):
                out[j] += float(np.max(np.abs(np.cumsum(w * cv))))
        out *= q / prim[0].phi_q
        return out

    qs = range(1, Q + 1)
    if threads <= 1:
        rows = [per_q(q) for q in qs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {q: pool.submit(per_q, q) for q in qs}
            rows = [futures[q].result() for q in qs]
    return np.vstack(rows)


def lhs(f_table: FunTable, Q: int, x: float, *, threads: int = 1) -> float:
    """S(x, Q) for the given table."""
    rows = lhs_contributions([f_table], Q, x, threads=threads)
    return float(rows.sum())


@dataclass(frozen=True)
class ComponentSums:
    """The decomposition components pushed through the mean-value functional."""

    lhs_total: float
    s1: float
    s2_low: float
    s2_high: float
    s3: float
    s4: float
    decomposition: Decomposition

    @property
    def component_total(self) -> float:
        return self.s1 + self.s2_low + self.s2_high + self.s3 + self.s4


def component_sums(f: FunTable, g: FunTable, params: VaughanParams, Q: int,
                   x: float, *, threads: int = 1,
                   mu_f: FunTable | None = None,
                   decomposition: Decomposition | None = None) -> ComponentSums:
    """Build the decomposition once and evaluate S_i(x, Q) for every piece."""
    xi = int(math.floor(x))
    if decomposition is None:
        decomposition = weighted_decomposition(f, g, params, xi, mu_f=mu_f)
    elif decomposition.N < xi:
        raise InsufficientTableError(
            f"supplied decomposition covers N={decomposition.N} < {xi}")
    d = decomposition
    tables = [d.lambda_fg, d.lambda1, d.lambda2_low, d.lambda2_high,
              d.lambda3, d.lambda4]
    totals = lhs_contributions(tables, Q, x, threads=threads).sum(axis=0)
    return ComponentSums(float(totals[0]), float(totals[1]), float(totals[2]),
                         float(totals[3]), float(totals[4]), float(totals[5]), d)


# -- explicit bound evaluation -----------------------------------------------

def bound_H(x: float, Q: float, params: VaughanParams, profile: ExponentProfile,
            gx: float) -> tuple[tuple[float, ...], float]:
    """The seven bound terms, implicit constants set to 1.

    ``gx`` is the value of g at x, supplied explicitly because the growth
    of g is the caller's knowledge.  Returns (terms, total).
    """
    U0, U1, V1, V2 = params.U0, params.U1, params.V1, params.V2
    th, ga, eps = profile.theta_f, profile.gamma_f, profile.epsilon
    b = profile.beta_of
    a_lam = profile.alpha_of(LAM_ROLE)
    sx = math.sqrt(x)
    window = math.sqrt(_lg(V2 / V1))

    t1 = U1 * Q**2 * _lg(U1) ** (b(LAM_ROLE, 0.0) + eps)
    t2 = (x**th * (U0 * V2) ** (1 - th) * Q**2.5
          * _lg(U0 * V2 * Q) ** (b(MU_ROLE, th) + b(LAM_ROLE, th) + 1 + eps))
    t3 = (x**ga * (U0 * V2) ** (1 - ga) * Q**2
          * _lg(U0 * V2) ** (b(MU_ROLE, ga) + b(LAM_ROLE, ga) + eps))
    t4 = x * _lg(x * U0 * V2) ** (b(F_ROLE, 0.0) + b(MU_ROLE, 1.0)
                                  + b(LAM_ROLE, 1.0) + eps)
    t5 = (((sx * Q**2 + x) * _lg(U1)
           + sx * Q * (math.sqrt(U1) + math.sqrt(x / U0)))
          * _lg(x) ** (a_lam / 2 + 1 + eps) / window)
    t6 = (gx * V2 * Q**2.5 * _lg(V2 * Q) ** (b(MU_ROLE, 0.0) + 1 + eps)
          + gx * x * _lg(V2) ** (b(MU_ROLE, 1.0) + eps))
    t7 = (((sx * Q**2 + x) * _lg(x)
           + x * Q * (1 / math.sqrt(V1) + 1 / math.sqrt(U1)))
          * _lg(x) ** (a_lam / 2 + 1 + eps) / window)
    terms = (t1, t2, t3, t4, t5, t6, t7)
    return terms, float(sum(terms))


def corollary_ML(x: float, Q: float, params: VaughanParams,
                 profile: ExponentProfile, gx: float) -> tuple[float, float]:
    """Main term M (max of nine) and log term L (max of eight, g(x) included)."""
    U0, U1, V1, V2 = params.U0, params.U1, params.V1, params.V2
    th, ga, eps = profile.theta_f, profile.gamma_f, profile.epsilon
    b = profile.beta_of
    a_lam = profile.alpha_of(LAM_ROLE)
    sx = math.sqrt(x)
    window = math.sqrt(_lg(V2 / V1))

    M = max(
        U1 * Q**2,
        x**th * (U0 * V2) ** (1 - th) * Q**2.5,
        x**ga * (U0 * V2) ** (1 - ga) * Q**2,
        x,
        sx * Q**2,
        x * Q / math.sqrt(U0),
        sx * math.sqrt(U1) * Q,
        V2 * Q**2.5,
        x * Q / math.sqrt(V1),
    )
    L = max(
        _lg(U1) ** (b(LAM_ROLE, 0.0) + eps),
        _lg(U0 * V2 * Q) ** (b(MU_ROLE, th) + b(LAM_ROLE, th) + 1 + eps),
        _lg(U0 * V2) ** (b(MU_ROLE, ga) + b(LAM_ROLE, ga) + eps),
        _lg(x * U0 * V2) ** (b(F_ROLE, 0.0) + b(MU_ROLE, 1.0)
                             + b(LAM_ROLE, 1.0) + eps),
        _lg(x * U1) ** (a_lam / 2 + 2 + eps) / window,
        gx * _lg(V2 * Q) ** (b(MU_ROLE, 0.0) + 1 + eps),
        gx * _lg(V2) ** (b(MU_ROLE, 1.0) + eps),
        _lg(x) ** (a_lam / 2 + 2 + eps) / window,
    )
    return float(M), float(L)


def sedunova_params(x: float, Q: float, epsilon: float = 0.01, *,
                    eta_kind: str = BARBAN_VEHOV) -> VaughanParams:
    """The two-regime cut recipe behind the x^{13/14} exponent.

    Low range Q <= x^{3/7 + eps} (boundary included):
        U0 = x^{1/7 - eps},      U1 = V1 = x^{1/7},      V2 = x^{1/7 + eps/2}
    High range x^{3/7 + eps} < Q <= x^{1/2}:
        U0 = x^{4/7 - eps} / Q,  U1 = V1 = x^{4/7} / Q,  V2 = x^{4/7 + 5 eps/2} / Q

    All cuts are clamped to >= 1.  Q above sqrt(x) belongs to the large-Q
    branch and is rejected.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if x < 2:
        raise OutOfRegimeError(f"recipe needs x >= 2, got {x}")
    if Q < 1:
        raise OutOfRegimeError(f"recipe needs Q >= 1, got {Q}")
    if Q > math.sqrt(x):
        raise OutOfRegimeError(
            f"Q={Q} exceeds sqrt(x)={math.sqrt(x):.6g}; use the large-Q branch")
    if Q <= x ** (3 / 7 + epsilon):
        u0 = x ** (1 / 7 - epsilon)
        u1 = x ** (1 / 7)
        v2 = x ** (1 / 7 + epsilon / 2)
    else:
        u0 = x ** (4 / 7 - epsilon) / Q
        u1 = x ** (4 / 7) / Q
        v2 = x ** (4 / 7 + 2.5 * epsilon) / Q
    # in-regime u1 >= x^{1/14} >= 1 and v2/u1 = x^{eps/2} > 1, so clamping
    # u0 is the only correction that can ever fire
    u0 = max(u0, 1.0)
    u1 = max(u1, 1.0)
    v2 = max(v2, 1.0)
    return VaughanParams(min(u0, u1), u1, u1, v2, make_eta(u1, v2, eta_kind))


def large_q_branch(f_table: FunTable, Q: float, x: float) -> float:
    """(sqrt(x) Q + Q^2) (sum_{n <= x} f(n)^2)^{1/2} log x, for Q^2 > x only."""
    if not Q * Q > x:
        raise WrongBranchError(f"large-Q evaluation needs Q^2 > x, got Q={Q}, x={x}")
    xi = int(math.floor(x))
    if f_table.N < xi:
        raise InsufficientTableError(
            f"need table to {xi}, {f_table.name!r} has N={f_table.N}")
    a = f_table.to_floats()[1: xi + 1]
    s2 = float(np.dot(a, a))
    return (math.sqrt(x) * Q + Q * Q) * math.sqrt(s2) * _lg(x)


def trivial_bounds(f_table: FunTable, Q: float, x: float) -> tuple[float, float]:
    """The two finite inequalities that always dominate S(x, Q) with constant 1:

        Q^2 sum_{n <= x} |f(n)|    and    Q^2 (x sum_{n <= x} |f(n)|^2)^{1/2}.
    """
    xi = int(math.floor(x))
    if f_table.N < xi:
        raise InsufficientTableError(
            f"need table to {xi}, {f_table.name!r} has N={f_table.N}")
    a = np.abs(f_table.to_floats()[1: xi + 1])
    return (float(Q * Q * a.sum()),
            float(Q * Q * math.sqrt(xi * float(np.dot(a, a)))))


def theorem_denominator(x: float, Q: float, log_exponent: float) -> float:
    """(x + x^{13/14} Q + x^{1/2} Q^2) log^e x, the headline comparison scale."""
    return (x + x ** (13 / 14) * Q + math.sqrt(x) * Q * Q) * math.log(x) ** log_exponent


# -- empirical exponent fitting ----------------------------------------------

@dataclass(frozen=True)
class ExponentFit:
    """Least-squares exponent estimate from a grid of cutoffs."""

    target: tuple[str, str]
    sample_xs: tuple[int, ...]
    estimate: float
    r2: float


def fit_exponent(profile_kind: str, f: FunTable, xs: Sequence[int],
                 k: float | None = None) -> ExponentFit:
    """Fit the log-power exponent of a partial-sum statistic.

    profile_kind 'alpha' fits sum_{n <= x} |f(n)|^2 ~ x log^a x;
    'beta' (with k) fits sum_{n <= x} |f(n)|/n^k ~ x^{1-k} log^b x.
    The estimate is the slope of log(S(x)/x^power) against log log x.
    """
    xs = tuple(int(v) for v in xs)
    if len(xs) < 3:
        raise FitError(f"need at least 3 grid points, got {len(xs)}")
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        raise FitError("grid must be strictly increasing")
    if xs[0] < 3:
        raise FitError("grid points must be >= 3 so that log log x > 0")
    if xs[-1] > f.N:
        raise InsufficientTableError(
            f"grid reaches {xs[-1]} but table {f.name!r} has N={f.N}")
    if profile_kind == "alpha":
        a = f.to_floats()[1:]
        cum = np.cumsum(a * a)
        s = cum[np.array(xs) - 1]
        power = 1.0
        stat = "alpha"
    elif profile_kind == "beta":
        if k is None:
            raise FitError("beta fits need the weight exponent k")
        prof = weighted_partial_sums(f, k)
        s = prof.sums[np.array(xs)]
        power = 1.0 - k
        stat = f"beta({k:g})"
    else:
        raise FitError(f"unknown profile kind {profile_kind!r}")
    if np.any(s <= 0):
        raise FitError("partial sums must be positive to fit a log exponent")
    t = np.log(np.log(np.array(xs, dtype=np.float64)))
    if np.ptp(t) == 0:
        raise FitError("grid points give identical log log x values")
    y = np.log(s / np.array(xs, dtype=np.float64) ** power)
    slope, intercept = np.polyfit(t, y, 1)
    fitted = slope * t + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return ExponentFit((f.name, stat), xs, float(slope), r2)


def exponent_shape_check(f: FunTable, k: float, xs: Sequence[int], *,
                  slack: float = 0.3) -> bool:
    """Empirical form of beta(k) <= alpha/2 + [k = 1], with fitting slack."""
    beta_hat = fit_exponent("beta", f, xs, k=k).estimate
    alpha_hat = fit_exponent("alpha", f, xs).estimate
    indicator = 1.0 if k == 1 else 0.0
    return beta_hat <= alpha_hat / 2 + indicator + slack


# -- assembled report ---------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Everything measured for one (x, Q) configuration."""

    case: str
    x: float
    Q: int
    epsilon: float
    params: VaughanParams
    lhs_total: float
    s1: float
    s2_low: float
    s2_high: float
    s3: float
    s4: float
    residual: float
    bound_terms: tuple[float, ...]
    bound_total: float
    M: float
    L: float
    triv1_bound: float
    triv2_bound: float
    theorem_log_exponent: float
    theorem_denominator: float
    theorem_ratio: float

    @property
    def component_total(self) -> float:
        return self.s1 + self.s2_low + self.s2_high + self.s3 + self.s4

    @property
    def ratio_bound(self) -> float:
        return self.lhs_total / self.bound_total

    @property
    def ratio_ML(self) -> float:
        return self.lhs_total / (self.M * self.L)

    @property
    def component_ratios(self) -> tuple[float, ...]:
        """S_i over its own bound-term group (t1 | t2+t3+t4 | t5 | t6 | t7)."""
        t = self.bound_terms
        groups = (t[0], t[1] + t[2] + t[3], t[4], t[5], t[6])
        comps = (self.s1, self.s2_low, self.s2_high, self.s3, self.s4)
        return tuple(c / g if g > 0 else math.inf for c, g in zip(comps, groups))

    def to_dict(self) -> dict:
        d = {
            "case": self.case,
            "x": self.x,
            "Q": self.Q,
            "profile_epsilon": self.epsilon,
            "U0": self.params.U0,
            "U1": self.params.U1,
            "V1": self.params.V1,
            "V2": self.params.V2,
            "eta_kind": self.params.eta.kind,
            "lhs_total": self.lhs_total,
            "S1": self.s1,
            "S2_low": self.s2_low,
            "S2_high": self.s2_high,
            "S3": self.s3,
            "S4": self.s4,
            "component_total": self.component_total,
            "residual": self.residual,
            "bound_total": self.bound_total,
            "M": self.M,
            "L": self.L,
            "ratio_bound": self.ratio_bound,
            "ratio_ML": self.ratio_ML,
            "triv1_bound": self.triv1_bound,
            "triv2_bound": self.triv2_bound,
            "theorem_log_exponent": self.theorem_log_exponent,
            "theorem_denominator": self.theorem_denominator,
            "theorem_ratio": self.theorem_ratio,
        }
        for i, t in enumerate(self.bound_terms, start=1):
            d[f"term{i}"] = t
        return d


def build_report(case: str, f: FunTable, g: FunTable, params: VaughanParams,
                 profile: ExponentProfile, Q: int, x: float, gx: float,
                 theorem_log_exponent: float, *, threads: int = 1,
                 mu_f: FunTable | None = None,
                 decomposition: Decomposition | None = None,
                 comps: ComponentSums | None = None) -> BoundReport:
    """Measure one (x, Q) configuration end to end."""
    if comps is None:
        comps = component_sums(f, g, params, Q, x, threads=threads,
                               mu_f=mu_f, decomposition=decomposition)
    terms, total = bound_H(x, Q, params, profile, gx)
    M, L = corollary_ML(x, Q, params, profile, gx)
    triv1, triv2 = trivial_bounds(comps.decomposition.lambda_fg, Q, x)
    denom = theorem_denominator(x, Q, theorem_log_exponent)
    return BoundReport(
        case=case, x=float(x), Q=int(Q), epsilon=profile.epsilon, params=params,
        lhs_total=comps.lhs_total, s1=comps.s1, s2_low=comps.s2_low,
        s2_high=comps.s2_high, s3=comps.s3, s4=comps.s4,
        residual=comps.decomposition.residual,
        bound_terms=terms, bound_total=total, M=M, L=L,
        triv1_bound=triv1, triv2_bound=triv2,
        theorem_log_exponent=theorem_log_exponent,
        theorem_denominator=denom,
        theorem_ratio=comps.lhs_total / denom)
