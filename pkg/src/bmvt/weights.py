"""Barban-Vehov style sieve weights and the quadratic/bilinear sums they control.

The weight eta = eta(b; V1, V2) equals 1 up to V1, decays like
log(V2/b) / log(V2/V1) on (V1, V2], and vanishes beyond V2.  The quantity

    h4_ratio = log(V2/V1) / V * sum_{n <= V} |((mu_f . eta) * f)(n)|^2

is the normalized quadratic sum that the weight keeps bounded; the Graham
weights Gamma_i(b) = mu_f(b) log(V_i / b) (b <= V_i) feed the bilinear
refinement sum_{n <= V} (Gamma_1 * f)(n) (Gamma_2 * f)(n) = V log V1 + O(V),
and the pointwise identity eta . mu_f = (Gamma_2 - Gamma_1) / log(V2/V1)
links the two; ``h4prime_implies_h4_check`` evaluates that identity's
defect, which must be numerically zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadCutsError, InsufficientTableError
from .funtable import REAL, FunTable, conv_inverse, convolve, zero_extend

BARBAN_VEHOV = "barban_vehov"
INDICATOR = "indicator"
USER_TABLE = "user_table"


@dataclass(frozen=True)
class WeightEta:
    """A weight b -> eta(b) with eta = 1 below V1 and 0 above V2."""

    V1: float
    V2: float
    kind: str
    bound: float = 1.0
    table: tuple[float, ...] | None = None

    def __call__(self, b: float) -> float:
        if b <= self.V1:
            return 1.0
        if b > self.V2:
            return 0.0
        if self.kind == BARBAN_VEHOV:
            return math.log(self.V2 / b) / math.log(self.V2 / self.V1)
        if self.kind == INDICATOR:
            return 0.0
        bi = int(b)
        if bi != b or bi > len(self.table):
            raise ValueError(f"user table has no value at b = {b}")
        return self.table[bi - 1]

    def values_up_to(self, n: int) -> np.ndarray:
        """eta(b) for b = 0..n (index 0 unused, set to 0)."""
        b = np.arange(n + 1, dtype=np.float64)
        out = np.zeros(n + 1, dtype=np.float64)
        out[1:] = (b[1:] <= self.V1).astype(np.float64)
        mid = (b > self.V1) & (b <= self.V2)
        if self.kind == BARBAN_VEHOV and mid.any():
            out[mid] = np.log(self.V2 / b[mid]) / math.log(self.V2 / self.V1)
        elif self.kind == USER_TABLE and mid.any():
            idx = np.flatnonzero(mid)
            out[idx] = [self(float(i)) for i in idx]
        return out


def make_eta(V1: float, V2: float, kind: str = BARBAN_VEHOV, *,
             table=None, bound: float | None = None) -> WeightEta:
    """Build a weight on cut points 1 <= V1 < V2.

    The ``indicator`` kind is the sharp truncation 1_[1, V1], which turns
    the weighted decomposition into the classic one.
    """
    if not (1 <= V1 < V2):
        raise BadCutsError(f"need 1 <= V1 < V2, got V1={V1}, V2={V2}")
    if kind in (BARBAN_VEHOV, INDICATOR):
        return WeightEta(float(V1), float(V2), kind, 1.0)
    if kind != USER_TABLE:
        raise ValueError(f"unknown weight kind {kind!r}")
    if table is None:
        raise ValueError("user_table weights need a value table")
    tbl = tuple(float(v) for v in table)
    for b, v in enumerate(tbl, start=1):
        if b <= V1 and v != 1.0:
            raise BadCutsError(f"eta({b}) must be 1 below V1")
        if b > V2 and v != 0.0:
            raise BadCutsError(f"eta({b}) must be 0 above V2")
    b = float(bound) if bound is not None else max((abs(v) for v in tbl), default=1.0)
    return WeightEta(float(V1), float(V2), USER_TABLE, b, tbl)


@dataclass(frozen=True)
class GrahamWeight:
    """Gamma_i(b) = mu_f(b) log(V_i / b) for b <= V_i, else 0."""

    Vi: float
    base: FunTable          # the mu_f the weight was built from
    table: FunTable


def graham_weight(mu_f: FunTable, Vi: float) -> GrahamWeight:
    if Vi < 1:
        raise BadCutsError(f"cutoff V_i must be >= 1, got {Vi}")
    n = mu_f.N
    b = np.arange(n + 1, dtype=np.float64)
    vals = np.zeros(n + 1, dtype=np.float64)
    top = min(n, int(math.floor(Vi)))
    if top >= 1:
        vals[1: top + 1] = mu_f.to_floats()[1: top + 1] * np.log(Vi / b[1: top + 1])
    return GrahamWeight(float(Vi), mu_f,
                        FunTable(f"graham({mu_f.name},{Vi:g})", vals, REAL,
                                 allow_large=True, _padded=True))


def scaled_by_weight(f: FunTable, eta: WeightEta, *, complement: bool = False,
                     name: str | None = None) -> FunTable:
    """Pointwise product f . eta (or f . (1 - eta)).

    Stays exact when f is exact and the weight takes only 0/1 values
    (indicator kind); otherwise the result is real.
    """
    n = f.N
    label = name or (f"{f.name}.(1-eta)" if complement else f"{f.name}.eta")
    if f.is_exact() and eta.kind == INDICATOR:
        cut = eta.V1
        out = [0] * (n + 1)
        for b in range(1, n + 1):
            keep = (b > cut) if complement else (b <= cut)
            if keep:
                out[b] = f._data[b]
        return FunTable(label, out, f.domain, allow_large=True, _padded=True)
    ev = eta.values_up_to(n)
    if complement:
        ev = 1.0 - ev
    vals = f.to_floats() * ev
    return FunTable(label, vals, REAL, allow_large=True, _padded=True)


def _mu_and_weighted(f: FunTable, eta: WeightEta, V: int):
    """mu_f to the needed length and the convolution ((mu_f . eta) * f) to V."""
    if f.N < V:
        raise InsufficientTableError(
            f"need f tabulated to {V}, table {f.name!r} has N={f.N}")
    lim = min(int(math.floor(eta.V2)), V)
    mu = conv_inverse(f, length=lim)
    # mu_f . eta vanishes above V2, so the short table zero-extends exactly
    w = zero_extend(scaled_by_weight(mu, eta), V)
    c = convolve(w, f, length=V)
    return mu, c


def h4_ratio(f: FunTable, eta: WeightEta, V: float) -> float:
    """log(V2/V1) / V times sum_{n <= V} |((mu_f . eta) * f)(n)|^2.

    This is the quantity the weight construction keeps bounded as V grows;
    it is reported raw so that harness runs can record and regress it.
    """
    Vi = int(math.floor(V))
    if Vi < 1:
        raise ValueError(f"cutoff V must be >= 1, got {V}")
    _, c = _mu_and_weighted(f, eta, Vi)
    a = c.to_floats()[1: Vi + 1]
    s = float(np.dot(a, a))
    return s * math.log(eta.V2 / eta.V1) / Vi


def h4prime_bilinear(f: FunTable, V1: float, V2: float, V: float) -> tuple[float, float]:
    """The bilinear sum sum_{n <= V} (Gamma_1 * f)(n) (Gamma_2 * f)(n).

    Returns (sum, normalized) with normalized = (sum - V log V1) / V, the
    per-unit defect against the main term V log V1.
    """
    if not (1 <= V1 < V2):
        raise BadCutsError(f"need 1 <= V1 < V2, got V1={V1}, V2={V2}")
    Vi = int(math.floor(V))
    if Vi < 1:
        raise ValueError(f"cutoff V must be >= 1, got {V}")
    if f.N < Vi:
        raise InsufficientTableError(
            f"need f tabulated to {Vi}, table {f.name!r} has N={f.N}")
    lim = min(int(math.floor(V2)), Vi)
    mu = conv_inverse(f, length=lim)
    g1 = convolve(zero_extend(graham_weight(mu, V1).table, Vi), f,
                  length=Vi).to_floats()[1:]
    g2 = convolve(zero_extend(graham_weight(mu, V2).table, Vi), f,
                  length=Vi).to_floats()[1:]
    s = float(np.dot(g1, g2))
    return s, (s - Vi * math.log(V1)) / Vi


def h4prime_implies_h4_check(f: FunTable, V1: float, V2: float, V: float) -> float:
    """Defect of log^2(V2/V1) c(n)^2 = (G1(n) - G2(n))^2 with c = (mu_f . eta) * f.

    The underlying weight identity eta . mu_f = (Gamma_2 - Gamma_1) / log(V2/V1)
    is exact, so the returned maximum over n <= V is numerically zero.
    """
    eta = make_eta(V1, V2, BARBAN_VEHOV)
    Vi = int(math.floor(V))
    if Vi < 1:
        raise ValueError(f"cutoff V must be >= 1, got {V}")
    if f.N < Vi:
        raise InsufficientTableError(
            f"need f tabulated to {Vi}, table {f.name!r} has N={f.N}")
    lim = min(int(math.floor(V2)), Vi)
    mu = conv_inverse(f, length=lim)
    w = zero_extend(scaled_by_weight(mu, eta), Vi)
    c = convolve(w, f, length=Vi).to_floats()[1:]
    g1 = convolve(zero_extend(graham_weight(mu, V1).table, Vi), f,
                  length=Vi).to_floats()[1:]
    g2 = convolve(zero_extend(graham_weight(mu, V2).table, Vi), f,
                  length=Vi).to_floats()[1:]
    lhs = (math.log(V2 / V1) ** 2) * c * c
    rhs = g1 * g1 + g2 * g2 - 2.0 * g1 * g2
    return float(np.max(np.abs(lhs - rhs)))
