"""Weighted Vaughan decompositions and dyadic block covers.

For f with f(1) != 0, g, and the derived pair mu_f (convolution inverse)
and lam_fg = mu_f * g, any weight eta with eta = 1 up to V1 yields the
exact four-part identity

    lam_fg = lam_fg_{<=U1}
           - lam_fg_{<=U1} * (mu_f . eta) * f
           + (mu_f . eta) * g
           + lam_fg_{>U1} * (mu_f . (1 - eta)) * f

and the sharp indicator weight recovers the classic decomposition.  The
middle part additionally splits at U0 into the pieces that are estimated
separately.  The identity is exact, so the tabulated residual is the
module's central self-check.

``dyadic_cover`` produces the canonical left-anchored family of blocks
[N1 2^k, N1 2^{k+1}] covering (N1, M1] with as few blocks as that family
allows; ``blockwise_max_sums`` evaluates per-block character sums whose
total dominates the unsplit sum by the triangle inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characters import CharacterTable, char_sum_max
from .errors import BadIntervalError, InsufficientTableError, NotInvertibleError
from .funtable import REAL, FunTable, conv_inverse, convolve, restrict
from .weights import INDICATOR, WeightEta, make_eta, scaled_by_weight


@dataclass(frozen=True)
class VaughanParams:
    """Cut parameters U0 <= U1 and V1 < V2 with the weight built on (V1, V2)."""

    U0: float
    U1: float
    V1: float
    V2: float
    eta: WeightEta

    def __post_init__(self):
        if not (1 <= self.U0 <= self.U1):
            raise BadIntervalError(f"need 1 <= U0 <= U1, got U0={self.U0}, U1={self.U1}")
        if not (1 <= self.V1 < self.V2):
            raise BadIntervalError(f"need 1 <= V1 < V2, got V1={self.V1}, V2={self.V2}")
        if self.eta.V1 != self.V1 or self.eta.V2 != self.V2:
            raise BadIntervalError("weight cut points must match (V1, V2)")

    @classmethod
    def with_kind(cls, U0: float, U1: float, V1: float, V2: float,
                  kind: str = "barban_vehov") -> "VaughanParams":
        return cls(float(U0), float(U1), float(V1), float(V2), make_eta(V1, V2, kind))

    @classmethod
    def classic(cls, U0: float, U1: float, V1: float) -> "VaughanParams":
        """Sharp-truncation preset; V2 = 2 V1 is nominal (the indicator ignores it)."""
        return cls(float(U0), float(U1), float(V1), float(2 * V1),
                   make_eta(V1, 2 * V1, INDICATOR))

    def key(self) -> tuple:
        return (self.U0, self.U1, self.V1, self.V2, self.eta.kind)


@dataclass(frozen=True)
class Decomposition:
    """The four component tables, the U0-split of the second one, and the residual."""

    params: VaughanParams
    N: int
    lambda1: FunTable
    lambda2: FunTable
    lambda3: FunTable
    lambda4: FunTable
    lambda2_low: FunTable    # from lam_fg truncated at U0
    lambda2_high: FunTable   # from the (U0, U1] range
    lambda_fg: FunTable
    mu_f: FunTable
    residual: float

    @property
    def components(self) -> tuple[FunTable, FunTable, FunTable, FunTable]:
        return (self.lambda1, self.lambda2, self.lambda3, self.lambda4)


def _add_tables(a: FunTable, b: FunTable, name: str) -> FunTable:
    if a.is_exact() and b.is_exact():
        vals = [x + y for x, y in zip(a._data, b._data)]
        dom = a.domain if a.domain == b.domain else "exact-rational"
        return FunTable(name, vals, dom, allow_large=True, _padded=True)
    vals = a.to_floats() + b.to_floats()
    return FunTable(name, vals, REAL, allow_large=True, _padded=True)


def _negate(f: FunTable, name: str) -> FunTable:
    if f.is_exact():
        return FunTable(name, [-v for v in f._data], f.domain,
                        allow_large=True, _padded=True)
    return FunTable(name, -f.to_floats(), REAL, allow_large=True, _padded=True)


def _zero_like(f: FunTable, name: str) -> FunTable:
    if f.is_exact():
        return FunTable(name, [0] * (f.N + 1), f.domain, allow_large=True, _padded=True)
    return FunTable(name, np.zeros(f.N + 1), REAL, allow_large=True, _padded=True)


def weighted_decomposition(f: FunTable, g: FunTable, params: VaughanParams,
                           N: int, *, mu_f: FunTable | None = None) -> Decomposition:
    """Tabulate the four decomposition components to length N.

    mu_f and lam_fg = mu_f * g are derived internally; a precomputed mu_f
    may be supplied when the caller already holds one (it must equal
    conv_inverse(f) entrywise).  With an indicator weight this reproduces
    the classic identity exactly.
    """
    if f.N < N or g.N < N:
        raise InsufficientTableError(
            f"decomposition to N={N} needs f and g that long (have {f.N}, {g.N})")
    if f._data[1] == 0:
        raise NotInvertibleError("f(1) = 0 has no convolution inverse")
    if mu_f is None:
        mu_f = conv_inverse(f, length=N)
    elif mu_f.N < N:
        raise InsufficientTableError(f"supplied mu_f covers only {mu_f.N} < {N}")
    lam_fg = convolve(mu_f, g, length=N, name="lam_fg")

    lam1 = restrict(lam_fg, 0, params.U1)
    w = scaled_by_weight(mu_f, params.eta, name="mu_f.eta")
    w_comp = scaled_by_weight(mu_f, params.eta, complement=True, name="mu_f.(1-eta)")

    low = restrict(lam_fg, 0, params.U0)
    lam2_low = _negate(convolve(convolve(low, w, length=N), f, length=N), "lam2_low")
    if params.U0 < params.U1:
        high = restrict(lam_fg, params.U0, params.U1)
        lam2_high = _negate(convolve(convolve(high, w, length=N), f, length=N),
                            "lam2_high")
    else:
        lam2_high = _zero_like(lam_fg, "lam2_high")  # (U0, U1] is empty
    lam2 = _add_tables(lam2_low, lam2_high, "lam2")

    lam3 = convolve(w, g, length=N, name="lam3")

    above = restrict(lam_fg, params.U1, math.inf)
    lam4 = convolve(above, convolve(w_comp, f, length=N), length=N, name="lam4")

    if all(t.is_exact() for t in (lam1, lam2, lam3, lam4, lam_fg)):
        residual = max(abs(lam1._data[n] + lam2._data[n] + lam3._data[n]
                           + lam4._data[n] - lam_fg._data[n])
                       for n in range(1, N + 1))
        residual = float(residual)
    else:
        total = (lam1.to_floats() + lam2.to_floats() + lam3.to_floats()
                 + lam4.to_floats())
        residual = float(np.max(np.abs(total - lam_fg.to_floats())))
    return Decomposition(params, N, lam1, lam2, lam3, lam4,
                         lam2_low, lam2_high, lam_fg, mu_f, residual)


@dataclass(frozen=True)
class DyadicCover:
    """Blocks [N1 2^k, N1 2^{k+1}], k in ks, covering (N1, M1]."""

    N1: float
    M1: float
    ks: tuple[int, ...]
    blocks: tuple[tuple[float, float], ...]


def dyadic_cover(N1: float, M1: float) -> DyadicCover:
    """The left-anchored cover with the fewest blocks of the family.

    ks = {0, .., K-1} where K is minimal with N1 2^K >= M1; multiplication
    by powers of two is exact in binary floating point, so the cover
    property is exact.
    """
    if not 1 <= N1 < M1:
        raise BadIntervalError(f"need 1 <= N1 < M1, got N1={N1}, M1={M1}")
    K = 1
    while N1 * (1 << K) < M1:
        K += 1
    ks = tuple(range(K))
    blocks = tuple((N1 * (1 << k), N1 * (1 << (k + 1))) for k in ks)
    return DyadicCover(float(N1), float(M1), ks, blocks)


def blockwise_max_sums(f1: FunTable, f2: FunTable, cover: DyadicCover,
                       chi: CharacterTable, x: float) -> list[float]:
    """Per-block max character sums of (f1~_{(T,2T]} * f2_{<= x/T}) up to x.

    f1~ is f1 restricted to (N1, M1].  Because the blocks partition the
    support of f1~ (half-open intervals), the sum of the returned list
    dominates the unsplit maximum by the triangle inequality.
    """
    xi = int(math.floor(x))
    if f1.N < xi or f2.N < xi:
        raise InsufficientTableError(
            f"blockwise sums to x={xi} need both tables that long "
            f"(have {f1.N}, {f2.N})")
    f1r = restrict(f1, cover.N1, cover.M1)
    out = []
    for k in cover.ks:
        t = cover.N1 * (1 << k)
        blk = restrict(f1r, t, 2 * t)
        f2t = restrict(f2, 0, x / t)
        h = convolve(blk, f2t, length=xi)
        out.append(char_sum_max(h, chi, xi).max_abs)
    return out
