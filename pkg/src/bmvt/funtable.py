"""Tabulated arithmetic functions and their Dirichlet-convolution algebra.

A ``FunTable`` holds f(1..N) together with a value-domain tag.  Exact
domains (``exact-int``, ``exact-rational``) store Python ints/Fractions so
that identities such as mu_f * f = indicator hold with zero error; the
``real`` domain stores float64 and must stay finite.  Tables are immutable
after construction and safe to share across threads.

Standard constructions:

    one(n)          = 1
    log(n)          = ln n                      (ln 1 = 0 exactly)
    log_pow(k)(n)   = (ln n)^k                  (k = 0 gives the all-ones table)
    mobius(n)       = mu(n), by sieve
    totient(n)      = phi(n), by sieve
    von_mangoldt(n) = ln p at prime powers p^m, else 0
    lambda_k(k)     = mu * log^k, by sieve recursion (lambda_1 = von Mangoldt)

Dirichlet convolution (f * g)(n) = sum_{d|n} f(d) g(n/d) costs O(N log N)
via the d, m <= N/d double loop; the float path skips zero entries of the
sparser factor, so truncated tables convolve cheaply.
"""

from __future__ import annotations

import csv
import math
import struct
from fractions import Fraction
from typing import IO, Sequence

import numpy as np

from .errors import (
    BadIntervalError,
    CacheError,
    EmptyTableError,
    InsufficientTableError,
    NotInvertibleError,
    UnsupportedFunctionError,
)

EXACT_INT = "exact-int"
EXACT_RATIONAL = "exact-rational"
REAL = "real"

DOMAINS = (EXACT_INT, EXACT_RATIONAL, REAL)

#: Hard default on table length; construction beyond it needs allow_large=True.
DEFAULT_LENGTH_CAP = 10_000_000

_MAGIC = b"FTAB"
_FORMAT_VERSION = 1
_DOMAIN_CODES = {EXACT_INT: 0, EXACT_RATIONAL: 1, REAL: 2}
_DOMAIN_FROM_CODE = {v: k for k, v in _DOMAIN_CODES.items()}

STANDARD_NAMES = ("one", "log", "mobius", "von_mangoldt", "totient", "log_pow", "lambda_k")


class FunTable:
    """An arithmetic function tabulated on n = 1..N.

    ``values`` exposes exactly N entries with values[0] = f(1); indexing
    with ``table[n]`` uses the natural argument n in 1..N.
    """

    __slots__ = ("name", "N", "domain", "_data", "_floats")

    def __init__(self, name: str, values: Sequence, domain: str, *,
                 allow_large: bool = False, _padded: bool = False):
        if domain not in DOMAINS:
            raise ValueError(f"unknown value domain {domain!r}")
        if _padded:
            n = len(values) - 1
        else:
            n = len(values)
        if n < 1:
            raise EmptyTableError("a table must cover at least n = 1")
        if n > DEFAULT_LENGTH_CAP and not allow_large:
            raise ValueError(
                f"table length {n} exceeds the default cap {DEFAULT_LENGTH_CAP}; "
                "pass allow_large=True to opt in")
        self.name = name
        self.N = n
        self.domain = domain
        if domain == REAL:
            if _padded and isinstance(values, np.ndarray) and values.dtype == np.float64:
                a = values
                if a[0] != 0.0:
                    raise ValueError("padded real tables must keep index 0 at 0")
            else:
                a = np.zeros(n + 1, dtype=np.float64)
                a[1:] = np.asarray(values[1:] if _padded else values, dtype=np.float64)
            if not np.all(np.isfinite(a)):
                raise ValueError("real tables must hold finite values only")
            a.setflags(write=False)
            self._data = a
            self._floats = a
        else:
            if _padded:
                self._data = tuple(values)
            else:
                self._data = (0,) + tuple(values)
            self._floats = None

    @property
    def values(self) -> Sequence:
        """The N tabulated values, values[i] = f(i + 1)."""
        return self._data[1:]

    def __getitem__(self, n: int):
        if not 1 <= n <= self.N:
            raise IndexError(f"argument {n} outside table range 1..{self.N}")
        return self._data[n]

    def __len__(self) -> int:
        return self.N

    def __repr__(self) -> str:
        return f"FunTable({self.name!r}, N={self.N}, domain={self.domain})"

    def is_exact(self) -> bool:
        return self.domain != REAL

    def to_floats(self) -> np.ndarray:
        """Read-only float64 view padded so that arr[n] = f(n), arr[0] = 0."""
        if self._floats is None:
            a = np.zeros(self.N + 1, dtype=np.float64)
            a[1:] = [float(v) for v in self._data[1:]]
            a.setflags(write=False)
            self._floats = a
        return self._floats

    # -- serialization ------------------------------------------------------

    def save(self, path) -> None:
        """Write the binary cache format: header + raw little-endian values."""
        with open(path, "wb") as fh:
            name_b = self.name.encode("utf-8")
            fh.write(_MAGIC)
            fh.write(struct.pack("<IBH", _FORMAT_VERSION, _DOMAIN_CODES[self.domain], len(name_b)))
            fh.write(name_b)
            fh.write(struct.pack("<Q", self.N))
            if self.domain == REAL:
                fh.write(self._data[1:].astype("<f8").tobytes())
            elif self.domain == EXACT_INT:
                try:
                    arr = np.array(self._data[1:], dtype="<i8")
                except OverflowError as exc:
                    raise CacheError(
                        "exact-int values exceed int64; table not cacheable") from exc
                fh.write(arr.tobytes())
            else:
                nums = []
                dens = []
                for v in self._data[1:]:
                    fr = Fraction(v)
                    nums.append(fr.numerator)
                    dens.append(fr.denominator)
                arr = np.empty(2 * self.N, dtype="<i8")
                try:
                    arr[0::2] = nums
                    arr[1::2] = dens
                except OverflowError as exc:
                    raise CacheError(
                        "rational values exceed int64; table not cacheable") from exc
                fh.write(arr.tobytes())

    def to_csv(self, dest: IO[str] | str) -> None:
        """Export rows (n, value); rationals are written as num/den."""
        own = isinstance(dest, str)
        fh = open(dest, "w", newline="") if own else dest
        try:
            w = csv.writer(fh)
            w.writerow(["n", "value"])
            for n in range(1, self.N + 1):
                v = self._data[n]
                if isinstance(v, Fraction) and v.denominator != 1:
                    w.writerow([n, f"{v.numerator}/{v.denominator}"])
                elif self.domain == REAL:
                    w.writerow([n, repr(float(v))])
                else:
                    w.writerow([n, int(v) if isinstance(v, Fraction) else v])
        finally:
            if own:
                fh.close()


def load_table(path) -> FunTable:
    """Read a table written by :meth:`FunTable.save`."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise CacheError(f"{path}: not a table cache file")
        version, dom_code, name_len = struct.unpack("<IBH", fh.read(7))
        if version != _FORMAT_VERSION:
            raise CacheError(f"{path}: unsupported cache version {version}")
        name = fh.read(name_len).decode("utf-8")
        (n,) = struct.unpack("<Q", fh.read(8))
        domain = _DOMAIN_FROM_CODE.get(dom_code)
        if domain is None:
            raise CacheError(f"{path}: unknown domain code {dom_code}")
        if domain == REAL:
            raw = np.frombuffer(fh.read(8 * n), dtype="<f8")
            if raw.size != n:
                raise CacheError(f"{path}: truncated payload")
            return FunTable(name, raw.astype(np.float64), REAL, allow_large=True)
        if domain == EXACT_INT:
            raw = np.frombuffer(fh.read(8 * n), dtype="<i8")
            if raw.size != n:
                raise CacheError(f"{path}: truncated payload")
            return FunTable(name, [int(v) for v in raw], EXACT_INT, allow_large=True)
        raw = np.frombuffer(fh.read(16 * n), dtype="<i8")
        if raw.size != 2 * n:
            raise CacheError(f"{path}: truncated payload")
        vals = []
        for num, den in zip(raw[0::2], raw[1::2]):
            fr = Fraction(int(num), int(den))
            vals.append(fr.numerator if fr.denominator == 1 else fr)
        return FunTable(name, vals, EXACT_RATIONAL, allow_large=True)


# -- prime machinery ---------------------------------------------------------

def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n, via a byte sieve."""
    if n < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def prime_powers_up_to(n: int) -> list[tuple[int, float]]:
    """Pairs (p^m, ln p) for all prime powers p^m <= n."""
    out = []
    for p in primes_up_to(n):
        p = int(p)
        lp = math.log(p)
        pk = p
        while pk <= n:
            out.append((pk, lp))
            pk *= p
    out.sort()
    return out


def _mobius_values(n: int) -> list[int]:
    mu = np.ones(n + 1, dtype=np.int64)
    mu[0] = 0
    for p in primes_up_to(n):
        p = int(p)
        mu[p::p] *= -1
        sq = p * p
        if sq <= n:
            mu[sq::sq] = 0
    return [int(v) for v in mu]


def _totient_values(n: int) -> list[int]:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in primes_up_to(n):
        p = int(p)
        phi[p::p] -= phi[p::p] // p
    phi[0] = 0
    return [int(v) for v in phi]


def _von_mangoldt_array(n: int) -> np.ndarray:
    a = np.zeros(n + 1, dtype=np.float64)
    for pk, lp in prime_powers_up_to(n):
        a[pk] = lp
    return a


def _lambda_k_array(k: int, n: int) -> np.ndarray:
    """mu * log^k by the recursion lam_{k+1} = lam_k * log + Lambda (*) lam_k."""
    if k == 0:
        a = np.zeros(n + 1, dtype=np.float64)
        a[1] = 1.0
        return a
    vm = _von_mangoldt_array(n)
    if k == 1:
        return vm
    pows = prime_powers_up_to(n)
    lg = np.zeros(n + 1, dtype=np.float64)
    lg[1:] = np.log(np.arange(1, n + 1, dtype=np.float64))
    lam = vm
    for _ in range(k - 1):
        nxt = lam * lg
        for pk, lp in pows:
            lim = n // pk
            nxt[pk:: pk] += lp * lam[1: lim + 1]
        lam = nxt
    return lam


def _parse_standard_name(name: str, k: int | None) -> tuple[str, int | None]:
    base = name
    if "(" in name:
        if not name.endswith(")"):
            raise UnsupportedFunctionError(f"malformed function name {name!r}")
        base, arg = name[:-1].split("(", 1)
        try:
            parsed = int(arg)
        except ValueError as exc:
            raise UnsupportedFunctionError(f"malformed function name {name!r}") from exc
        if k is not None and k != parsed:
            raise UnsupportedFunctionError(
                f"conflicting exponents in {name!r} and k={k}")
        k = parsed
    if base not in STANDARD_NAMES:
        raise UnsupportedFunctionError(f"unknown standard function {name!r}")
    if base in ("log_pow", "lambda_k"):
        if k is None:
            raise UnsupportedFunctionError(f"{base} needs an exponent k")
        if k < 0 or int(k) != k:
            raise UnsupportedFunctionError(f"{base} needs an integer k >= 0, got {k}")
    elif k is not None:
        raise UnsupportedFunctionError(f"{base} does not take an exponent")
    return base, k


def build_standard(name: str, N: int, k: int | None = None, *,
                   allow_large: bool = False) -> FunTable:
    """Build a standard table; ``name`` may carry the exponent, e.g. ``lambda_k(2)``.

    mobius/totient/one are exact-int; log, log_pow, von_mangoldt and
    lambda_k are real.  von_mangoldt and lambda_k come from sieves, not
    literal convolutions, but agree with mu * log^k entrywise.
    """
    if N < 1:
        raise EmptyTableError("table length must be >= 1")
    base, k = _parse_standard_name(name, k)
    if N > DEFAULT_LENGTH_CAP and not allow_large:
        raise ValueError(
            f"table length {N} exceeds the default cap {DEFAULT_LENGTH_CAP}; "
            "pass allow_large=True to opt in")

    if base == "one":
        return FunTable("one", (0,) + (1,) * N, EXACT_INT, allow_large=True, _padded=True)
    if base == "mobius":
        vals = _mobius_values(N)
        return FunTable("mobius", vals, EXACT_INT, allow_large=True, _padded=True)
    if base == "totient":
        vals = _totient_values(N)
        return FunTable("totient", vals, EXACT_INT, allow_large=True, _padded=True)
    if base == "log":
        a = np.zeros(N + 1, dtype=np.float64)
        a[1:] = np.log(np.arange(1, N + 1, dtype=np.float64))
        return FunTable("log", a, REAL, allow_large=True, _padded=True)
    if base == "log_pow":
        a = np.zeros(N + 1, dtype=np.float64)
        if k == 0:
            a[1:] = 1.0  # 0^0 = 1 at n = 1, so log^0 is the all-ones table
        else:
            a[1:] = np.log(np.arange(1, N + 1, dtype=np.float64)) ** k
        return FunTable(f"log_pow({k})", a, REAL, allow_large=True, _padded=True)
    if base == "von_mangoldt":
        return FunTable("von_mangoldt", _von_mangoldt_array(N), REAL,
                        allow_large=True, _padded=True)
    # lambda_k
    return FunTable(f"lambda_k({k})", _lambda_k_array(k, N), REAL,
                    allow_large=True, _padded=True)


# -- convolution algebra -----------------------------------------------------

def _result_domain(f: FunTable, g: FunTable) -> str:
    if f.domain == REAL or g.domain == REAL:
        return REAL
    if f.domain == EXACT_RATIONAL or g.domain == EXACT_RATIONAL:
        return EXACT_RATIONAL
    return EXACT_INT


def convolve(f: FunTable, g: FunTable, *, length: int | None = None,
             name: str | None = None) -> FunTable:
    """Dirichlet convolution, tabulated to min(N_f, N_g) (or ``length``)."""
    n = min(f.N, g.N)
    if length is not None:
        if length < 1:
            raise EmptyTableError("convolution length must be >= 1")
        if length > n:
            raise InsufficientTableError(
                f"convolution to length {length} needs both inputs that long "
                f"(have {f.N} and {g.N})")
        n = length
    name = name or f"({f.name} * {g.name})"
    domain = _result_domain(f, g)
    if domain != REAL:
        out = [0] * (n + 1)
        fd = f._data
        gd = g._data
        for d in range(1, n + 1):
            fv = fd[d]
            if fv == 0:
                continue
            for m in range(1, n // d + 1):
                out[d * m] += fv * gd[m]
        return FunTable(name, out, domain, allow_large=True, _padded=True)
    fa = f.to_floats()
    ga = g.to_floats()
    # iterate over the sparser factor; convolution is commutative
    nz_f = int(np.count_nonzero(fa[: n + 1]))
    nz_g = int(np.count_nonzero(ga[: n + 1]))
    if nz_g < nz_f:
        fa, ga = ga, fa
    out = np.zeros(n + 1, dtype=np.float64)
    for d in np.flatnonzero(fa[: n + 1]):
        d = int(d)
        lim = n // d
        out[d:: d] += fa[d] * ga[1: lim + 1]
    return FunTable(name, out, REAL, allow_large=True, _padded=True)


def conv_inverse(f: FunTable, *, length: int | None = None) -> FunTable:
    """The unique mu_f with (mu_f * f)(n) = [n = 1]; needs f(1) != 0.

    Exact input gives an exact-rational table (plain ints whenever
    f(1) = +-1); real input gives a real table.
    """
    n = f.N if length is None else length
    if n < 1:
        raise EmptyTableError("inverse length must be >= 1")
    if n > f.N:
        raise InsufficientTableError(f"inverse to length {n} needs f tabulated that far")
    name = f"inv({f.name})"
    if f.domain == REAL:
        fa = f.to_floats()
        f1 = fa[1]
        if f1 == 0.0:
            raise NotInvertibleError("f(1) = 0 has no convolution inverse")
        out = np.zeros(n + 1, dtype=np.float64)
        acc = np.zeros(n + 1, dtype=np.float64)
        out[1] = 1.0 / f1
        for m in range(1, n + 1):
            if m > 1:
                out[m] = -acc[m] / f1
            v = out[m]
            if v != 0.0:
                lim = n // m
                if lim >= 2:
                    acc[2 * m:: m] += v * fa[2: lim + 1]
        return FunTable(name, out, REAL, allow_large=True, _padded=True)

    fd = f._data
    f1 = fd[1]
    if f1 == 0:
        raise NotInvertibleError("f(1) = 0 has no convolution inverse")
    # 1/f(1) stays a plain int when f(1) = +-1, a Fraction otherwise
    inv1 = f1 if f1 in (1, -1) else Fraction(1, 1) / Fraction(f1)
    out = [0] * (n + 1)
    acc = [0] * (n + 1)
    out[1] = inv1
    for m in range(1, n + 1):
        if m > 1:
            out[m] = -acc[m] * inv1
        v = out[m]
        if v != 0:
            for mm in range(2, n // m + 1):
                fv = fd[mm]
                if fv != 0:
                    acc[m * mm] += v * fv
    return FunTable(name, out, EXACT_RATIONAL, allow_large=True, _padded=True)


def zero_extend(f: FunTable, n: int) -> FunTable:
    """Extend the table with zeros up to length n.

    Only meaningful when the function is known to vanish beyond f.N
    (restricted or weight-supported tables); the caller asserts that.
    """
    if n <= f.N:
        return f
    if f.domain == REAL:
        out = np.zeros(n + 1, dtype=np.float64)
        out[: f.N + 1] = f._data
        return FunTable(f.name, out, REAL, allow_large=True, _padded=True)
    out = list(f._data) + [0] * (n - f.N)
    return FunTable(f.name, out, f.domain, allow_large=True, _padded=True)


def restrict(f: FunTable, lo: float, hi: float) -> FunTable:
    """f restricted to the half-open interval (lo, hi]; same length and domain."""
    if not lo < hi:
        raise BadIntervalError(f"need lo < hi, got ({lo}, {hi}]")
    n = f.N
    first = max(int(math.floor(lo)) + 1, 1)  # smallest integer > lo, at least 1
    last = n if math.isinf(hi) else min(n, int(math.floor(hi)))
    name = f"{f.name}|({lo},{hi}]"
    if f.domain == REAL:
        out = np.zeros(n + 1, dtype=np.float64)
        if first <= last:
            out[first: last + 1] = f._data[first: last + 1]
        return FunTable(name, out, REAL, allow_large=True, _padded=True)
    out = [0] * (n + 1)
    if first <= last:
        out[first: last + 1] = f._data[first: last + 1]
    return FunTable(name, out, f.domain, allow_large=True, _padded=True)


class PartialSumProfile:
    """Cumulative sums S(x) = sum_{n <= x} |f(n)| / n^k for x = 1..N.

    ``sums`` is padded so that sums[x] is the sum up to x; summation runs
    in ascending n, so results are bit-reproducible.
    """

    __slots__ = ("base", "k", "sums")

    def __init__(self, base: FunTable, k: float, sums: np.ndarray):
        self.base = base
        self.k = k
        sums.setflags(write=False)
        self.sums = sums

    def at(self, x: float) -> float:
        xi = int(math.floor(x))
        if not 1 <= xi <= self.base.N:
            raise InsufficientTableError(f"partial sums tabulated to {self.base.N}, asked {x}")
        return float(self.sums[xi])


def weighted_partial_sums(f: FunTable, k: float) -> PartialSumProfile:
    """Profile of sum_{n <= x} |f(n)| / n^k for a weight exponent k in [0, 1]."""
    if not 0 <= k <= 1:
        raise ValueError(f"weight exponent k must lie in [0, 1], got {k}")
    a = np.abs(f.to_floats()[1:])
    if k != 0:
        a = a / np.arange(1, f.N + 1, dtype=np.float64) ** k
    sums = np.zeros(f.N + 1, dtype=np.float64)
    np.cumsum(a, out=sums[1:])
    return PartialSumProfile(f, float(k), sums)
