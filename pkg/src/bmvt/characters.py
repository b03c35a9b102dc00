"""Dirichlet characters mod q with exact root-of-unity values.

Characters are built from the CRT decomposition of (Z/qZ)* into cyclic
factors; the 2-power factor splits as {+-1} x <5> when 8 | q.  A character
value at n coprime to q is stored as an exact angle a/m meaning
e^{2 pi i a / m}; conversion to complex happens only inside sums, so
orthogonality and complete multiplicativity are exactly testable.

Discrete logarithms for each cyclic factor are tabulated once per modulus
and the resulting group object is cached; all character tables are
immutable and safe to share across threads.

Convention: the unique character mod 1 is principal and counts as
primitive, so a triple sum over primitive characters picks up the plain
partial-sum term at q = 1.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import IO

import numpy as np

from .errors import (
    BadModulusError,
    InsufficientTableError,
    PrincipalCharacterError,
)
from .funtable import FunTable


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root(p: int) -> int:
    """Smallest primitive root mod an odd prime p."""
    fac = [f for f, _ in _factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // f, p) != 1 for f in fac):
            return g
        g += 1


@dataclass(frozen=True)
class _Block:
    """Cyclic factors of (Z/p^e Z)* inside (Z/qZ)*."""
    prime: int
    power: int
    modulus: int
    orders: tuple[int, ...]          # one entry per cyclic factor
    dlogs: tuple[np.ndarray, ...]    # dlog over residues mod `modulus`


def _odd_block(p: int, e: int) -> _Block:
    P = p ** e
    s = P // p * (p - 1)
    g = _primitive_root(p)
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    tbl = np.full(P, -1, dtype=np.int64)
    x = 1
    for t in range(s):
        tbl[x] = t
        x = x * g % P
    tbl.setflags(write=False)
    return _Block(p, e, P, (s,), (tbl,))


def _two_block(e: int) -> _Block | None:
    P = 1 << e
    if e == 1:
        return None
    if e == 2:
        tbl = np.full(4, -1, dtype=np.int64)
        tbl[1] = 0
        tbl[3] = 1
        tbl.setflags(write=False)
        return _Block(2, 2, 4, (2,), (tbl,))
    s5 = 1 << (e - 2)
    t_eps = np.full(P, -1, dtype=np.int64)
    t_five = np.full(P, -1, dtype=np.int64)
    x = 1
    for t in range(s5):
        t_eps[x] = 0
        t_five[x] = t
        t_eps[P - x] = 1
        t_five[P - x] = t
        x = x * 5 % P
    t_eps.setflags(write=False)
    t_five.setflags(write=False)
    return _Block(2, e, P, (2, s5), (t_eps, t_five))


def _block_conductor(block: _Block, exps: tuple[int, ...]) -> int:
    p = block.prime
    if p != 2 or len(block.orders) == 1:
        (s,) = block.orders
        (a,) = exps
        if a == 0:
            return 1
        if p == 2:
            return 4  # the mod-4 factor
        m = s // math.gcd(s, a)
        u = 0
        while m % p == 0:
            m //= p
            u += 1
        return p ** (u + 1)
    s5 = block.orders[1]
    eps, a = exps
    m5 = s5 // math.gcd(s5, a)
    if m5 > 1:
        return 4 * m5
    return 4 if eps else 1


class CharacterTable:
    """One Dirichlet character mod q.

    ``units[r]`` is the angle numerator at residue r in units of 1/e
    (e = exponent of the unit group), with -1 marking the zero values at
    gcd(n, q) > 1.  Instances are immutable; equality is by
    (modulus, exponents).
    """

    __slots__ = ("modulus", "exponents", "index", "e", "units", "conductor",
                 "primitive", "principal", "order", "phi_q", "_roots", "_values")

    def __init__(self, modulus, exponents, index, e, units, conductor,
                 order, phi_q, roots):
        self.modulus = modulus
        self.exponents = exponents
        self.index = index
        self.e = e
        units.setflags(write=False)
        self.units = units
        self.conductor = conductor
        self.primitive = conductor == modulus
        self.principal = all(a == 0 for a in exponents)
        self.order = order
        self.phi_q = phi_q
        self._roots = roots
        self._values = None

    def __eq__(self, other):
        return (isinstance(other, CharacterTable)
                and self.modulus == other.modulus
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return (f"CharacterTable(q={self.modulus}, exponents={self.exponents}, "
                f"conductor={self.conductor})")

    @property
    def label(self) -> str:
        return f"chi[{self.modulus}.{self.index}]"

    def angle(self, n: int) -> Fraction | None:
        """Exact angle a/m at n (value e^{2 pi i a/m}), or None when chi(n) = 0."""
        u = int(self.units[n % self.modulus])
        if u < 0:
            return None
        return Fraction(u, self.e)

    def value(self, n: int) -> complex:
        u = int(self.units[n % self.modulus])
        if u < 0:
            return 0j
        return complex(self._roots[u])

    def values(self) -> np.ndarray:
        """chi at every residue 0..q-1, as complex128 (cached, read-only)."""
        if self._values is None:
            v = np.where(self.units >= 0, self._roots[np.maximum(self.units, 0)], 0j)
            v.setflags(write=False)
            self._values = v
        return self._values

    def values_prefix(self, x: int) -> np.ndarray:
        """chi(n) for n = 0..x, by tiling the period."""
        vals = self.values()
        reps = x // self.modulus + 1
        return np.tile(vals, reps)[: x + 1]


class CharacterGroup:
    """All characters mod q, with per-factor discrete logs built once."""

    def __init__(self, q: int):
        if q < 1:
            raise BadModulusError(f"modulus must be >= 1, got {q}")
        self.q = q
        blocks = []
        for p, e in _factorize(q):
            blk = _two_block(e) if p == 2 else _odd_block(p, e)
            if blk is not None:
                blocks.append(blk)
        self.blocks = tuple(blocks)
        orders = tuple(s for b in blocks for s in b.orders)
        self.orders = orders
        self.phi = math.prod(orders) if orders else 1
        self.exponent = math.lcm(*orders) if orders else 1
        res = np.arange(q if q > 1 else 1, dtype=np.int64)
        self.coprime = np.gcd(res, q) == 1
        rows = []
        for b in blocks:
            local = res % b.modulus
            for s, tbl in zip(b.orders, b.dlogs):
                rows.append((self.exponent // s) * tbl[local])
        self._W = (np.array(rows, dtype=np.int64) if rows
                   else np.zeros((0, res.size), dtype=np.int64))
        ang = 2.0 * np.pi * np.arange(self.exponent) / self.exponent
        roots = np.cos(ang) + 1j * np.sin(ang)
        roots.setflags(write=False)
        self.roots = roots
        self._chars: tuple[CharacterTable, ...] | None = None

    def _block_exponents(self, exps: tuple[int, ...]):
        i = 0
        for b in self.blocks:
            k = len(b.orders)
            yield b, exps[i: i + k]
            i += k

    def characters(self) -> tuple[CharacterTable, ...]:
        if self._chars is not None:
            return self._chars
        exp_tuples = list(product(*(range(s) for s in self.orders)))
        A = (np.array(exp_tuples, dtype=np.int64) if self.orders
             else np.zeros((1, 0), dtype=np.int64))
        units = (A @ self._W) % self.exponent
        units[:, ~self.coprime] = -1
        chars = []
        for i, exps in enumerate(exp_tuples or [()]):
            cond = 1
            for b, be in self._block_exponents(exps):
                cond *= _block_conductor(b, be)
            order = math.lcm(*(s // math.gcd(s, a)
                               for s, a in zip(self.orders, exps))) if exps else 1
            chars.append(CharacterTable(self.q, tuple(exps), i, self.exponent,
                                        units[i], cond, order, self.phi, self.roots))
        self._chars = tuple(chars)
        return self._chars


@lru_cache(maxsize=64)
def _group(q: int) -> CharacterGroup:
    g = CharacterGroup(q)
    g.characters()
    return g


def enumerate_characters(q: int) -> list[CharacterTable]:
    """All phi(q) characters mod q, principal first; q = 0 is rejected."""
    if q < 1:
        raise BadModulusError(f"modulus must be >= 1, got {q}")
    return list(_group(q).characters())


def conductor(chi: CharacterTable) -> int:
    """Smallest modulus d | q whose characters induce chi."""
    return chi.conductor


@dataclass(frozen=True)
class CharSumResult:
    """max_{y <= x} |sum_{n <= y} f(n) chi(n)| with its location and endpoint."""
    max_abs: float
    argmax_y: int
    final_sum: complex


def char_sum_max(f: FunTable, chi: CharacterTable, x: float) -> CharSumResult:
    """Scan partial sums of f(n) chi(n) at integer y = 1..floor(x).

    Real y is equivalent since the summand changes only at integers.
    Exact angles are converted to complex doubles once per term; the scan
    runs in ascending order, so results are deterministic.
    """
    if x < 1:
        raise ValueError(f"cutoff x must be >= 1, got {x}")
    xi = int(math.floor(x))
    if xi > f.N:
        raise InsufficientTableError(
            f"char_sum_max needs f tabulated to {xi}, table {f.name!r} has N={f.N} "
            f"(q={chi.modulus}, {chi.label})")
    w = f.to_floats()[1: xi + 1]
    cv = chi.values_prefix(xi)[1:]
    ps = np.cumsum(w * cv)
    mags = np.abs(ps)
    i = int(np.argmax(mags))  # first occurrence = smallest y
    return CharSumResult(float(mags[i]), i + 1, complex(ps[-1]))


def polya_vinogradov_ratio(chi: CharacterTable, x: float) -> float:
    """max_{y <= x} |sum_{n <= y} chi(n)| / (sqrt(q) log q), chi non-principal."""
    if chi.principal:
        raise PrincipalCharacterError(
            f"Polya-Vinogradov ratio needs a non-principal character ({chi.label})")
    if x < 1:
        raise ValueError(f"cutoff x must be >= 1, got {x}")
    q = chi.modulus
    xi = int(math.floor(x))
    # partial sums are q-periodic: a full period of a non-principal chi sums to 0
    span = min(xi, q)
    cv = chi.values_prefix(span)[1:]
    m = float(np.max(np.abs(np.cumsum(cv))))
    return m / (math.sqrt(q) * math.log(q))


def polya_vinogradov_max_ratio(q: int, x: float) -> float | None:
    """Largest Polya-Vinogradov ratio over primitive non-principal chi mod q.

    Batches all characters of the modulus through one cumulative-sum pass;
    returns None when the modulus has no primitive non-principal character.
    """
    chars = [c for c in enumerate_characters(q)
             if c.primitive and not c.principal]
    if not chars:
        return None
    span = min(int(math.floor(x)), q)
    rows = np.vstack([c.values()[: span + 1] for c in chars])[:, 1:]
    mags = np.abs(np.cumsum(rows, axis=1))
    return float(mags.max() / (math.sqrt(q) * math.log(q)))


def export_character_csv(chi: CharacterTable, dest: IO[str] | str) -> None:
    """Rows (n, angle_num, angle_den), with the single marker 'zero' at chi(n) = 0."""
    own = isinstance(dest, str)
    fh = open(dest, "w", newline="") if own else dest
    try:
        w = csv.writer(fh)
        w.writerow(["n", "angle_num", "angle_den"])
        for n in range(1, chi.modulus + 1):
            a = chi.angle(n)
            if a is None:
                w.writerow([n, "zero"])
            else:
                w.writerow([n, a.numerator, a.denominator])
    finally:
        if own:
            fh.close()
