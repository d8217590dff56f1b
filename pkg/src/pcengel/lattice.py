"""Finite abelian groups ⊕ Z/d_c: invariant factors and additive subgroups."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp


def smith_form(rows: Sequence[Sequence[int]]) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Diagonal entries and unimodular U, V with U A V = D for an integer matrix A."""
    m = len(rows)
    if m == 0:
        return [], np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64)
    a = Matrix(rows)
    d, u, v = smith_normal_decomp(a)
    if u * a * v != d:  # pragma: no cover - guards the library contract
        raise ArithmeticError("Smith decomposition failed to verify")
    k = min(d.rows, d.cols)
    diag = [abs(int(d[i, i])) for i in range(k)]
    for i in range(k):
        if d[i, i] < 0:
            u[i, :] = -u[i, :]
    return diag, np.array(u.tolist(), dtype=np.int64), np.array(v.tolist(), dtype=np.int64)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s a + t b = g = gcd(a, b); (a, 1, 0) whenever a | b."""
    if a and b % a == 0:
        return abs(a), (1 if a > 0 else -1), 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class Span:
    """Additive subgroup of ⊕ Z/d_c generated by integer vectors.

    Stored as the Hermite basis of the preimage lattice in Z^N (which contains
    every d_c e_c), so equal subgroups have equal ``rows``.
    """

    __slots__ = ("moduli", "_piv")

    def __init__(self, moduli: Sequence[int], generators: Iterable[Sequence[int]] = ()):
        self.moduli = tuple(int(d) for d in moduli)
        n = len(self.moduli)
        self._piv = [[d if k == c else 0 for k in range(n)] for c, d in enumerate(self.moduli)]
        for v in generators:
            self._insert(v)
        self._reduce()

    def _insert(self, v: Sequence[int]) -> None:
        mod = self.moduli
        v = [int(x) % d for x, d in zip(v, mod)]
        for c in range(len(mod)):
            a = v[c]
            if a == 0:
                continue
            b = self._piv[c]
            g0 = b[c]
            g, s, t = _xgcd(g0, a)
            new_b = [s * bi + t * vi for bi, vi in zip(b, v)]
            v = [(a // g) * bi - (g0 // g) * vi for bi, vi in zip(b, v)]
            for k in range(c + 1, len(mod)):
                new_b[k] %= mod[k]
                v[k] %= mod[k]
            self._piv[c] = new_b

    def _reduce(self) -> None:
        piv = self._piv
        for c in range(len(self.moduli)):
            for c2 in range(c + 1, len(self.moduli)):
                h = piv[c2][c2]
                f = piv[c][c2] // h
                if f:
                    piv[c] = [x - f * y for x, y in zip(piv[c], piv[c2])]

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r) for r in self._piv)

    @property
    def order(self) -> int:
        return math.prod(d // self._piv[c][c] for c, d in enumerate(self.moduli))

    @property
    def is_zero(self) -> bool:
        return self.order == 1

    def generators(self) -> list[tuple[int, ...]]:
        out = []
        for r in self._piv:
            v = tuple(x % d for x, d in zip(r, self.moduli))
            if any(v):
                out.append(v)
        return out

    def __contains__(self, v: Sequence[int]) -> bool:
        v = [int(x) % d for x, d in zip(v, self.moduli)]
        for c in range(len(self.moduli)):
            h = self._piv[c][c]
            if v[c] % h:
                return False
            f = v[c] // h
            if f:
                v = [x - f * y for x, y in zip(v, self._piv[c])]
                for k in range(c + 1, len(self.moduli)):
                    v[k] %= self.moduli[k]
        return True

    def __le__(self, other: "Span") -> bool:
        return all(g in other for g in self.generators())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        return self.moduli == other.moduli and self.rows == other.rows

    def __hash__(self):
        return hash((self.moduli, self.rows))

    def __add__(self, other: "Span") -> "Span":
        return Span(self.moduli, self.generators() + other.generators())

    def __repr__(self):
        return f"Span(order={self.order}, moduli={self.moduli})"


def all_vectors(moduli: Sequence[int]) -> np.ndarray:
    """Every element of ⊕ Z/d_c as rows."""
    if not moduli:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices(tuple(moduli)).reshape(len(moduli), -1).T
    return grids.astype(np.int64)
