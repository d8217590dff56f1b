"""Z/m[ω] for a primitive q-th root of unity ω, in the basis 1, ω, .., ω^{q-2}."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import HypothesisError
from .pcgroup import is_prime


def omega_power_coefficients(q: int, k: int) -> tuple[int, ...]:
    """Integer coefficients of ω^k, using ω^{q-1} = -(1 + ω + .. + ω^{q-2})."""
    r = q - 1
    k %= q
    if k < r:
        return tuple(1 if i == k else 0 for i in range(r))
    return (-1,) * r


def multiplication_tensor(q: int | None) -> np.ndarray:
    """T[i, j, k] = coefficient of ω^k in ω^i ω^j (shape (1,1,1) without extension)."""
    if q is None:
        return np.ones((1, 1, 1), dtype=np.int64)
    r = q - 1
    t = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            t[i, j] = omega_power_coefficients(q, i + j)
    return t


def omega_matrix(q: int | None, power: int = 1) -> np.ndarray:
    """Row i holds the coefficients of ω^power · ω^i."""
    if q is None:
        return np.ones((1, 1), dtype=np.int64)
    r = q - 1
    return np.array([omega_power_coefficients(q, i + power) for i in range(r)], dtype=np.int64)


@dataclass(frozen=True)
class CyclotomicRing:
    q: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise HypothesisError(f"q = {self.q} is not prime")
        if self.modulus < 1:
            raise HypothesisError("modulus must be positive")

    @property
    def rank(self) -> int:
        return self.q - 1

    @cached_property
    def tensor(self) -> np.ndarray:
        return multiplication_tensor(self.q)

    def element(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        if len(coeffs) != self.rank:
            raise ValueError(f"expected {self.rank} coefficients")
        return tuple(int(c) % self.modulus for c in coeffs)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    @property
    def one(self) -> tuple[int, ...]:
        return self.element((1,) + (0,) * (self.rank - 1))

    def omega(self, k: int = 1) -> tuple[int, ...]:
        return self.element(omega_power_coefficients(self.q, k))

    def add(self, a, b):
        return tuple((x + y) % self.modulus for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.modulus for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        out = np.einsum("i,j,ijk->k", np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), self.tensor)
        return tuple(int(x) % self.modulus for x in out)

    def scale(self, a, n: int):
        return tuple(n * x % self.modulus for x in a)

    def q_inverse(self) -> int:
        try:
            return pow(self.q, -1, self.modulus)
        except ValueError:
            raise HypothesisError(f"q = {self.q} is not invertible modulo {self.modulus}") from None
