"""Exact cyclotomic integers ``sum_u c_u zeta_E^u``.

Values are stored unreduced, as integer vectors of length ``E`` over the
powers of a fixed primitive ``E``-th root of unity.  Character values come
out of the Dixon lift in that shape (eigenvalue multiplicities), which keeps
them auditable.  Equality and integrality go through the canonical form: the
remainder modulo the ``E``-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

__all__ = ["CycInt", "cyclotomic_polynomial", "reduce_mod_cyclotomic"]


@lru_cache(maxsize=None)
def _cyclotomic(E: int) -> tuple[int, ...]:
    # x^E - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (E - 1) + [1]
    for d in range(1, E):
        if E % d == 0:
            num = _exact_div(num, list(_cyclotomic(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] // den[-1]
        q[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


def cyclotomic_polynomial(E: int) -> np.ndarray:
    """Integer coefficients of Phi_E, lowest degree first."""
    return np.array(_cyclotomic(E), dtype=np.int64)


def reduce_mod_cyclotomic(coeffs: np.ndarray, E: int) -> np.ndarray:
    """Remainder of ``sum c_u x^u`` modulo Phi_E, vectorised over leading axes.

    Output has last axis of length ``phi(E)``.
    """
    c = np.array(coeffs, dtype=np.int64, copy=True)
    phi = cyclotomic_polynomial(E)
    deg = phi.size - 1
    for t in range(c.shape[-1] - 1, deg - 1, -1):
        lead = c[..., t].copy()
        if lead.any():
            c[..., t - deg:t + 1] -= lead[..., None] * phi
    return c[..., :deg]


class CycInt:
    """An element of Z[zeta_E] held as an unreduced coefficient vector."""

    __slots__ = ("exponent", "coeffs", "_reduced")

    def __init__(self, exponent: int, coeffs):
        c = np.zeros(exponent, dtype=np.int64)
        src = np.asarray(coeffs, dtype=np.int64).ravel()
        if src.size > exponent:
            # fold higher powers, zeta^E = 1
            for u, v in enumerate(src):
                c[u % exponent] += v
        else:
            c[: src.size] = src
        c.flags.writeable = False
        self.exponent = exponent
        self.coeffs = c
        self._reduced = None

    @classmethod
    def integer(cls, n: int, exponent: int = 1) -> "CycInt":
        c = np.zeros(exponent, dtype=np.int64)
        c[0] = n
        return cls(exponent, c)

    @classmethod
    def zeta(cls, exponent: int, k: int = 1) -> "CycInt":
        c = np.zeros(exponent, dtype=np.int64)
        c[k % exponent] = 1
        return cls(exponent, c)

    # -- representation changes -------------------------------------------

    def lift(self, exponent: int) -> "CycInt":
        """Same number written over a multiple ``exponent`` of ``self.exponent``."""
        if exponent == self.exponent:
            return self
        if exponent % self.exponent:
            raise ValueError(f"{exponent} is not a multiple of {self.exponent}")
        c = np.zeros(exponent, dtype=np.int64)
        c[:: exponent // self.exponent] = self.coeffs
        return CycInt(exponent, c)

    def _common(self, other) -> tuple["CycInt", "CycInt"]:
        if not isinstance(other, CycInt):
            other = CycInt.integer(int(other), self.exponent)
        E = math.lcm(self.exponent, other.exponent)
        return self.lift(E), other.lift(E)

    @property
    def reduced(self) -> np.ndarray:
        if self._reduced is None:
            r = reduce_mod_cyclotomic(self.coeffs, self.exponent)
            r.flags.writeable = False
            self._reduced = r
        return self._reduced

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        return CycInt(a.exponent, a.coeffs + b.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.exponent, -self.coeffs)

    def __sub__(self, other):
        a, b = self._common(other)
        return CycInt(a.exponent, a.coeffs - b.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycInt(self.exponent, self.coeffs * int(other))
        a, b = self._common(other)
        E = a.exponent
        full = np.convolve(a.coeffs, b.coeffs)
        out = full[:E].copy()
        out[: full.size - E] += full[E:]
        return CycInt(E, out)

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        """Complex conjugate: ``zeta^u -> zeta^-u``."""
        idx = (-np.arange(self.exponent)) % self.exponent
        c = np.zeros(self.exponent, dtype=np.int64)
        np.add.at(c, idx, self.coeffs)
        return CycInt(self.exponent, c)

    def galois(self, k: int) -> "CycInt":
        """Image under ``zeta -> zeta^k``, ``gcd(k, E) == 1``."""
        if math.gcd(k, self.exponent) != 1:
            raise ValueError(f"{k} is not a unit mod {self.exponent}")
        idx = (np.arange(self.exponent) * k) % self.exponent
        c = np.zeros(self.exponent, dtype=np.int64)
        np.add.at(c, idx, self.coeffs)
        return CycInt(self.exponent, c)

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.reduced.any()

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = CycInt.integer(int(other), self.exponent)
        if not isinstance(other, CycInt):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # equality crosses exponents; no cheap canonical key

    def is_rational_integer(self) -> bool:
        r = self.reduced
        return r.size == 0 or not r[1:].any()

    def to_int(self) -> int:
        if not self.is_rational_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return int(self.reduced[0]) if self.reduced.size else 0

    def __complex__(self):
        E = self.exponent
        return complex(sum(int(c) * cmath.exp(2j * cmath.pi * u / E) for u, c in enumerate(self.coeffs) if c))

    def __repr__(self):
        terms = [f"{c}*z{u}" if u else str(c) for u, c in enumerate(self.coeffs) if c]
        return f"CycInt(E={self.exponent}: {' + '.join(terms) or '0'})"
