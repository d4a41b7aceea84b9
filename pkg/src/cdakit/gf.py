"""Finite fields GF(p^m) for q = p^m <= 2^16.

Elements are the integers 0..q-1; element ``e`` stands for the polynomial
whose base-p digits (least significant first) are its coefficients, so 0
and 1 are the additive and multiplicative identities and, for m > 1, the
label ``p`` is the class of x.

Extension fields are reduced modulo a fixed primitive polynomial.  Where
a Conway polynomial is listed in ``CONWAY`` it is used; otherwise the
modulus is the monic primitive polynomial whose lower coefficients, read
as a base-p label, are smallest.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidSymbol, NotAPrimePower

MAX_ORDER = 1 << 16
TABLE_LIMIT = 1024

# Lower coefficients (constant term first) of x^m + ..., keyed by (p, m).
CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (2, 6): (1, 1, 0, 1, 1, 0),
    (2, 7): (1, 1, 0, 0, 0, 0, 0),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (3, 4): (2, 0, 0, 2),
    (3, 5): (1, 2, 0, 0, 0),
    (5, 2): (2, 4),
    (5, 3): (3, 3, 0),
    (7, 2): (3, 6),
    (11, 2): (2, 7),
    (13, 2): (2, 12),
}


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, or raise NotAPrimePower."""
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise NotAPrimePower(f"{q} is not a prime power")
    return p, m


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except NotAPrimePower:
        return False
    return True


class GaloisField:
    def __init__(self, p: int, m: int, modulus: tuple[int, ...] | None = None):
        self.p = p
        self.m = m
        self.q = p**m
        if self.q > MAX_ORDER:
            raise ValueError(f"field order {self.q} exceeds {MAX_ORDER}")
        self._digits = np.array(
            [[(e // p**i) % p for i in range(m)] for e in range(self.q)], dtype=np.int64
        )
        self._weights = p ** np.arange(m, dtype=np.int64)
        if m == 1:
            self.modulus = None
            self._build_prime()
        else:
            if modulus is None:
                modulus = CONWAY.get((p, m)) or self._search_primitive()
            self.modulus = tuple(modulus)
            if not self._build_extension(self.modulus):
                raise ValueError(f"modulus {self.modulus} is not primitive over GF({p})")

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def _build_prime(self) -> None:
        q = self.q
        # smallest primitive root
        for g in range(1, q):
            exp, x = [], 1
            for _ in range(q - 1):
                exp.append(x)
                x = x * g % q
            if len(set(exp)) == q - 1:
                break
        self._set_log_tables(exp)

    def _times_x(self, e: int, modulus: tuple[int, ...]) -> int:
        """Multiply element e by x, reducing modulo x^m + sum(modulus[i] x^i)."""
        p, m = self.p, self.m
        digits = [(e // p**i) % p for i in range(m)]
        top = digits[-1]
        shifted = [0] + digits[:-1]
        # x^m == -sum(modulus[i] x^i)
        out = [(shifted[i] - top * modulus[i]) % p for i in range(m)]
        return sum(c * p**i for i, c in enumerate(out))

    def _build_extension(self, modulus: tuple[int, ...]) -> bool:
        exp, x, seen = [], 1, set()
        for _ in range(self.q - 1):
            if x in seen or x == 0:
                return False
            seen.add(x)
            exp.append(x)
            x = self._times_x(x, modulus)
        if x != 1:
            return False
        self._set_log_tables(exp)
        return True

    def _search_primitive(self) -> tuple[int, ...]:
        for label in range(1, self.q):
            lower = tuple((label // self.p**i) % self.p for i in range(self.m))
            if lower[0] == 0:
                continue
            if self._is_primitive(lower):
                return lower
        raise AssertionError(f"no primitive polynomial found for GF({self.q})")

    def _is_primitive(self, modulus: tuple[int, ...]) -> bool:
        x, steps = 1, 0
        while True:
            x = self._times_x(x, modulus)
            steps += 1
            if x == 1 or x == 0 or steps > self.q - 1:
                break
        return x == 1 and steps == self.q - 1

    def _set_log_tables(self, exp: list[int]) -> None:
        self._exp = np.array(exp + exp, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        log[np.array(exp)] = np.arange(self.q - 1)
        self._log = log

    # scalar arithmetic

    def check(self, *elements: int) -> None:
        for e in elements:
            if not 0 <= e < self.q:
                raise InvalidSymbol(f"{e} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return int(((self._digits[a] + self._digits[b]) % self.p) @ self._weights)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return int(((-self._digits[a]) % self.p) @ self._weights)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        return int(self._exp[(self._log[a] * n) % (self.q - 1)])

    @property
    def primitive_element(self) -> int:
        return int(self._exp[1]) if self.q > 2 else 1

    # vectorized arithmetic over numpy arrays of labels

    def add_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._weights

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    @cached_property
    def add_table(self) -> np.ndarray:
        self._table_guard()
        e = np.arange(self.q)
        return self.add_vec(e[:, None], e[None, :])

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._table_guard()
        e = np.arange(self.q)
        return self.mul_vec(e[:, None], e[None, :])

    def _table_guard(self) -> None:
        if self.q > TABLE_LIMIT:
            raise ValueError(f"full tables for GF({self.q}) exceed the {TABLE_LIMIT} limit")


@lru_cache(maxsize=None)
def make_field(q: int) -> GaloisField:
    p, m = prime_power(q)
    return GaloisField(p, m)


def eval_poly(field: GaloisField, coeffs: Sequence[int], point: int) -> int:
    """Evaluate a polynomial at ``point`` by Horner's rule.

    ``coeffs`` run from the highest-degree coefficient down to the
    constant term, so ``(1, 0, 1)`` is x^2 + 1.
    """
    if len(coeffs) == 0:
        raise InvalidSymbol("a polynomial needs at least one coefficient")
    field.check(point, *coeffs)
    acc = 0
    for c in coeffs:
        acc = field.add(field.mul(acc, point), c)
    return acc


def eval_poly_vec(field: GaloisField, coeffs: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Evaluate many polynomials at many points.

    ``coeffs`` has shape (P, d) with highest degree first; the result has
    shape (P, len(points)).
    """
    coeffs = np.asarray(coeffs, dtype=np.int64)
    points = np.asarray(points, dtype=np.int64)[None, :]
    acc = np.zeros((coeffs.shape[0], points.shape[1]), dtype=np.int64)
    for j in range(coeffs.shape[1]):
        acc = field.add_vec(field.mul_vec(acc, points), coeffs[:, j : j + 1])
    return acc
