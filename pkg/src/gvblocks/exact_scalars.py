"""
Exact arithmetic in cyclotomic fields Q(ζ_N).

A CycNumber of order N is stored as its remainder modulo the cyclotomic
polynomial Φ_N, a tuple of Fractions of length φ(N).  That remainder is
unique, so equality is tuple comparison.  Mixed orders are embedded into
Q(ζ_lcm) via ζ_N ↦ ζ_lcm^(lcm/N) before operating.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "CycNumber",
    "InvalidOrderError",
    "cyclotomic_polynomial",
    "root_of_unity",
    "arith",
    "is_equal",
    "root_exponent",
    "RootOfUnity",
]

Rational = Union[int, Fraction]


class InvalidOrderError(ValueError):
    pass


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    # Coefficient lists are low degree first.
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    while len(num) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] / lead
        quot[shift] = c
        for k, d in enumerate(den):
            num[shift + k] -= c * d
        num.pop()
        _trim(num)
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Φ_n as a coefficient tuple, low degree first."""
    if n < 1:
        raise InvalidOrderError(f"cyclotomic order must be positive, got {n}")
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p, rem = _poly_divmod(p, cyclotomic_polynomial(d))
            assert not rem
    return tuple(p)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    # Row k is the reduced form of x^k for 0 <= k < n.
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce the top coefficient with the monic Φ_n
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for k in range(deg):
                cur[k] -= top * phi[k]
    return tuple(rows)


def _reduce(n: int, coeffs: Iterable[Rational]) -> tuple[Fraction, ...]:
    table = _power_table(n)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            row = table[k % n]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(out)


class CycNumber:
    """An element of Q(ζ_N) in canonical form (remainder mod Φ_N)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Rational] = ()):
        if order < 1:
            raise InvalidOrderError(f"cyclotomic order must be positive, got {order}")
        self.order = order
        self.coeffs = _reduce(order, coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> "CycNumber":
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, r: Rational, order: int = 1) -> "CycNumber":
        return cls(order, [Fraction(r)])

    def embed(self, m: int) -> "CycNumber":
        """Image in Q(ζ_m); requires order | m."""
        if m % self.order:
            raise InvalidOrderError(f"cannot embed order {self.order} into order {m}")
        step = m // self.order
        spread = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            spread[k * step] = c
        return CycNumber(m, spread)

    # -- arithmetic -------------------------------------------------------
    def _common(self, other: "CycNumber") -> tuple["CycNumber", "CycNumber"]:
        if self.order == other.order:
            return self, other
        m = self.order * other.order // math.gcd(self.order, other.order)
        return self.embed(m), other.embed(m)

    @staticmethod
    def _coerce(x) -> "CycNumber":
        if isinstance(x, CycNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNumber.from_rational(x)
        if isinstance(x, RootOfUnity):
            return x.cyc
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        return CycNumber._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        n = a.order
        prod = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycNumber(n, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # Extended Euclid in Q[x]: s·a + t·Φ = 1.
        phi = list(cyclotomic_polynomial(self.order))
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant because Φ_N is irreducible
        c = r1[0]
        return CycNumber(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.from_rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.from_rational(other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            # The normalized trace does not change under embeddings.
            self._hash = hash(sum((c * _mobius_ratio(self.order // math.gcd(self.order, k))
                                   for k, c in enumerate(self.coeffs)), Fraction(0)))
        return self._hash

    # -- views ------------------------------------------------------------
    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum((complex(float(c)) * z ** k for k, c in enumerate(self.coeffs)), 0j)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d: dict) -> "CycNumber":
        return cls(int(d["order"]), [Fraction(c) for c in d["coeffs"]])

    def root_exponent(self) -> tuple[int, int] | None:
        """(k, N) with self = ζ_N^k if self is a root of unity of order dividing N, else None."""
        return root_exponent(self)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z{self.order}^{k}")
        return " + ".join(terms) if terms else "0"


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def _mobius_ratio(m: int) -> Fraction:
    # μ(m)/φ(m), the normalized trace of a primitive m-th root of unity
    mu, phi, r, p = 1, 1, m, 2
    while p * p <= r:
        if r % p == 0:
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            mu = 0 if e > 1 else -mu
            phi *= (p - 1) * p ** (e - 1)
        p += 1
    if r > 1:
        mu = -mu
        phi *= r - 1
    return Fraction(mu, phi)


def root_of_unity(N: int, k: int) -> CycNumber:
    if N < 1:
        raise InvalidOrderError(f"root_of_unity needs N >= 1, got {N}")
    coeffs = [0] * N
    coeffs[k % N] = 1
    return CycNumber(N, coeffs)


def arith(a: CycNumber, b: CycNumber, op: str) -> CycNumber:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_equal(a: CycNumber, b: CycNumber) -> bool:
    return (a - b).is_zero()


def root_exponent(x: CycNumber) -> tuple[int, int] | None:
    # Roots of unity in Q(ζ_N) have order dividing lcm(2, N).
    m = x.order if x.order % 2 == 0 else 2 * x.order
    for k in range(m):
        if root_of_unity(m, k) == x:
            g = math.gcd(k, m)
            return (k // g, m // g)
    return None


class RootOfUnity:
    """
    ζ^t for t ∈ Q/Z, stored as the exponent.  Products are exponent sums, so
    long chains of roots of unity stay cheap; .cyc gives the CycNumber.
    """

    __slots__ = ("t",)

    def __init__(self, t: Rational = 0):
        self.t = Fraction(t) % 1

    @classmethod
    def of(cls, x) -> "RootOfUnity":
        """Coerce a RootOfUnity, a CycNumber root of unity, or a (k, N) pair."""
        if isinstance(x, RootOfUnity):
            return x
        if isinstance(x, CycNumber):
            e = root_exponent(x)
            if e is None:
                raise ValueError(f"{x!r} is not a root of unity")
            return cls(Fraction(*e))
        if isinstance(x, tuple):
            return cls(Fraction(x[0], x[1]))
        if x == 1:
            return cls(0)
        if x == -1:
            return cls(Fraction(1, 2))
        raise ValueError(f"cannot read {x!r} as a root of unity")

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            return RootOfUnity(self.t + other.t)
        return self.cyc * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RootOfUnity):
            return RootOfUnity(self.t - other.t)
        return self.cyc / other

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.t * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.t)

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.t == other.t
        if isinstance(other, (CycNumber, int, Fraction)):
            return self.cyc == other
        return NotImplemented

    def __hash__(self):
        return hash(self.cyc)

    @property
    def exponent(self) -> tuple[int, int]:
        """(k, N) in lowest terms, self = ζ_N^k."""
        return self.t.numerator, self.t.denominator

    def root_exponent(self) -> tuple[int, int]:
        return self.exponent

    @property
    def cyc(self) -> CycNumber:
        return root_of_unity(self.t.denominator, self.t.numerator)

    def __complex__(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.t))

    def __repr__(self):
        k, N = self.exponent
        return "1" if k == 0 else f"z{N}^{k}"
