"""Additive characters, cyclotomic classes and Gauss periods.

Character values live in Z[zeta_p] and are handled exactly by
:class:`CyclotomicInteger`; complex numbers appear only when comparing with
the closed-form evaluators, which return :class:`ClosedFormPeriod` values of
the shape ``(c + t * i^u * sqrt(Q)) / N``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .finite_field import FieldCtx, FieldElement, build_field, prime_power

TOL = 1e-9


@dataclass(frozen=True)
class CyclotomicInteger:
    """``sum_j coeffs[j-1] * zeta_p^j`` for ``j = 1..p-1``.

    The constant term is eliminated with ``1 = -(zeta + ... + zeta^(p-1))``,
    which makes the coefficient vector a unique representation.
    """

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"need {self.p - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_integer(cls, p: int, k: int) -> "CyclotomicInteger":
        return cls(p, (-k,) * (p - 1))

    @classmethod
    def zeta(cls, p: int, e: int = 1) -> "CyclotomicInteger":
        e %= p
        if e == 0:
            return cls.from_integer(p, 1)
        c = [0] * (p - 1)
        c[e - 1] = 1
        return cls(p, tuple(c))

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Sequence[int]) -> "CyclotomicInteger":
        """``sum_e counts[e] * zeta^e`` for ``e = 0..p-1``."""
        c0 = int(counts[0])
        return cls(p, tuple(int(counts[e]) - c0 for e in range(1, p)))

    def _full(self) -> np.ndarray:
        return np.array((0,) + self.coeffs, dtype=object)

    @classmethod
    def _reduce(cls, p: int, full) -> "CyclotomicInteger":
        return cls.from_exponent_counts(p, list(full))

    def _coerce(self, other) -> "CyclotomicInteger":
        if isinstance(other, CyclotomicInteger):
            if other.p != self.p:
                raise ValueError("conductors differ")
            return other
        if isinstance(other, (int, np.integer)):
            return CyclotomicInteger.from_integer(self.p, int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicInteger(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        a, b = self._full(), o._full()
        out = [0] * p
        for i in range(1, p):
            if a[i]:
                for j in range(1, p):
                    if b[j]:
                        out[(i + j) % p] += a[i] * b[j]
        return self._reduce(p, out)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return len(set(self.coeffs)) <= 1

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return -self.coeffs[0] if self.coeffs else 0

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.p)
        return sum(c * z**j for j, c in enumerate(self.coeffs, start=1))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"CyclotomicInteger({self.rational_value()})"
        return f"CyclotomicInteger(p={self.p}, {list(self.coeffs)})"


@dataclass(frozen=True)
class ClosedFormPeriod:
    """``(const_num + sqrt_num * (i if imaginary else 1) * sqrt(Q)) / denom``."""

    const_num: int
    sqrt_num: int
    imaginary: bool
    Q: int
    denom: int

    def __post_init__(self):
        if self.denom <= 0:
            raise ValueError("denominator must be positive")

    @property
    def sqrt_is_integral(self) -> bool:
        return math.isqrt(self.Q) ** 2 == self.Q

    def is_rational(self) -> bool:
        return self.sqrt_num == 0 or (self.sqrt_is_integral and not self.imaginary)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        r = math.isqrt(self.Q) if self.sqrt_num else 0
        return Fraction(self.const_num + self.sqrt_num * r, self.denom)

    def to_complex(self) -> complex:
        unit = 1j if self.imaginary else 1
        return (self.const_num + self.sqrt_num * unit * math.sqrt(self.Q)) / self.denom

    def __str__(self) -> str:
        rad = f"{'i*' if self.imaginary else ''}sqrt({self.Q})"
        sign = "-" if self.sqrt_num < 0 else "+"
        coef = abs(self.sqrt_num)
        term = rad if coef == 1 else f"{coef}*{rad}"
        return f"({self.const_num} {sign} {term})/{self.denom}"


@dataclass(frozen=True)
class CyclotomicClassIndexer:
    """Cyclotomic classes of order ``N`` in ``ctx``: class of x = log(x) mod N."""

    ctx: FieldCtx
    N: int

    def __post_init__(self):
        if self.N < 1 or self.ctx.order % self.N:
            raise ValueError(f"N = {self.N} does not divide {self.ctx.order}")

    def index(self, x) -> np.ndarray:
        return self.ctx.log(x) % self.N

    def members(self, i: int) -> np.ndarray:
        logs = np.arange(i % self.N, self.ctx.order, self.N)
        return self.ctx.antilog_table[logs]


def canonical_character(x: FieldElement) -> CyclotomicInteger:
    """``zeta_p ** Tr(x)`` with Tr the absolute trace to GF(p)."""
    t = int(x.ctx.trace(x.value, 1))
    return CyclotomicInteger.zeta(x.ctx.p, t)


def character_sum(ctx: FieldCtx, a: int = 1) -> CyclotomicInteger:
    """``sum_{x in F} chi(a x)`` computed exactly."""
    xs = np.arange(ctx.size)
    t = ctx.trace(ctx.mul(a, xs), 1)
    return CyclotomicInteger.from_exponent_counts(ctx.p, np.bincount(t, minlength=ctx.p))


def class_index(idx: CyclotomicClassIndexer, x: FieldElement) -> int:
    if x.value == 0:
        raise ValueError("zero lies in no cyclotomic class")
    return int(idx.index(x.value))


def gauss_periods_direct(ctx: FieldCtx, N: int) -> list[CyclotomicInteger]:
    """Gauss periods of order ``N`` by summing the character over each class."""
    if N < 1 or ctx.order % N:
        raise ValueError(f"N = {N} does not divide {ctx.order}")
    logs = np.arange(ctx.order)
    t = ctx.trace(ctx.antilog_table, 1)
    counts = np.zeros((N, ctx.p), dtype=np.int64)
    np.add.at(counts, (logs % N, t), 1)
    return [CyclotomicInteger.from_exponent_counts(ctx.p, row) for row in counts]


@dataclass(frozen=True)
class ClosedFormBranch:
    """Which closed form applies to ``(q, N)`` and its parameters."""

    kind: str  # "trivial" | "quadratic" | "semiprimitive-a" | "semiprimitive-b"
    p: int
    degree: int
    j: int | None = None
    gamma: int | None = None

    def distinguished_index(self, N: int) -> int | None:
        """Index of the period that differs from the others, if any."""
        if self.kind == "semiprimitive-a":
            return N // 2
        if self.kind == "semiprimitive-b":
            return 0
        return None


def semiprimitive_parameters(p: int, degree: int, N: int) -> tuple[int, int] | None:
    """``(j, gamma)`` if ``p^degree`` is semiprimitive for ``N``, else None.

    Accepts the smallest ``j`` with ``N | p^j + 1`` and ``2j | degree``.
    """
    if N < 2:
        return None
    for j in range(1, degree // 2 + 1):
        if (p**j + 1) % N == 0 and degree % (2 * j) == 0:
            return j, degree // (2 * j)
    return None


def closed_form_branch(q: int, N: int) -> ClosedFormBranch | None:
    p, degree = prime_power(q)
    if N == 1:
        return ClosedFormBranch("trivial", p, degree)
    if N == 2 and p != 2:
        return ClosedFormBranch("quadratic", p, degree)
    sp = semiprimitive_parameters(p, degree, N)
    if sp is None:
        return None
    j, gamma = sp
    if gamma % 2 and p % 2 and ((p**j + 1) // N) % 2:
        return ClosedFormBranch("semiprimitive-a", p, degree, j, gamma)
    return ClosedFormBranch("semiprimitive-b", p, degree, j, gamma)


def gauss_periods_closed_form(q: int, N: int) -> list[ClosedFormPeriod] | None:
    """Gauss periods of order ``N`` over GF(q) from the known closed forms.

    Covers ``N = 1``, ``N = 2`` for odd characteristic and the semiprimitive
    case. Returns None when none of these applies.
    """
    branch = closed_form_branch(q, N)
    if branch is None:
        return None
    p, S = branch.p, branch.degree
    if branch.kind == "trivial":
        return [ClosedFormPeriod(-1, 0, False, q, 1)]
    if branch.kind == "quadratic":
        sign = (-1) ** (S - 1)
        imaginary = False
        if p % 4 == 3:
            # (sqrt(-1))^S is real for even S and +-i for odd S
            sign *= (-1) ** (S // 2)
            imaginary = S % 2 == 1
        eta0 = ClosedFormPeriod(-1, sign, imaginary, q, 2)
        return [eta0, ClosedFormPeriod(-1, -sign, imaginary, q, 2)]
    root = p ** (S // 2)
    g = branch.gamma
    if branch.kind == "semiprimitive-a":
        special = ClosedFormPeriod(-1, N - 1, False, root * root, N)
        other = ClosedFormPeriod(-1, -1, False, root * root, N)
        return [special if i == N // 2 else other for i in range(N)]
    sign = (-1) ** g
    special = ClosedFormPeriod(-1, -sign * (N - 1), False, root * root, N)
    other = ClosedFormPeriod(-1, sign, False, root * root, N)
    return [special] + [other] * (N - 1)


def period_value(eta) -> complex:
    return eta.to_complex()


def period_bound_check(periods: Iterable, N: int, q: int, tol: float = TOL) -> bool:
    """``|eta_i + 1/N| <= (N-1) sqrt(q) / N`` for every period."""
    bound = (N - 1) * math.sqrt(q) / N
    return all(abs(period_value(eta) + 1 / N) <= bound + tol for eta in periods)


def periods_for_size(q: int, N: int, cap: int | None = None) -> list[CyclotomicInteger]:
    """Direct periods for GF(q) given only its size."""
    p, k = prime_power(q)
    return gauss_periods_direct(build_field(p, k, cap), N)
