"""Table-driven arithmetic in GF(p^d).

Elements are encoded as integers in ``[0, p^d)``: digit ``i`` (base ``p``) is
the coefficient of ``x^i`` in the polynomial basis modulo a primitive
polynomial. With that encoding the prime field GF(p) is literally the integers
``0..p-1``, which keeps symbols of codes over a prime field readable.

Multiplication goes through discrete log / antilog tables. Addition works
digit-wise on the base-``p`` expansion and never needs a table, so memory is
two ``int64`` arrays of length ``p^d``.

All array methods on :class:`FieldCtx` accept numpy arrays (or scalars) of
encoded elements and broadcast. :class:`FieldElement` is a thin scalar wrapper
with operator overloading for interactive and test use.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_FIELD_CAP
from .errors import CapExceeded, FewWeightError


# --------------------------------------------------------------------------
# small number theory helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise ``ValueError`` otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise FewWeightError(f"no primitive root modulo {p}")  # pragma: no cover


# --------------------------------------------------------------------------
# polynomials over GF(p), ascending coefficient lists


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    d = len(f) - 1
    prod = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # f is monic
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d + 1):
                prod[k - d + i] = (prod[k - d + i] - c * f[i]) % p
    return prod[:d]


def _x_pow_mod(e: int, f: list[int], p: int) -> list[int]:
    d = len(f) - 1
    result = [1] + [0] * (d - 1)
    base = [0, 1] + [0] * (d - 2) if d > 1 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive_polynomial(f: list[int], p: int) -> bool:
    """True iff monic ``f`` (ascending coefficients) is primitive over GF(p)."""
    d = len(f) - 1
    if d < 1 or f[-1] != 1 or f[0] % p == 0:
        return False
    order = p**d - 1
    one = [1] + [0] * (d - 1)
    if _x_pow_mod(order, f, p) != one:
        return False
    return all(_x_pow_mod(order // r, f, p) != one for r in prime_factors(order))


def smallest_primitive_polynomial(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree ``d``.

    Coefficients are compared low degree first. Degree one is special-cased
    to ``x - g`` with ``g`` the smallest primitive root, so the primitive
    element of GF(p) is the usual one.
    """
    if d == 1:
        g = smallest_primitive_root(p)
        return ((-g) % p, 1)
    for low in itertools.product(range(p), repeat=d):
        f = list(low) + [1]
        if is_primitive_polynomial(f, p):
            return tuple(f)
    raise FewWeightError(f"no primitive polynomial of degree {d} over GF({p})")  # pragma: no cover


# --------------------------------------------------------------------------


class FieldCtx:
    """A concrete finite field GF(p^d) with log/antilog tables.

    Use :func:`build_field` rather than the constructor; it validates
    arguments and caches contexts so equal fields share tables.
    """

    def __init__(self, p: int, d: int, modulus: tuple[int, ...]):
        self.p = p
        self.d = d
        self.modulus = tuple(modulus)
        self.size = p**d
        self.order = self.size - 1
        self.place = p ** np.arange(d, dtype=np.int64)

        self.antilog_table = self._power_table()
        log = np.full(self.size, -1, dtype=np.int64)
        log[self.antilog_table] = np.arange(self.order, dtype=np.int64)
        if self.order and (log[1:] < 0).any():
            raise FewWeightError(f"modulus {self.modulus} is not primitive over GF({p})")
        self.log_table = log
        self.antilog_table.flags.writeable = False
        self.log_table.flags.writeable = False

    def _power_table(self) -> np.ndarray:
        # Coordinates of x^0 .. x^(order-1), built by doubling with powers of
        # the companion matrix: block [L, 2L) = M^L @ block [0, L).
        p, d, n = self.p, self.d, self.order
        # float64 matmul goes through BLAS and stays exact: entries are
        # bounded by d * p^2 < 2^53 under any sane cap.
        comp = np.zeros((d, d), dtype=np.float64)
        for i in range(1, d):
            comp[i, i - 1] = 1
        comp[:, d - 1] = [(-c) % p for c in self.modulus[:d]]
        states = np.zeros((d, 1), dtype=np.float64)
        states[0, 0] = 1
        step = comp
        while states.shape[1] < n:
            nxt = (step @ states) % p
            states = np.concatenate([states, nxt], axis=1)
            step = (step @ step) % p
        return self.place @ states[:, :n].astype(np.int64)

    # -- identity --------------------------------------------------------

    @property
    def key(self) -> tuple:
        return (self.p, self.d, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, d={self.d}, modulus={self.modulus})"

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.d, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 or i == 0:
                terms.append(mono if c == 1 else str(c))
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    # -- element construction ------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self._check_owner(value)
            return value
        v = int(value)
        if not 0 <= v < self.size:
            raise ValueError(f"{v} is not an element encoding of GF({self.p}^{self.d})")
        return FieldElement(self, v)

    def from_coeffs(self, coeffs) -> "FieldElement":
        coeffs = list(coeffs)
        if len(coeffs) != self.d or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"need {self.d} coordinates in [0, {self.p})")
        return FieldElement(self, int(np.dot(coeffs, self.place)))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def primitive_element(self) -> "FieldElement":
        return FieldElement(self, int(self.antilog_table[1 % self.order]) if self.order > 1 else 1)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.size)]

    def _check_owner(self, x: "FieldElement") -> None:
        if x.ctx is not self and x.ctx != self:
            raise ValueError(f"element of {x.ctx!r} used with {self!r}")

    # -- vectorised arithmetic on encodings ----------------------------

    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.place) % self.p

    def add(self, a, b) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        s = (self.digits(a) + self.digits(b)) % self.p
        return s @ self.place

    def neg(self, a) -> np.ndarray:
        if self.p == 2:
            return np.asarray(a, dtype=np.int64)
        return ((-self.digits(a)) % self.p) @ self.place

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def scale(self, a, k: int) -> np.ndarray:
        """Multiply by the integer ``k`` (an element of the prime field)."""
        return ((self.digits(a) * (k % self.p)) % self.p) @ self.place

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_table[a]
        lb = self.log_table[b]
        out = self.antilog_table[(la + lb) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def mul_by_log(self, a, k) -> np.ndarray:
        """``a * w**k`` for the primitive element ``w``."""
        a = np.asarray(a, dtype=np.int64)
        out = self.antilog_table[(self.log_table[a] + np.asarray(k, dtype=np.int64)) % self.order]
        return np.where(a == 0, 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("zero has no inverse")
        return self.antilog_table[(-self.log_table[a]) % self.order]

    def power(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            return self.power(self.inv(a), -e)
        out = self.antilog_table[(self.log_table[a] * (e % self.order)) % self.order]
        return np.where(a == 0, 0, out)

    def log(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ValueError("discrete log of zero is undefined")
        return self.log_table[a]

    def frobenius(self, a, k: int = 1) -> np.ndarray:
        """``a ** (p**k)``."""
        return self.power(a, pow(self.p, k, self.order) if self.order > 1 else 1)

    def _check_degree(self, e: int, top: int) -> None:
        if e < 1 or top % e:
            raise ValueError(f"degree {e} does not divide {top}")
        if self.d % top:
            raise ValueError(f"degree {top} does not divide {self.d}")

    def trace(self, a, e: int, from_degree: int | None = None) -> np.ndarray:
        """Trace from the degree-``from_degree`` subfield down to degree ``e``.

        ``from_degree`` defaults to the whole field. Inputs must already lie in
        the ``from_degree`` subfield; the result lies in the degree-``e``
        subfield and is returned in the same integer encoding.
        """
        top = self.d if from_degree is None else from_degree
        self._check_degree(e, top)
        a = np.asarray(a, dtype=np.int64)
        if top != self.d and not self.in_subfield(a, top).all():
            raise ValueError(f"trace argument not in the degree-{top} subfield")
        acc = np.zeros_like(a)
        la = self.log_table[a]
        for i in range(top // e):
            k = pow(self.p, e * i, self.order) if self.order > 1 else 1
            term = np.where(a == 0, 0, self.antilog_table[(la * k) % self.order])
            acc = self.add(acc, term)
        return acc

    def in_subfield(self, a, e: int) -> np.ndarray:
        if self.d % e:
            raise ValueError(f"degree {e} does not divide {self.d}")
        a = np.asarray(a, dtype=np.int64)
        step = self.order // (self.p**e - 1)
        return (a == 0) | (self.log_table[a] % step == 0)

    def subfield(self, e: int) -> "SubfieldView":
        return subfield_view(self, e)


@dataclass(frozen=True, eq=False)
class FieldElement:
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.ctx.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            self.ctx._check_owner(other)
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(self.ctx.scale(1, int(other)))
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.ctx, int(v))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.sub(o, self.value))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.mul(self.value, self.ctx.inv(o)))

    def __pow__(self, e: int):
        return self._wrap(self.ctx.power(self.value, int(e)))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.ctx.inv(self.value))

    def log(self) -> int:
        return discrete_log(self)

    def trace(self, e: int, from_degree: int | None = None) -> "FieldElement":
        return trace(self, e, from_degree)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(self.ctx.scale(1, int(other)))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.key, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        if self.value == 0:
            return "0"
        return f"w^{int(self.ctx.log_table[self.value])}"


@dataclass(frozen=True)
class SubfieldView:
    """GF(p^e) realised inside a parent field GF(p^d), ``e | d``.

    Members are ordered with 0 first and then by increasing discrete log in
    the parent. A member's position in that order is its *label*; labels are
    what codes over the subfield store as symbols.
    """

    parent: FieldCtx
    sub_degree: int
    generator: FieldElement
    member_logs: np.ndarray

    @property
    def size(self) -> int:
        return self.parent.p**self.sub_degree

    @property
    def step(self) -> int:
        return self.parent.order // (self.size - 1)

    @property
    def members(self) -> np.ndarray:
        return np.concatenate([[0], self.parent.antilog_table[self.member_logs]]).astype(np.int64)

    def contains(self, a) -> np.ndarray:
        return self.parent.in_subfield(a, self.sub_degree)

    def labels(self, a) -> np.ndarray:
        """Map parent encodings of subfield members to labels ``0..size-1``."""
        a = np.asarray(a, dtype=np.int64)
        if not self.contains(a).all():
            raise ValueError(f"value outside the degree-{self.sub_degree} subfield")
        return np.where(a == 0, 0, self.parent.log_table[a] // self.step + 1)

    def values(self, labels) -> np.ndarray:
        return self.members[np.asarray(labels, dtype=np.int64)]

    def add_table(self) -> np.ndarray:
        """``size x size`` table of label addition."""
        m = self.members
        return self.labels(self.parent.add(m[:, None], m[None, :]))

    def mul_table(self) -> np.ndarray:
        m = self.members
        return self.labels(self.parent.mul(m[:, None], m[None, :]))

    def __len__(self) -> int:
        return self.size


# --------------------------------------------------------------------------
# module-level operations


@lru_cache(maxsize=32)
def _cached_field(p: int, d: int) -> FieldCtx:
    return FieldCtx(p, d, smallest_primitive_polynomial(p, d))


def build_field(p: int, d: int, cap: int | None = None) -> FieldCtx:
    """GF(p^d) under the lexicographically smallest primitive modulus."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if d < 1:
        raise ValueError(f"extension degree must be >= 1, got {d}")
    cap = DEFAULT_FIELD_CAP if cap is None else cap
    if p**d > cap:
        raise CapExceeded("field size", p**d, cap)
    return _cached_field(p, d)


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    a.ctx._check_owner(b)
    return a + b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a.ctx._check_owner(b)
    return a * b


def field_pow(a: FieldElement, e: int) -> FieldElement:
    return a**e


def discrete_log(x: FieldElement) -> int:
    if x.value == 0:
        raise ValueError("discrete log of zero is undefined")
    return int(x.ctx.log_table[x.value])


def trace(x: FieldElement, sub_degree: int, from_degree: int | None = None) -> FieldElement:
    return FieldElement(x.ctx, int(x.ctx.trace(x.value, sub_degree, from_degree)))


def subfield_view(ctx: FieldCtx, e: int) -> SubfieldView:
    if e < 1 or ctx.d % e:
        raise ValueError(f"degree {e} does not divide {ctx.d}")
    step = ctx.order // (ctx.p**e - 1)
    logs = np.arange(0, ctx.order, step, dtype=np.int64)
    gen = FieldElement(ctx, int(ctx.antilog_table[step % ctx.order]) if ctx.order > 1 else 1)
    logs.flags.writeable = False
    return SubfieldView(ctx, e, gen, logs)
