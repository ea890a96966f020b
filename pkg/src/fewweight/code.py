"""Construction of the two-part trace code and the plain trace code.

The two-part code has coordinates indexed by ``(half, y, x)`` with
``y`` running over the defining sequence ``D = (w^(h*i))_{i<n}`` and ``x`` over
the subfield GF(q^m1). Its codeword for ``(a, b)`` is

    first half:  Tr_{m1}(a x) + Tr_m(b y)
    second half: Tr_{m1}(a x) + Tr_m((a + b) y)

with both traces taken down to GF(q).

Coordinate order: all first-half coordinates, then all second-half
coordinates; inside a half, ``y`` is the outer loop in the order
``w^0, w^h, w^2h, ...`` and ``x`` the inner loop over subfield members
(0 first, then by increasing discrete log).

Symbols are stored internally as GF(q) *labels* (see
:class:`~fewweight.finite_field.SubfieldView`); :meth:`Codeword.coords`
converts them back to field encodings, which for ``s = 1`` are just the
integers ``0..p-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from .config import DEFAULT_FIELD_CAP
from .errors import CapExceeded, SpecError
from .finite_field import FieldCtx, FieldElement, SubfieldView, build_field, is_prime, subfield_view

COORDINATE_ORDER = (
    "first half then second half; within a half, y over D in the order "
    "w^0, w^h, ..., w^((n-1)h) (outer), x over GF(q^m1) with 0 first then "
    "increasing discrete log in GF(q^m) (inner)"
)


@dataclass(frozen=True)
class CodeSpec:
    p: int
    s: int
    m: int
    m1: int
    h: int
    n: int

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def qm(self) -> int:
        return self.q**self.m

    @property
    def period_count(self) -> int:
        """``(q^m - 1) / (q - 1)``."""
        return (self.qm - 1) // (self.q - 1)

    @property
    def min_n(self) -> int:
        """Smallest admissible ``n``: ``(q^m - 1) / (h (q - 1))``."""
        return self.period_count // self.h

    @property
    def length(self) -> int:
        return 2 * self.n * self.q**self.m1

    @property
    def dimension_expected(self) -> int:
        return self.m + self.m1

    @property
    def message_count(self) -> int:
        return self.q ** (self.m + self.m1)

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.p, self.s, self.m, self.m1, self.h, self.n)

    def as_dict(self) -> dict[str, int]:
        return {"p": self.p, "s": self.s, "m": self.m, "m1": self.m1, "h": self.h, "n": self.n}

    def __str__(self) -> str:
        return f"(q,m,m1,h,n)=({self.q},{self.m},{self.m1},{self.h},{self.n})"


def validate_spec(p: int, s: int, m: int, m1: int, h: int, n: int, field_cap: int | None = None) -> CodeSpec:
    """Check the construction's hypotheses and return a :class:`CodeSpec`.

    Raises :class:`SpecError` naming the first violated condition, or
    :class:`CapExceeded` when GF(p^(s m)) is too large to tabulate.
    """
    for name, v in (("s", s), ("m", m), ("m1", m1), ("h", h), ("n", n)):
        if int(v) != v or v < 1:
            raise SpecError(f"{name}_positive", f"{name} must be a positive integer, got {v}")
    if not is_prime(p):
        raise SpecError("p_prime", f"p = {p} is not prime")
    if m % m1:
        raise SpecError("m1_divides_m", f"m1 = {m1} does not divide m = {m}")
    cap = DEFAULT_FIELD_CAP if field_cap is None else field_cap
    if p ** (s * m) > cap:
        raise CapExceeded("field size q^m", p ** (s * m), cap)
    q = p**s
    count = (q**m - 1) // (q - 1)
    if count % h:
        raise SpecError("h_divides_period_count", f"h = {h} does not divide (q^m-1)/(q-1) = {count}")
    if n % (count // h):
        raise SpecError(
            "n_multiple",
            f"(q^m-1)/(h(q-1)) = {count // h} does not divide n = {n}",
        )
    return CodeSpec(p, s, m, m1, h, n)


@dataclass(frozen=True)
class DefiningSetD:
    """The sequence ``(w^(h*i))_{0 <= i < n}``; repeats are kept."""

    ctx: FieldCtx
    h: int
    n: int

    @cached_property
    def logs(self) -> np.ndarray:
        return (self.h * np.arange(self.n, dtype=np.int64)) % self.ctx.order

    @cached_property
    def elements(self) -> np.ndarray:
        return self.ctx.antilog_table[self.logs]

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class Codeword:
    labels: np.ndarray = field(repr=False)
    alphabet: SubfieldView = field(repr=False)

    @property
    def coords(self) -> np.ndarray:
        return self.alphabet.values(self.labels)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.labels))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.labels).tolist())

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, Codeword) and np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash(self.labels.tobytes())


class _TraceCodeBase:
    """Shared machinery: GF(q) alphabet tables and codeword enumeration."""

    ctx: FieldCtx
    alphabet: SubfieldView

    @cached_property
    def add_table(self) -> np.ndarray:
        return self.alphabet.add_table()

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self.alphabet.mul_table()

    @cached_property
    def trace_labels(self) -> np.ndarray:
        """Label of ``Tr_{q^m/q}(z)`` for every field encoding ``z``."""
        t = self.ctx.trace(np.arange(self.ctx.size), self.alphabet.sub_degree)
        return self.alphabet.labels(t)

    @property
    def q(self) -> int:
        return self.alphabet.size

    def scale_labels(self, labels: np.ndarray, lam: int) -> np.ndarray:
        """Multiply a label vector by the GF(q) element with label ``lam``."""
        return self.mul_table[lam][labels]

    def add_labels(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.add_table[u, v]


class Code(_TraceCodeBase):
    """The two-part trace code for a validated :class:`CodeSpec`."""

    def __init__(self, spec: CodeSpec, field_cap: int | None = None):
        self.spec = spec
        self.ctx = build_field(spec.p, spec.s * spec.m, field_cap)
        self.alphabet = subfield_view(self.ctx, spec.s)
        self.a_domain = subfield_view(self.ctx, spec.s * spec.m1)
        self.D = DefiningSetD(self.ctx, spec.h, spec.n)

    @property
    def length(self) -> int:
        return self.spec.length

    @property
    def dimension_expected(self) -> int:
        return self.spec.dimension_expected

    @property
    def message_count(self) -> int:
        return self.spec.message_count

    def __repr__(self) -> str:
        return f"Code({self.spec}, length={self.length})"

    # -- tables ------------------------------------------------------------

    @cached_property
    def x_values(self) -> np.ndarray:
        return self.a_domain.members

    @cached_property
    def a_values(self) -> np.ndarray:
        return self.a_domain.members

    @cached_property
    def b_values(self) -> np.ndarray:
        """All of GF(q^m): 0 first, then ``w^0, w^1, ...``."""
        return np.concatenate([[0], self.ctx.antilog_table]).astype(np.int64)

    @cached_property
    def small_trace_labels(self) -> np.ndarray:
        """``A[i, j]`` = label of ``Tr_{m1}(a_i x_j)`` over all subfield pairs."""
        a = self.a_values
        prod = self.ctx.mul(a[:, None], self.x_values[None, :])
        t = self.ctx.trace(prod, self.spec.s, from_degree=self.spec.s * self.spec.m1)
        return self.alphabet.labels(t)

    @cached_property
    def big_trace_labels(self) -> np.ndarray:
        """``B[z, i]`` = label of ``Tr_m(z * D_i)`` for every field encoding ``z``."""
        z = np.arange(self.ctx.size)
        prod = self.ctx.mul(z[:, None], self.D.elements[None, :])
        return self.trace_labels[prod]

    # -- codewords ---------------------------------------------------------

    def _a_index(self, a: int) -> int:
        if a == 0:
            return 0
        if not self.a_domain.contains(a):
            raise ValueError(f"a = {a} is not in GF(q^{self.spec.m1})")
        return int(self.ctx.log_table[a] // self.a_domain.step) + 1

    def _u(self, a: int) -> np.ndarray:
        self._a_index(a)
        prod = self.ctx.mul(a, self.x_values)
        t = self.ctx.trace(prod, self.spec.s, from_degree=self.spec.s * self.spec.m1)
        return self.alphabet.labels(t)

    def _v(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.int64)
        return self.trace_labels[self.ctx.mul(z[..., None], self.D.elements)]

    def codeword_labels(self, a: int, b: int) -> np.ndarray:
        if not 0 <= b < self.ctx.size:
            raise ValueError(f"b = {b} is not an element of GF(q^{self.spec.m})")
        u = self._u(a)
        v1 = self._v(b)
        v2 = self._v(self.ctx.add(a, b))
        first = self.add_table[v1[:, None], u[None, :]]
        second = self.add_table[v2[:, None], u[None, :]]
        return np.concatenate([first.ravel(), second.ravel()])

    def block_labels(self, a: int, b=None) -> np.ndarray:
        """Label matrix of ``c(a, b)``, one row per ``b``.

        ``b`` defaults to all of GF(q^m) in :attr:`b_values` order.
        """
        u = self.small_trace_labels[self._a_index(a)]
        b = self.b_values if b is None else np.asarray(b, dtype=np.int64)
        v1 = self.big_trace_labels[b]
        v2 = self.big_trace_labels[self.ctx.add(a, b)]
        first = self.add_table[v1[:, :, None], u[None, None, :]]
        second = self.add_table[v2[:, :, None], u[None, None, :]]
        nb = len(b)
        return np.concatenate([first.reshape(nb, -1), second.reshape(nb, -1)], axis=1)

    def iter_messages(self) -> Iterator[tuple[int, int]]:
        for a in self.a_values:
            for b in self.b_values:
                yield int(a), int(b)

    def all_codeword_labels(self) -> np.ndarray:
        """Every codeword as rows, in message order (a outer, b inner)."""
        return np.concatenate([self.block_labels(int(a)) for a in self.a_values])

    def generator_labels(self) -> np.ndarray:
        """Images of an F_q-basis of the message space, one codeword per row.

        Uses ``1, t, ..., t^(m1-1)`` for ``a`` (t generating GF(q^m1)) and
        ``1, w, ..., w^(m-1)`` for ``b``.
        """
        rows = []
        t = self.a_domain.generator.value
        for k in range(self.spec.m1):
            rows.append(self.codeword_labels(int(self.ctx.power(t, k)), 0))
        for k in range(self.spec.m):
            rows.append(self.codeword_labels(0, int(self.ctx.antilog_table[k])))
        return np.array(rows)


def build_code(spec: CodeSpec, field_cap: int | None = None) -> Code:
    return Code(spec, field_cap)


def evaluate_codeword(code: Code, a, b) -> Codeword:
    """Codeword ``c(a, b)``; ``a`` must lie in GF(q^m1)."""
    a = a.value if isinstance(a, FieldElement) else int(a)
    b = b.value if isinstance(b, FieldElement) else int(b)
    return Codeword(code.codeword_labels(a, b), code.alphabet)


class TraceCode(_TraceCodeBase):
    """Plain trace code ``a -> (Tr(a d_1), ..., Tr(a d_N))`` over GF(q)."""

    def __init__(self, ctx: FieldCtx, s: int, D):
        D = np.array([x.value if isinstance(x, FieldElement) else int(x) for x in D], dtype=np.int64)
        if (D == 0).any():
            raise ValueError("defining set must not contain 0")
        if ctx.d % s:
            raise ValueError(f"s = {s} does not divide {ctx.d}")
        self.ctx = ctx
        self.alphabet = subfield_view(ctx, s)
        self.D = D
        self.m = ctx.d // s

    @property
    def length(self) -> int:
        return len(self.D)

    @property
    def dimension_expected(self) -> int:
        return self.m

    @property
    def message_count(self) -> int:
        return self.ctx.size

    def __repr__(self) -> str:
        return f"TraceCode(q={self.q}, m={self.m}, length={self.length})"

    def codeword_labels(self, a: int) -> np.ndarray:
        return self.trace_labels[self.ctx.mul(a, self.D)]

    def codeword(self, a) -> Codeword:
        a = a.value if isinstance(a, FieldElement) else int(a)
        return Codeword(self.codeword_labels(a), self.alphabet)

    def all_codeword_labels(self) -> np.ndarray:
        a = np.concatenate([[0], self.ctx.antilog_table]).astype(np.int64)
        return self.trace_labels[self.ctx.mul(a[:, None], self.D[None, :])]

    def generator_labels(self) -> np.ndarray:
        return np.array([self.codeword_labels(int(self.ctx.antilog_table[k])) for k in range(self.m)])


def build_trace_code_CD(ctx: FieldCtx, s: int, D) -> TraceCode:
    return TraceCode(ctx, s, D)
