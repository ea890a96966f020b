"""Weight distributions, bounds and secret-sharing diagnostics.

Two independent routes produce a weight distribution for a code:

* :func:`weight_distribution_bruteforce` materialises every codeword and counts
  Hamming weights;
* :func:`predicted_distribution` evaluates the Gauss-period weight formula per
  cyclotomic class, with the periods taken either from a closed form or from
  direct character sums.

The two must agree exactly for every admissible parameter tuple.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .code import Code, CodeSpec, TraceCode
from .config import DEFAULT_ENUM_CAP, DEFAULT_PAIR_CAP
from .cyclotomy import (
    ClosedFormPeriod,
    CyclotomicInteger,
    closed_form_branch,
    gauss_periods_closed_form,
    gauss_periods_direct,
    semiprimitive_parameters,
)
from .errors import CapExceeded, IntegralityError, NotApplicable
from .finite_field import build_field

# cells of a codeword block materialised at once during enumeration
_BLOCK_CELLS = 1 << 22


# --------------------------------------------------------------------------
# weight distributions


def format_enumerator(counts: dict[int, int]) -> str:
    """``1 + 18z^16 + 8z^18``: increasing weight, zero frequencies omitted."""
    terms = []
    for w in sorted(counts):
        a = counts[w]
        if a == 0:
            continue
        if w == 0:
            terms.append(str(a))
            continue
        mono = "z" if w == 1 else f"z^{w}"
        terms.append(mono if a == 1 else f"{a}{mono}")
    return " + ".join(terms)


_TERM = re.compile(r"^(\d*)(?:z(?:\^(\d+))?)?$")


def parse_enumerator(text: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for raw in text.split("+"):
        term = raw.strip().replace(" ", "")
        m = _TERM.match(term)
        if not term or not m:
            raise ValueError(f"bad enumerator term {raw!r}")
        coef, exp = m.groups()
        has_z = "z" in term
        if not has_z:
            w, a = 0, int(coef)
        else:
            w = int(exp) if exp else 1
            a = int(coef) if coef else 1
        out[w] = out.get(w, 0) + a
    return out


@dataclass(frozen=True)
class WeightDistribution:
    """Weight -> number of distinct codewords of that weight.

    ``kernel_size`` counts messages mapped to the zero word; when it exceeds
    one, message-level counts were divided by it so that ``counts`` still
    describes the code as a set.
    """

    counts: dict[int, int]
    length: int
    q: int
    kernel_size: int = 1

    def __post_init__(self):
        if self.counts.get(0) != 1:
            raise ValueError("a weight distribution has exactly one zero word")
        if any(w < 0 or w > self.length for w in self.counts):
            raise ValueError("weight outside [0, length]")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("negative frequency")

    @classmethod
    def from_message_counts(cls, counts: dict[int, int], length: int, q: int) -> "WeightDistribution":
        kernel = counts.get(0, 0)
        if kernel < 1:
            raise ValueError("message counts must include the zero message")
        scaled = {}
        for w, c in counts.items():
            if c % kernel:
                raise ValueError(f"frequency {c} at weight {w} is not a multiple of kernel size {kernel}")
            scaled[w] = c // kernel
        return cls(dict(sorted(scaled.items())), length, q, kernel)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def dimension(self) -> int:
        k = round(math.log(self.total, self.q))
        if self.q**k != self.total:
            raise ValueError(f"{self.total} codewords is not a power of {self.q}")
        return k

    @property
    def nonzero_weights(self) -> list[int]:
        return sorted(w for w, c in self.counts.items() if w and c)

    @property
    def min_distance(self) -> int:
        ws = self.nonzero_weights
        return ws[0] if ws else 0

    @property
    def max_weight(self) -> int:
        ws = self.nonzero_weights
        return ws[-1] if ws else 0

    def enumerator(self) -> str:
        return format_enumerator(self.counts)

    def parameters(self) -> tuple[int, int, int]:
        return (self.length, self.dimension, self.min_distance)


def _message_counts_block(code, a_values: Sequence[int]) -> Counter:
    counts: Counter = Counter()
    if isinstance(code, TraceCode):
        a = np.asarray(a_values, dtype=np.int64)
        lab = code.trace_labels[code.ctx.mul(a[:, None], code.D[None, :])]
        counts.update(np.count_nonzero(lab, axis=1).tolist())
        return counts
    b_all = code.b_values
    chunk = max(1, _BLOCK_CELLS // max(1, code.length))
    for a in a_values:
        for start in range(0, len(b_all), chunk):
            block = code.block_labels(int(a), b_all[start : start + chunk])
            counts.update(np.count_nonzero(block, axis=1).tolist())
    return counts


def _message_domain(code) -> np.ndarray:
    if isinstance(code, TraceCode):
        return np.concatenate([[0], code.ctx.antilog_table]).astype(np.int64)
    return code.a_values


def weight_distribution_bruteforce(
    code,
    cap: int | None = None,
    workers: int = 1,
    partitions: int | None = None,
) -> WeightDistribution:
    """Count weights of every codeword by materialising it.

    The message domain is split into ``partitions`` chunks (default: one per
    worker) whose counts are merged; the result does not depend on the split.
    """
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    if code.message_count > cap:
        raise CapExceeded("codeword count", code.message_count, cap)
    domain = _message_domain(code)
    parts = partitions or max(1, workers)
    chunks = [c for c in np.array_split(domain, parts) if len(c)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda c: _message_counts_block(code, c), chunks))
    else:
        partials = [_message_counts_block(code, c) for c in chunks]
    total: Counter = Counter()
    for part in partials:
        total.update(part)
    return WeightDistribution.from_message_counts(dict(total), code.length, code.q)


# --------------------------------------------------------------------------
# predicted distributions


def _as_fraction(eta) -> Fraction:
    if isinstance(eta, ClosedFormPeriod):
        if not eta.is_rational():
            raise IntegralityError(f"period {eta} is not rational")
        return eta.as_fraction()
    if isinstance(eta, CyclotomicInteger):
        if not eta.is_rational():
            raise IntegralityError(f"period {eta!r} is not a rational integer")
        return Fraction(eta.rational_value())
    return Fraction(eta)


def weight_scale(spec: CodeSpec) -> Fraction:
    """``2 n q^(m1-1) (q-1) / (q^m - 1)``."""
    q = spec.q
    return Fraction(2 * spec.n * q ** (spec.m1 - 1) * (q - 1), spec.qm - 1)


def predicted_weight(spec: CodeSpec, case: str, class_index: int | None = None, periods=None) -> int:
    """Hamming weight of ``c(a, b)`` from the Gauss-period formula.

    ``case`` is ``"zero"`` (a = b = 0), ``"a_zero"`` (a = 0, b in class
    ``class_index`` of order h) or ``"a_nonzero"``.
    """
    q = spec.q
    if case == "zero":
        return 0
    if case == "a_nonzero":
        return 2 * spec.n * q ** (spec.m1 - 1) * (q - 1)
    if case != "a_zero":
        raise ValueError(f"unknown case {case!r}")
    if periods is None or class_index is None:
        raise ValueError("a_zero case needs the class index and the Gauss periods")
    eta = _as_fraction(periods[class_index])
    w = weight_scale(spec) * (spec.qm - 1 - spec.h * eta)
    if w.denominator != 1 or w < 0:
        raise IntegralityError(f"predicted weight {w} for class {class_index} of {spec} is not a nonnegative integer")
    return int(w)


@dataclass(frozen=True)
class ProvenanceRow:
    weight: int
    frequency: int
    provenance: str


@dataclass(frozen=True)
class PredictedDistribution:
    spec: CodeSpec
    rows: tuple[ProvenanceRow, ...]
    gauss_source: str  # "closed-form" | "direct" | "override"
    family: str  # "h=1" | "h=2" | "semiprimitive" | "general"
    periods: tuple[Fraction, ...] = field(default=())

    def message_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.rows:
            out[r.weight] = out.get(r.weight, 0) + r.frequency
        return dict(sorted(out.items()))

    @property
    def total(self) -> int:
        return sum(r.frequency for r in self.rows)

    def to_weight_distribution(self) -> WeightDistribution:
        return WeightDistribution.from_message_counts(self.message_counts(), self.spec.length, self.spec.q)


def spec_family(spec: CodeSpec) -> str:
    if spec.h == 1:
        return "h=1"
    if spec.h == 2:
        return "h=2"
    if semiprimitive_parameters(spec.p, spec.s * spec.m, spec.h):
        return "semiprimitive"
    return "general"


def gauss_periods_for_spec(spec: CodeSpec, source: str = "auto", field_cap: int | None = None) -> tuple[list[Fraction], str]:
    """Rational Gauss periods of order h over GF(q^m) and the route used."""
    if source not in ("auto", "closed-form", "direct"):
        raise ValueError(f"unknown period source {source!r}")
    if source in ("auto", "closed-form"):
        closed = gauss_periods_closed_form(spec.qm, spec.h)
        if closed is not None and all(e.is_rational() for e in closed):
            return [e.as_fraction() for e in closed], "closed-form"
        if source == "closed-form":
            raise NotApplicable(f"no rational closed form for Gauss periods of order {spec.h} over GF({spec.qm})")
    ctx = build_field(spec.p, spec.s * spec.m, field_cap)
    return [_as_fraction(e) for e in gauss_periods_direct(ctx, spec.h)], "direct"


def predicted_distribution(
    spec: CodeSpec,
    source: str = "auto",
    periods: Sequence | None = None,
    field_cap: int | None = None,
) -> PredictedDistribution:
    """Weight distribution predicted by the Gauss-period formula.

    ``periods`` overrides the period source (used to inject faults in tests).
    Frequencies are message counts and sum to ``q^(m+m1)``.
    """
    if periods is None:
        etas, used = gauss_periods_for_spec(spec, source, field_cap)
    else:
        etas, used = [_as_fraction(e) for e in periods], "override"
        if len(etas) != spec.h:
            raise ValueError(f"need {spec.h} periods, got {len(etas)}")
    q, qm = spec.q, spec.qm
    rows = [ProvenanceRow(0, 1, "a=0, b=0")]
    a_nonzero = qm * (q**spec.m1 - 1)
    if a_nonzero:
        rows.append(ProvenanceRow(predicted_weight(spec, "a_nonzero"), a_nonzero, "a!=0"))
    per_class = (qm - 1) // spec.h
    for i in range(spec.h):
        rows.append(ProvenanceRow(predicted_weight(spec, "a_zero", i, etas), per_class, f"a=0, b in C_{i}"))
    dist = PredictedDistribution(spec, tuple(rows), used, spec_family(spec), tuple(etas))
    if dist.total != spec.message_count:  # pragma: no cover - bookkeeping guard
        raise IntegralityError("predicted frequencies do not sum to q^(m+m1)")
    return dist


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegralityError(f"{what} = {x} is not an integer")
    return int(x)


def table_rows(spec: CodeSpec) -> list[ProvenanceRow] | None:
    """Weight rows from the closed tables for h = 1, h = 2 and semiprimitive h.

    These expressions do not go through Gauss periods at all, which makes
    them a third, independent route for the families they cover.
    """
    q, qm, n, m, m1, h = spec.q, spec.qm, spec.n, spec.m, spec.m1, spec.h
    rows = [ProvenanceRow(0, 1, "zero word")]
    if m1 and q**m1 > 1:
        rows.append(ProvenanceRow(2 * n * q ** (m1 - 1) * (q - 1), q ** (m1 + m) - qm, "a!=0"))
    if h == 1:
        w = Fraction(2 * n * q ** (m1 + m - 1) * (q - 1), qm - 1)
        rows.append(ProvenanceRow(_integral(w, "weight"), qm - 1, "h=1, a=0"))
        return rows
    root = math.isqrt(qm)
    if root * root != qm:
        return None
    scale = Fraction(2 * n * root * q ** (m1 - 1) * (q - 1), qm - 1)
    if h == 2:
        rows.append(ProvenanceRow(_integral(scale * (root - 1), "weight"), (qm - 1) // 2, "h=2, a=0, low"))
        rows.append(ProvenanceRow(_integral(scale * (root + 1), "weight"), (qm - 1) // 2, "h=2, a=0, high"))
        return rows
    sp = semiprimitive_parameters(spec.p, spec.s * m, h)
    if sp is None:
        return None
    gamma = sp[1]
    sign = (-1) ** gamma
    rows.append(
        ProvenanceRow(_integral(scale * (root + sign * (h - 1)), "weight"), (qm - 1) // h, "semiprimitive, distinguished class")
    )
    rows.append(
        ProvenanceRow(_integral(scale * (root - sign), "weight"), (qm - 1) * (h - 1) // h, "semiprimitive, other classes")
    )
    return rows


def merge_rows(rows: Iterable[ProvenanceRow]) -> dict[int, int]:
    out: dict[int, int] = {}
    for r in rows:
        out[r.weight] = out.get(r.weight, 0) + r.frequency
    return dict(sorted(out.items()))


# --------------------------------------------------------------------------
# bounds


def _rational_ge_sqrt_multiple(t: Fraction, r: Fraction, Q: int) -> bool:
    """Exactly decide ``t >= r * sqrt(Q)``."""
    if r >= 0:
        return t >= 0 and t * t >= r * r * Q
    return t >= 0 or t * t <= r * r * Q


def _ceil_plus_sqrt(a: Fraction, r: Fraction, Q: int) -> int:
    """Exact ``ceil(a + r * sqrt(Q))``."""
    root = math.isqrt(Q)
    if root * root == Q:
        return math.ceil(a + r * root)
    k = math.ceil(float(a) + float(r) * math.sqrt(Q))
    while not _rational_ge_sqrt_multiple(k - a, r, Q):
        k += 1
    while _rational_ge_sqrt_multiple(k - 1 - a, r, Q):
        k -= 1
    return k


def bound_applies(spec: CodeSpec) -> bool:
    """``h < q^(m/2) + 1``, i.e. ``(h - 1)^2 < q^m``."""
    return (spec.h - 1) ** 2 < spec.qm


def minimum_distance_lower_bound(spec: CodeSpec) -> int:
    """``ceil(2 n q^(m/2+m1-1) (q-1) / (q^m-1) * (q^(m/2) + 1 - h))``.

    Raises :class:`NotApplicable` unless ``h < q^(m/2) + 1``.
    """
    if not bound_applies(spec):
        raise NotApplicable(f"bound needs h < q^(m/2) + 1; h = {spec.h}, q^m = {spec.qm}")
    c = weight_scale(spec)
    # c * sqrt(Q) * (sqrt(Q) + 1 - h) = c*Q + c*(1-h)*sqrt(Q)
    return _ceil_plus_sqrt(c * spec.qm, c * (1 - spec.h), spec.qm)


def griesmer_length(k: int, d: int, q: int) -> int:
    return sum(-(-d // q**i) for i in range(k))


@dataclass(frozen=True)
class OptimalityReport:
    length: int
    dimension: int
    d: int
    q: int
    griesmer_length: int
    meets_bound: bool
    defect: int
    unimprovable: bool
    almost_optimal_note: str


def griesmer_report(length: int, dimension: int, d: int, q: int) -> OptimalityReport:
    if d < 1 or dimension < 1:
        raise ValueError("Griesmer bound needs d >= 1 and dimension >= 1")
    g = griesmer_length(dimension, d, q)
    unimprovable = griesmer_length(dimension, d + 1, q) > length
    defect = length - g
    if defect == 0:
        note = "meets the Griesmer bound"
    elif defect < 0:
        note = f"violates the Griesmer bound by {-defect}; parameters are inconsistent"
    elif unimprovable:
        note = f"Griesmer defect {defect}; d+1 is excluded by the bound, so d is the largest possible"
    else:
        note = f"Griesmer defect {defect}; not certified optimal by the Griesmer bound"
    return OptimalityReport(length, dimension, d, q, g, defect == 0, defect, unimprovable, note)


# --------------------------------------------------------------------------
# minimality and secret sharing


@dataclass(frozen=True)
class MinimalityReport:
    w_min: int
    w_max: int
    minimal_by_ratio: bool
    ratio_margin: Fraction


def minimality_report(wd: WeightDistribution, q: int | None = None) -> MinimalityReport:
    """Sufficient condition ``w_min / w_max > (q-1)/q``, in exact arithmetic."""
    q = wd.q if q is None else q
    ws = wd.nonzero_weights
    if not ws:
        raise ValueError("the zero code has no nonzero weights")
    w_min, w_max = ws[0], ws[-1]
    margin = Fraction(w_min, w_max) - Fraction(q - 1, q)
    return MinimalityReport(w_min, w_max, w_min * q > w_max * (q - 1), margin)


def stated_minimality_condition(spec: CodeSpec) -> bool | None:
    """Family-specific sufficient conditions for minimality.

    None when the spec falls in none of the h = 1, h = 2 or semiprimitive
    families (with ``h < q^(m/2) + 1``).
    """
    if spec.h == 1:
        return spec.m > 1
    if spec.h == 2:
        return spec.m > 2
    sp = semiprimitive_parameters(spec.p, spec.s * spec.m, spec.h)
    if sp is None or not bound_applies(spec):
        return None
    root = math.isqrt(spec.qm)
    gamma = sp[1]
    if gamma % 2 == 0:
        return spec.h * (spec.q - 1) < root - 1
    return spec.h * spec.q < root + 1


def _distinct_nonzero_codewords(code) -> np.ndarray:
    words = code.all_codeword_labels()
    words = np.unique(words, axis=0)
    return words[np.count_nonzero(words, axis=1) > 0]


def _projective_ids(code, words: np.ndarray) -> np.ndarray:
    """Same id iff two codewords are GF(q)^*-multiples of each other."""
    lead = words[np.arange(len(words)), np.argmax(words != 0, axis=1)]
    inv = np.array([0] + [int(np.flatnonzero(code.mul_table[l] == 1)[0]) for l in range(1, code.q)])
    normalised = code.mul_table[inv[lead][:, None], words]
    _, ids = np.unique(normalised, axis=0, return_inverse=True)
    return ids.ravel()


def minimal_codewords_bruteforce(code, cap: int | None = None) -> bool:
    """True iff every nonzero codeword covers only its own scalar multiples.

    Exhaustive over ordered pairs of distinct nonzero codewords; the zero
    word is excluded.
    """
    cap = DEFAULT_PAIR_CAP if cap is None else cap
    if code.message_count > cap:
        raise CapExceeded("codeword count for pairwise cover check", code.message_count, cap)
    words = _distinct_nonzero_codewords(code)
    if len(words) == 0:
        return True
    ids = _projective_ids(code, words)
    supp = (words != 0).astype(np.float64)
    # outside[i, j] = |supp(j) \ supp(i)|; zero means i covers j
    outside = (1.0 - supp) @ supp.T
    covers = outside == 0
    return not bool((covers & (ids[:, None] != ids[None, :])).any())


def dual_distance_class(code) -> str:
    """``"=1"``, ``"=2"`` or ``">=3"`` for the minimum distance of the dual.

    A dual word of weight 1 is a zero coordinate; one of weight 2 is a pair of
    proportional coordinate functionals. Both show up as columns of the
    generator matrix.
    """
    G = code.generator_labels()
    cols = G.T
    if (np.count_nonzero(cols, axis=1) == 0).any():
        return "=1"
    lead = cols[np.arange(len(cols)), np.argmax(cols != 0, axis=1)]
    inv = np.array([0] + [int(np.flatnonzero(code.mul_table[l] == 1)[0]) for l in range(1, code.q)])
    normalised = code.mul_table[inv[lead][:, None], cols]
    if len(np.unique(normalised, axis=0)) < len(cols):
        return "=2"
    return ">=3"


def proportional_column_pair(code) -> tuple[int, int] | None:
    """First pair of coordinates whose functionals are proportional."""
    G = code.generator_labels()
    cols = G.T
    seen: dict[bytes, int] = {}
    inv = [0] + [int(np.flatnonzero(code.mul_table[l] == 1)[0]) for l in range(1, code.q)]
    for j, col in enumerate(cols):
        nz = np.flatnonzero(col)
        if len(nz) == 0:
            continue
        key = code.mul_table[inv[col[nz[0]]]][col].tobytes()
        if key in seen:
            return seen[key], j
        seen[key] = j
    return None


@dataclass(frozen=True)
class SSSReport:
    w_min: int
    w_max: int
    minimal_by_ratio: bool
    ratio_margin: Fraction
    minimal_by_oracle: bool | None
    dual_distance_class: str
    regime: str  # "dictatorial" | "democratic" | "n/a"
    reason: str


def sss_classification(code, wd: WeightDistribution | None = None, pair_cap: int | None = None) -> SSSReport:
    """Classify the access structure of a secret sharing scheme built on ``code``."""
    if wd is None:
        wd = weight_distribution_bruteforce(code)
    mr = minimality_report(wd)
    pair_cap = DEFAULT_PAIR_CAP if pair_cap is None else pair_cap
    oracle = minimal_codewords_bruteforce(code, pair_cap) if code.message_count <= pair_cap else None
    dual = dual_distance_class(code)
    if not (mr.minimal_by_ratio or oracle):
        why = "minimality not certified by the weight ratio"
        why += "; exhaustive check found a non-minimal codeword" if oracle is False else "; too large for the exhaustive check" if oracle is None else ""
        return SSSReport(mr.w_min, mr.w_max, mr.minimal_by_ratio, mr.ratio_margin, oracle, dual, "n/a", why)
    basis = "weight ratio" if mr.minimal_by_ratio else "exhaustive cover check"
    if dual == "=2":
        regime, why = "dictatorial", f"minimal ({basis}) and dual distance 2"
    elif dual == ">=3":
        regime, why = "democratic", f"minimal ({basis}) and dual distance at least 3"
    else:
        regime, why = "n/a", "dual distance 1: a coordinate is identically zero"
    return SSSReport(mr.w_min, mr.w_max, mr.minimal_by_ratio, mr.ratio_margin, oracle, dual, regime, why)


def a_zero_min_weight(code: Code) -> int | None:
    """Smallest nonzero weight among the words ``c(0, b)``."""
    block = code.block_labels(0)
    w = np.count_nonzero(block, axis=1)
    w = w[w > 0]
    return int(w.min()) if len(w) else None
