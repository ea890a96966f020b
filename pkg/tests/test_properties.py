"""Algebraic property suites.

Exhaustive for every field of size at most 81, randomized (1000 cases per
property) on larger fields. Run on their own with ``pytest -m properties``.
"""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from fewweight.code import build_code, validate_spec
from fewweight.cyclotomy import CyclotomicInteger, character_sum, gauss_periods_direct
from fewweight.finite_field import build_field

pytestmark = pytest.mark.properties

# every field of size at most 81
SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)] + [
    (p, 1) for p in (11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79)
]
LARGE_FIELDS = [(3, 6), (2, 10), (5, 4), (7, 3), (3, 8), (2, 16), (13, 3)]
SMALL_CODES = [
    (3, 1, 2, 1, 1, 4),
    (3, 1, 2, 2, 1, 4),
    (3, 1, 2, 1, 2, 4),
    (3, 1, 2, 2, 4, 2),
    (3, 1, 4, 1, 1, 40),
    (3, 1, 4, 2, 5, 8),
    (3, 1, 4, 2, 4, 10),
]
LARGE_CODES = [(3, 1, 6, 2, 7, 52), (3, 1, 6, 3, 4, 91), (2, 1, 8, 4, 5, 51), (5, 1, 4, 2, 2, 78)]
RANDOM = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def ids(params):
    return [str(p) for p in params]


# ---------------------------------------------------------------- field laws


@pytest.mark.parametrize("p,d", SMALL_FIELDS, ids=ids(SMALL_FIELDS))
def test_field_laws_exhaustive(p, d):
    F = build_field(p, d)
    x = np.arange(F.size)
    a, b = x[:, None], x[None, :]
    assert (F.add(a, b) == F.add(b, a)).all()
    assert (F.mul(a, b) == F.mul(b, a)).all()
    assert (F.add(x, 0) == x).all() and (F.mul(x, 1) == x).all()
    assert (F.add(x, F.neg(x)) == 0).all()
    nz = x[1:]
    assert (F.mul(nz, F.inv(nz)) == 1).all()
    ab = F.add(a, b)
    mb = F.mul(a, b)
    for c in x:
        assert (F.add(ab, c) == F.add(a, F.add(b, c))).all()
        assert (F.mul(mb, c) == F.mul(a, F.mul(b, c))).all()
        assert (F.mul(ab, c) == F.add(F.mul(a, c), F.mul(b, c))).all()


@pytest.mark.parametrize("p,d", LARGE_FIELDS, ids=ids(LARGE_FIELDS))
def test_field_laws_random(p, d):
    F = build_field(p, d)
    el = st.integers(0, F.size - 1)

    @RANDOM
    @given(el, el, el)
    def check(a, b, c):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.power(a, F.size) == a

    check()


# ------------------------------------------------------ trace transitivity


def _check_trace(F, x):
    d = F.d
    for e in divisors(d):
        t = F.trace(x, e)
        assert F.in_subfield(t, e).all()
        assert (F.frobenius(t, e) == t).all()
        for f in divisors(e):
            assert (F.trace(t, f, from_degree=e) == F.trace(x, f)).all()


@pytest.mark.parametrize("p,d", SMALL_FIELDS, ids=ids(SMALL_FIELDS))
def test_trace_transitivity_exhaustive(p, d):
    F = build_field(p, d)
    x = np.arange(F.size)
    _check_trace(F, x)
    # trace onto the prime field is onto and balanced
    assert (np.bincount(F.trace(x, 1), minlength=p) == F.size // p).all()


@pytest.mark.parametrize("p,d", LARGE_FIELDS, ids=ids(LARGE_FIELDS))
def test_trace_random(p, d):
    F = build_field(p, d)
    el = st.integers(0, F.size - 1)

    @RANDOM
    @given(el, el, st.integers(0, p - 1))
    def check(a, b, k):
        _check_trace(F, np.array([a]))
        for e in divisors(d):
            lhs = F.trace(F.add(a, F.scale(b, k)), e)
            rhs = F.add(F.trace(a, e), F.scale(F.trace(b, e), k))
            assert lhs == rhs

    check()


# ------------------------------------------------- character orthogonality


def _complex_character_sum(F, a):
    t = F.trace(F.mul(a, np.arange(F.size)), 1)
    return np.exp(2j * np.pi * t / F.p).sum()


@pytest.mark.parametrize("p,d", SMALL_FIELDS, ids=ids(SMALL_FIELDS))
def test_character_orthogonality_exhaustive(p, d):
    F = build_field(p, d)
    assert character_sum(F, 0) == CyclotomicInteger.from_integer(p, F.size)
    for a in range(1, F.size):
        assert character_sum(F, a) == CyclotomicInteger.from_integer(p, 0)
        assert abs(_complex_character_sum(F, a)) < 1e-9 * F.size


ORTHO_FIELDS = [(3, 6), (2, 10), (5, 4), (7, 3), (13, 3)]


@pytest.mark.parametrize("p,d", ORTHO_FIELDS, ids=ids(ORTHO_FIELDS))
def test_character_orthogonality_random(p, d):
    F = build_field(p, d)
    xs = np.arange(F.size)

    @RANDOM
    @given(st.integers(1, F.size - 1), st.integers(0, F.size - 1))
    def check(a, b):
        # sum_x chi(a x) chi(b x)^-1 vanishes unless a = b
        t = F.sub(F.trace(F.mul(a, xs), 1), F.trace(F.mul(b, xs), 1))
        counts = np.bincount(t, minlength=p)
        s = CyclotomicInteger.from_exponent_counts(p, counts)
        assert s == CyclotomicInteger.from_integer(p, F.size if a == b else 0)

    check()


# -------------------------------------------------------- period partition


@pytest.mark.parametrize("p,d", SMALL_FIELDS + LARGE_FIELDS[:5], ids=ids(SMALL_FIELDS + LARGE_FIELDS[:5]))
def test_period_partition(p, d):
    F = build_field(p, d)
    minus_one = CyclotomicInteger.from_integer(p, -1)
    for N in divisors(F.order):
        if N > 64:
            continue
        eta = gauss_periods_direct(F, N)
        total = eta[0]
        for e in eta[1:]:
            total = total + e
        assert total == minus_one, (p, d, N)


# --------------------------------------------------------------- linearity


def _message_index(code):
    # rows of all_codeword_labels: a outer in a_values order, b inner in b_values order
    a_pos = {int(v): i for i, v in enumerate(code.a_values)}
    b_pos = {int(v): i for i, v in enumerate(code.b_values)}
    qm = code.ctx.size
    return lambda a, b: a_pos[int(a)] * qm + b_pos[int(b)]


@pytest.mark.parametrize("spec", SMALL_CODES, ids=ids(SMALL_CODES))
def test_codeword_linearity_exhaustive(spec):
    code = build_code(validate_spec(*spec))
    F = code.ctx
    words = code.all_codeword_labels()
    msgs = [(int(a), int(b)) for a in code.a_values for b in code.b_values]
    index = _message_index(code)
    A = np.array([m[0] for m in msgs])
    B = np.array([m[1] for m in msgs])
    for i, (a, b) in enumerate(msgs):
        j = np.array([index(x, y) for x, y in zip(F.add(a, A), F.add(b, B))])
        assert (code.add_table[words[i][None, :], words] == words[j]).all()
    for lam in range(1, code.q):
        lam_v = int(code.alphabet.values([lam])[0])
        j = np.array([index(x, y) for x, y in zip(F.mul(lam_v, A), F.mul(lam_v, B))])
        assert (code.mul_table[lam][words] == words[j]).all()


@pytest.mark.parametrize("spec", LARGE_CODES, ids=ids(LARGE_CODES))
def test_codeword_linearity_random(spec):
    code = build_code(validate_spec(*spec))
    F = code.ctx
    a_el = st.sampled_from(code.a_values.tolist())
    b_el = st.integers(0, F.size - 1)

    @RANDOM
    @given(a_el, b_el, a_el, b_el, st.integers(1, code.q - 1))
    def check(a1, b1, a2, b2, lam):
        lam_v = int(code.alphabet.values([lam])[0])
        c1 = code.codeword_labels(a1, b1)
        c2 = code.codeword_labels(a2, b2)
        c12 = code.codeword_labels(int(F.add(a1, a2)), int(F.add(b1, b2)))
        assert (code.add_labels(c1, c2) == c12).all()
        scaled = code.codeword_labels(int(F.mul(lam_v, a1)), int(F.mul(lam_v, b1)))
        assert (code.scale_labels(c1, lam) == scaled).all()

    check()


# ------------------------------------------------- cyclotomic integer ring


@RANDOM
@given(
    st.sampled_from([2, 3, 5, 7]).flatmap(
        lambda p: st.tuples(
            st.just(p),
            *[st.lists(st.integers(-20, 20), min_size=p - 1, max_size=p - 1) for _ in range(3)],
        )
    )
)
def test_cyclotomic_integer_ring_laws(args):
    p, x, y, z = args
    X, Y, Z = (CyclotomicInteger(p, tuple(c)) for c in (x, y, z))
    assert (X + Y) + Z == X + (Y + Z)
    assert (X * Y) * Z == X * (Y * Z)
    assert X * (Y + Z) == X * Y + X * Z
    assert X * Y == Y * X
    assert abs((X * Y).to_complex() - X.to_complex() * Y.to_complex()) < 1e-6
