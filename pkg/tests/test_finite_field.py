import itertools

import numpy as np
import pytest

from fewweight.errors import CapExceeded
from fewweight.finite_field import (
    build_field,
    discrete_log,
    field_add,
    field_mul,
    field_neg,
    field_pow,
    prime_power,
    subfield_view,
    trace,
)

from oracle import NaiveField, multiplicative_order_mod


def naive(F):
    return NaiveField(F.p, F.modulus)


def test_prime_field_uses_smallest_primitive_root():
    F = build_field(3, 1)
    expected = min(g for g in range(1, 3) if multiplicative_order_mod(g, 3) == 2)
    assert F.size == 3
    assert F.primitive_element.value == expected == 2


def test_gf2_primitive_element_is_one():
    F = build_field(2, 1)
    assert F.size == 2
    assert F.primitive_element.value == 1


def test_prime_field_larger_p():
    F = build_field(7, 1)
    assert F.primitive_element.value == 3
    assert F.modulus == (4, 1)


def test_gf81_primitive_element_has_order_80():
    F = build_field(3, 4)
    N = naive(F)
    w = N.decode(F.primitive_element.value)
    assert F.size == 81
    assert N.order(w) == 80


def naive_is_primitive(p, low):
    N = NaiveField(p, list(low) + [1])
    x = N.decode(p) if N.d > 1 else (int(-low[0]) % p,)
    y = x
    for k in range(1, p**N.d - 1):
        if y == N.one():
            return False
        y = N.mul(y, x)
    return y == N.one()


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2)])
def test_modulus_is_lexicographically_smallest_primitive(p, d):
    F = build_field(p, d)
    chosen = F.modulus[:d]
    assert naive_is_primitive(p, chosen)
    for low in itertools.product(range(p), repeat=d):
        if low == chosen:
            break
        assert not naive_is_primitive(p, low)


def test_log_antilog_are_inverse_bijections():
    F = build_field(3, 4)
    nz = np.arange(1, F.size)
    assert (F.antilog_table[F.log_table[nz]] == nz).all()
    assert len(set(F.antilog_table.tolist())) == F.order


def test_multiplication_matches_naive_polynomial_arithmetic():
    F = build_field(3, 3)
    N = naive(F)
    for a in range(F.size):
        for b in range(F.size):
            assert F(a) * F(b) == F(N.encode(N.mul(N.decode(a), N.decode(b))))
            assert F(a) + F(b) == F(N.encode(N.add(N.decode(a), N.decode(b))))


def test_field_laws_examples():
    F = build_field(3, 2)
    w = F.primitive_element
    for v in range(1, F.size):
        a = F(v)
        assert field_mul(a, a.inverse()) == F.one
    assert field_pow(w, F.size - 1) == F.one
    assert w * w == F(F.antilog_table[2])
    assert field_add(w, field_neg(w)) == F.zero


def test_mixed_owner_operands_rejected():
    F, G = build_field(3, 2), build_field(3, 4)
    with pytest.raises(ValueError):
        field_mul(F.one, G.one)
    with pytest.raises(ValueError):
        F.one + G.one


def test_discrete_log():
    F = build_field(3, 4)
    w = F.primitive_element
    assert discrete_log(w) == 1
    assert discrete_log(F.one) == 0
    x = F(F.antilog_table[17])
    assert x == w**17
    assert discrete_log(x) == 17
    with pytest.raises(ValueError):
        discrete_log(F.zero)


def test_trace_examples():
    F9 = build_field(3, 2)
    assert trace(F9.zero, 1) == F9.zero
    # 1 + 1^3 = 2 in GF(3)
    assert trace(F9.one, 1).value == 2
    images = {trace(x, 1).value for x in F9.elements()}
    assert images == set(subfield_view(F9, 1).members.tolist())


def test_trace_matches_naive_frobenius_sum():
    F = build_field(3, 4)
    N = naive(F)
    for e in (1, 2, 4):
        for v in range(F.size):
            assert trace(F(v), e).value == N.encode(N.trace(N.decode(v), e))


def test_relative_trace_from_intermediate_subfield():
    F = build_field(3, 4)
    N = naive(F)
    for v in subfield_view(F, 2).members:
        got = int(F.trace(int(v), 1, from_degree=2))
        assert got == N.encode(N.trace(N.decode(int(v)), 1, top=2))
    with pytest.raises(ValueError):
        F.trace(F.primitive_element.value, 1, from_degree=2)


def test_trace_rejects_non_divisor():
    F = build_field(3, 4)
    with pytest.raises(ValueError):
        trace(F.one, 3)


def test_subfield_views():
    F9 = build_field(3, 2)
    v = subfield_view(F9, 1)
    assert sorted(v.members.tolist()) == [0, 1, 2]

    F81 = build_field(3, 4)
    N = naive(F81)
    fixed = [x for x in range(81) if N.pow(N.decode(x), 9) == N.decode(x)]
    v2 = subfield_view(F81, 2)
    assert len(v2.members) == 9
    assert sorted(v2.members.tolist()) == fixed
    assert len(v2.member_logs) == 8
    assert N.order(N.decode(v2.generator.value)) == 8

    v4 = subfield_view(F81, 4)
    assert sorted(v4.members.tolist()) == list(range(81))
    with pytest.raises(ValueError):
        subfield_view(F81, 3)


def test_subfield_labels_round_trip():
    F = build_field(3, 4)
    v = subfield_view(F, 2)
    assert (v.labels(v.members) == np.arange(9)).all()
    assert (v.values(np.arange(9)) == v.members).all()
    with pytest.raises(ValueError):
        v.labels([F.primitive_element.value])


def test_build_field_errors():
    with pytest.raises(ValueError):
        build_field(4, 2)
    with pytest.raises(ValueError):
        build_field(3, 0)
    with pytest.raises(CapExceeded):
        build_field(3, 5, cap=100)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(2) == (2, 1)
    with pytest.raises(ValueError):
        prime_power(12)


def test_element_coeffs_and_constructors():
    F = build_field(3, 2)
    x = F.from_coeffs([1, 2])
    assert x.value == 1 + 2 * 3
    assert x.coeffs == (1, 2)
    with pytest.raises(ValueError):
        F.from_coeffs([3, 0])
    with pytest.raises(ValueError):
        F(9)
