import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from inplace_karatsuba.schoolbook import kr_mul_b1, kr_mul_b2, sb_mul

from oracles import all_naturals, value


def L(*xs):
    return np.array(xs, dtype=np.uint16)


def additive(fn, rho, c, *ops):
    n = c.shape[0]
    d = np.zeros(2 * n, dtype=np.uint16)
    d[:n] = c
    d[n:] = 7 % rho          # garbage: the lower half must be overwritten
    carry = fn(rho, d, *ops)
    return carry, d


def test_sb_examples():
    d = np.empty(4, dtype=np.uint16)
    sb_mul(10, d, L(1, 2), L(3, 4))
    assert list(d) == [0, 4, 0, 8]
    sb_mul(10, d, L(9, 9), L(9, 9))
    assert list(d) == [9, 8, 0, 1]
    d = np.full(5, 3, dtype=np.uint16)
    sb_mul(10, d, L(4, 5, 6), L(0, 0))
    assert not d.any()


def test_b1_examples():
    c, d = additive(kr_mul_b1, 10, L(0, 0), L(9, 9), L(9, 9))
    assert (c, list(d)) == (0, [9, 8, 0, 1])
    c, d = additive(kr_mul_b1, 10, L(9, 9), L(5, 0), L(2, 0))
    assert (c, list(d)) == (1, [0, 9, 0, 0])
    c, d = additive(kr_mul_b1, 10, L(3, 4), L(0, 0), L(5, 6))
    assert (c, list(d)) == (0, [3, 4, 0, 0])


def test_b2_examples():
    c, d = additive(kr_mul_b2, 10, L(0, 9), L(3, 5), L(1, 2), L(4, 7))
    assert (c, list(d)) == (0, [1, 9, 8, 1])
    c, d = additive(kr_mul_b2, 10, L(0, 0), L(1, 2), L(3, 5), L(4, 7))
    assert (c, list(d)) == (-1, [8, 9, 1, 9])
    c, d = additive(kr_mul_b2, 10, L(4, 4), L(6, 1), L(6, 1), L(9, 3))
    assert (c, list(d)) == (0, [4, 4, 0, 0])


@pytest.mark.parametrize("n,m", [(1, 1), (1, 3), (2, 2), (3, 2), (3, 3)])
def test_sb_exhaustive_radix2(n, m):
    for a in all_naturals(2, n):
        for b in all_naturals(2, m):
            d = np.empty(n + m, dtype=np.uint16)
            sb_mul(2, d, a, b)
            assert value(d, 2) == value(a, 2) * value(b, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_additive_exhaustive_radix2(n):
    R2 = 2 ** (2 * n)
    nats = list(all_naturals(2, n))
    for a, b, c in itertools.product(nats, repeat=3):
        carry, d = additive(kr_mul_b1, 2, c, a, b)
        assert carry * R2 + value(d, 2) == value(a, 2) * value(b, 2) + value(c, 2) * 2 ** n
        assert carry in (0, 1)
        for a1 in nats:
            carry, d = additive(kr_mul_b2, 2, c, a, a1, b)
            want = (value(a, 2) - value(a1, 2)) * value(b, 2) + value(c, 2) * 2 ** n
            assert carry * R2 + value(d, 2) == want


@st.composite
def operands(draw, count):
    rho = draw(st.sampled_from((2, 10, 256, 65536)))
    n = draw(st.integers(1, 5))
    one = st.lists(st.integers(0, rho - 1), min_size=n, max_size=n)
    return rho, [L(*draw(one)) for _ in range(count)]


@given(operands(3))
@settings(max_examples=300, deadline=None)
def test_b1_matches_oracle(args):
    rho, (a, b, c) = args
    n = a.shape[0]
    carry, d = additive(kr_mul_b1, rho, c, a, b)
    assert carry * rho ** (2 * n) + value(d, rho) == \
        value(a, rho) * value(b, rho) + value(c, rho) * rho ** n


@given(operands(3))
@settings(max_examples=300, deadline=None)
def test_b2_with_zero_a1_equals_b1(args):
    rho, (a, b, c) = args
    zero = np.zeros_like(a)
    assert additive(kr_mul_b1, rho, c, a, b)[0] == additive(kr_mul_b2, rho, c, a, zero, b)[0]
    assert np.array_equal(additive(kr_mul_b1, rho, c, a, b)[1],
                          additive(kr_mul_b2, rho, c, a, zero, b)[1])


@given(operands(2), st.integers(0, 4))
@settings(max_examples=300, deadline=None)
def test_sb_commutes(args, extra):
    rho, (a, b) = args
    b = np.concatenate([b, b[:extra]])
    d1 = np.empty(a.shape[0] + b.shape[0], dtype=np.uint16)
    d2 = np.empty_like(d1)
    sb_mul(rho, d1, a, b)
    sb_mul(rho, d2, b, a)
    assert np.array_equal(d1, d2)
    assert value(d1, rho) == value(a, rho) * value(b, rho)
