"""Truncated Laurent series: precision bookkeeping and the AS operator."""

import pytest

from wildmckay.gf import GF
from wildmckay.laurent import INF, InsufficientPrecision, LaurentSeries, artin_schreier

F2 = GF(2)
F3 = GF(3)
F4 = GF(2, 2)


def test_construction_drops_zeros():
    f = LaurentSeries(F3, {-1: 3, 0: 2})
    assert f.support() == [0]


def test_coefficient_above_precision_rejected():
    with pytest.raises(ValueError):
        LaurentSeries(F2, {5: 1}, prec=3)
    f = LaurentSeries(F2, {1: 1}, prec=3)
    with pytest.raises(InsufficientPrecision):
        f.coefficient(4)


def test_addition_takes_min_precision():
    a = LaurentSeries(F2, {0: 1, 2: 1}, prec=5)
    b = LaurentSeries(F2, {1: 1}, prec=2)
    c = a + b
    assert c.prec == 2
    assert c.support() == [0, 1, 2]


def test_product_precision_convolution_bound():
    a = LaurentSeries(F3, {-1: 1}, prec=4)   # ord -1
    b = LaurentSeries(F3, {2: 1}, prec=6)    # ord 2
    c = a * b
    # min(4 + 2, 6 + (-1)) = 5
    assert c.prec == 5
    assert c.support() == [1]


def test_product_with_unknown_zero_factor():
    z = LaurentSeries(F3, {}, prec=2)  # zero so far, unknown above t^2
    b = LaurentSeries(F3, {0: 1}, prec=INF)
    c = z * b
    assert c.is_zero() and c.prec == 2


def test_exact_zero_times_anything_is_exact():
    z = LaurentSeries.zero(F3)
    b = LaurentSeries(F3, {0: 1}, prec=4)
    assert (z * b).prec == INF


def test_shift_moves_precision():
    f = LaurentSeries(F2, {0: 1}, prec=2).shift(-3)
    assert f.support() == [-3]
    assert f.prec == -1


class TestArtinSchreier:
    def test_zero_and_one(self):
        assert artin_schreier(F2.zero).is_zero()
        assert artin_schreier(F2.one).is_zero()

    def test_monomial_expansion(self):
        f = LaurentSeries(F2, {-1: 1})
        w = artin_schreier(f)
        assert w == LaurentSeries(F2, {-2: 1, -1: 1})

    def test_precision_preserved(self):
        f = LaurentSeries(F3, {-1: 1, 2: 1}, prec=4)
        assert artin_schreier(f).prec == 4

    def test_field_element_lands_in_trace_kernel(self):
        for x in F4.elements():
            assert artin_schreier(x).trace() == 0

    def test_additive(self):
        a = LaurentSeries(F3, {-2: 1, 1: 2})
        b = LaurentSeries(F3, {-2: 2, 0: 1})
        assert artin_schreier(a + b) == artin_schreier(a) + artin_schreier(b)
