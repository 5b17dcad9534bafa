"""Cover classification: reduction, jumps, the valuation oracle, census."""

import random

import pytest

from wildmckay.covers import (
    ASCoverClass,
    CoverRing,
    EnumerationTooLarge,
    InvalidJump,
    RepPoly,
    ZeroOrBelowPrecision,
    const_class,
    count_extensions,
    count_rep_covers,
    enumerate_covers,
    reduce,
    reduce_with_witnesses,
    ramification_jump,
    uniformizer_params,
    verify_jump,
    witnesses_account_for,
)
from wildmckay.gf import GF
from wildmckay.laurent import InsufficientPrecision, LaurentSeries, artin_schreier

F2 = GF(2)
F3 = GF(3)
F4 = GF(2, 2)
F5 = GF(5)


def series(field, coeffs, prec=None):
    if prec is None:
        return LaurentSeries(field, coeffs)
    return LaurentSeries(field, coeffs, prec)


class TestConstClass:
    def test_zero(self):
        assert const_class(F2.zero) == 0

    def test_one_in_f2(self):
        # the AS image in F_2 is {0}, so 1 has the nonzero class
        assert const_class(F2.one) == 1

    def test_images_are_trivial(self):
        for F in (F2, F3, F4, F5):
            for x in F.elements():
                assert const_class(x ** F.p - x) == 0


class TestReduce:
    def test_zero(self):
        cls = reduce(series(F2, {}))
        assert cls.is_trivial() and cls.jump == 0

    def test_single_step(self):
        cls = reduce(series(F2, {-2: 1}))
        assert cls.rep == RepPoly(F2, {1: 1})
        assert cls.const_class == 0

    def test_single_step_p3(self):
        cls = reduce(series(F3, {-3: 1}))
        assert cls.rep == RepPoly(F3, {1: 1})
        assert cls.const_class == 0

    def test_positive_tail_discarded(self):
        cls = reduce(series(F2, {0: 1, 1: 1, 2: 5}))
        assert cls.rep.is_zero()
        assert cls.const_class == 1

    def test_cascading_reduction(self):
        # t^-4 over F_2 reduces through t^-2 down to t^-1
        cls, wits = reduce_with_witnesses(series(F2, {-4: 1}))
        assert cls.rep == RepPoly(F2, {1: 1})
        assert len(wits) == 2
        assert witnesses_account_for(series(F2, {-4: 1}), cls, wits)

    def test_requires_constant_term_precision(self):
        with pytest.raises(InsufficientPrecision):
            reduce(series(F2, {-2: 1}, prec=-1))

    def test_rep_poly_invariants(self):
        with pytest.raises(ValueError):
            RepPoly(F2, {2: 1})  # p | index
        with pytest.raises(ValueError):
            RepPoly(F2, {0: 1})  # constant term
        with pytest.raises(ValueError):
            RepPoly(F2, {-1: 1})

    @pytest.mark.parametrize("F", [F2, F3, F4, F5])
    def test_idempotent_and_witnesses_random(self, F):
        rng = random.Random(F.order)
        elems = list(F.elements())
        for _ in range(200):
            coeffs = {rng.randint(-9, 2): rng.choice(elems) for _ in range(rng.randint(0, 5))}
            f = series(F, {k: c for k, c in coeffs.items() if not c.is_zero()}, prec=2)
            cls, wits = reduce_with_witnesses(f)
            assert witnesses_account_for(f, cls, wits)
            assert reduce(cls.lift(prec=2)) == cls


class TestJump:
    def test_unramified(self):
        assert ramification_jump(ASCoverClass(RepPoly(F2), 1)) == 0

    def test_simple(self):
        assert ramification_jump(ASCoverClass(RepPoly(F2, {1: 1}), 0)) == 1

    def test_top_index(self):
        assert ramification_jump(ASCoverClass(RepPoly(F2, {3: 1, 1: 1}), 0)) == 3


class TestUniformizerParams:
    @pytest.mark.parametrize(
        "p,j,expected",
        [(3, 2, (1, 1, 1, 0)), (2, 1, (1, 1, 1, 0)), (5, 3, (1, 2, 3, 1))],
    )
    def test_examples(self, p, j, expected):
        assert uniformizer_params(p, j) == expected

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_defining_identity(self, p):
        for j in range(1, 30):
            if j % p == 0:
                continue
            q_, r_, l_, c_ = uniformizer_params(p, j)
            assert j == p * q_ - r_ and 1 <= r_ <= p - 1
            assert 1 <= l_ <= p - 1 and l_ * r_ == p * c_ + 1
            assert p * (l_ * q_ - c_) - l_ * j == 1

    def test_invalid(self):
        with pytest.raises(InvalidJump):
            uniformizer_params(3, 6)
        with pytest.raises(InvalidJump):
            uniformizer_params(3, 0)


class TestCoverRingArithmetic:
    def ring(self, F=F2, rep=None, const=0, prec=None):
        rep = rep or {1: 1}
        return CoverRing(ASCoverClass(RepPoly(F, rep), const), prec)

    def test_sigma_of_g(self):
        R = self.ring()
        g = R.gen()
        assert g.sigma() == g + R.monomial(0, 0)

    def test_delta_of_g_times_series(self):
        # delta(g*h) = h for h in the base field of series
        R = self.ring(F3, {2: 1})
        h = R.monomial(3, 0, 2)
        gh = R.gen() * h
        assert gh.delta() == h

    def test_defining_relation(self):
        # g * g^(p-1) = g - f
        R = self.ring(F3, {1: 1})
        g = R.gen()
        lhs = g * g * g
        f = R.element([R.f_lift, LaurentSeries.zero(F3), LaurentSeries.zero(F3)])
        assert lhs == g - f

    def test_valuation_examples(self):
        R = self.ring(F2, {1: 1})
        assert R.gen().valuation() == -1
        R5 = self.ring(F5, {3: 1})
        x = R5.monomial(1, 2)  # t * g^2: 5 - 6 = -1
        assert x.valuation() == -1

    def test_uniformizer_valuation(self):
        R = self.ring(F3, {2: 1})
        q_, _, l_, c_ = uniformizer_params(3, 2)
        s = R.monomial(l_ * q_ - c_, 0) * R.gen() ** l_
        assert s.valuation() == 1

    def test_zero_below_precision(self):
        R = self.ring()
        with pytest.raises(ZeroOrBelowPrecision):
            R.zero().valuation()

    def test_insufficient_precision_raised_not_wrong(self):
        # an element whose only known terms sit right at the precision edge
        R = CoverRing(ASCoverClass(RepPoly(F2, {1: 1}), 0), prec=0)
        x = R.element(
            [
                LaurentSeries(F2, {0: 1}, prec=0),
                LaurentSeries(F2, {}, prec=0),
            ]
        )
        # candidate 0 from component 0; component 1 could hide 2*1 - 1 = 1 > 0, fine
        assert x.valuation() == 0
        y = R.element(
            [
                LaurentSeries(F2, {}, prec=0),
                LaurentSeries(F2, {0: 1}, prec=0),
            ]
        )
        # candidate -1 from g; unknown region of comp 0 starts at valuation 2
        assert y.valuation() == -1


class TestVerifyJump:
    @pytest.mark.parametrize(
        "F,rep",
        [
            (F2, {1: 1}),
            (F3, {2: 1}),
            (F3, {1: 2}),
            (F5, {3: 1}),
            (F4, {1: (1, 1)}),
        ],
    )
    def test_oracle_true(self, F, rep):
        cls = ASCoverClass(RepPoly(F, {i: F.element(c) for i, c in rep.items()}), 0)
        assert verify_jump(cls)

    def test_sigma_s_minus_s_valuation(self):
        cls = ASCoverClass(RepPoly(F2, {1: 1}), 0)
        ring = CoverRing(cls)
        s = ring.monomial(1, 0) * ring.gen()
        assert (s.sigma() - s).valuation() == 2

    def test_p3_jump2(self):
        cls = ASCoverClass(RepPoly(F3, {2: 1}), 0)
        ring = CoverRing(cls)
        q_, _, l_, c_ = uniformizer_params(3, 2)
        s = ring.monomial(l_ * q_ - c_, 0) * ring.gen() ** l_
        assert (s.sigma() - s).valuation() == 3

    def test_unramified_rejected(self):
        with pytest.raises(InvalidJump):
            verify_jump(ASCoverClass(RepPoly(F2), 1))

    @pytest.mark.parametrize("F", [F2, F3, F5])
    def test_delta_raises_valuation_by_jump(self, F):
        # for elements of non-p-divisible valuation, v(delta(h)) = v(h) + j
        rng = random.Random(F.p)
        for rep in ({1: 1}, {F.p + 1: 1}):
            cls = ASCoverClass(RepPoly(F, rep), 0)
            j = cls.jump
            ring = CoverRing(cls, prec=2 * (j + 1) + 6)
            for _ in range(20):
                comps = []
                for _i in range(F.p):
                    coeffs = {
                        rng.randint(0, 2): F.from_encoding(rng.randrange(F.order))
                        for _ in range(rng.randint(0, 2))
                    }
                    comps.append(LaurentSeries(F, {k: c for k, c in coeffs.items() if not c.is_zero()}, ring.prec))
                h = ring.element(comps)
                try:
                    v = h.valuation()
                except ZeroOrBelowPrecision:
                    continue
                if v % F.p == 0:
                    continue
                assert h.delta().valuation() == v + j


class TestCounting:
    def test_rep_cover_counts(self):
        assert count_rep_covers(2, 0) == 1
        assert count_rep_covers(2, 3) == 2
        assert count_rep_covers(4, 1) == 3

    def test_extension_counts(self):
        assert count_extensions(3, 1) == 3
        assert count_extensions(2, 1) == 2
        # p = 2, q = 2, j = 2n+1 gives 2^(n+1)
        for n in range(5):
            assert count_extensions(2, 2 * n + 1) == 2 ** (n + 1)

    def test_invalid_jumps(self):
        with pytest.raises(InvalidJump):
            count_rep_covers(2, 4)
        with pytest.raises(InvalidJump):
            count_extensions(2, 0)

    def test_class_count_partial_sums(self):
        # sum over j <= J of the stratum counts equals q^(J - floor(J/p))
        for q, p in ((2, 2), (4, 2), (3, 3), (5, 5)):
            for max_j in range(0, 9):
                total = sum(
                    count_rep_covers(q, j)
                    for j in range(max_j + 1)
                    if j == 0 or j % p != 0
                )
                assert total == q ** (max_j - max_j // p)


class TestCensus:
    def test_tiny_f2(self):
        report = enumerate_covers(2, 2)
        assert report.class_count == 2
        assert {c.rep.key() for c in report.classes} == {(), ((1, 1),)}
        assert set(report.fiber_sizes.values()) == {2}
        assert report.all_ok

    def test_no_collapse_below_p(self):
        report = enumerate_covers(2, 1)
        assert report.class_count == 2
        assert set(report.fiber_sizes.values()) == {1}

    def test_f3(self):
        report = enumerate_covers(3, 3)
        assert report.class_count == 9
        assert set(report.fiber_sizes.values()) == {3}
        assert report.all_ok

    def test_guard(self):
        with pytest.raises(EnumerationTooLarge):
            enumerate_covers(2, 40)

    def test_determinism(self):
        a = enumerate_covers(2, 4).to_json(list_forms=True)
        b = enumerate_covers(2, 4).to_json(list_forms=True)
        assert a == b
