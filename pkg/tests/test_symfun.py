from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zgrass.errors import InsufficientPrecision, ParseError, ZgrassError
from zgrass.symfun import (
    Partition,
    TimePolynomial,
    apply_tilde,
    hall,
    horizontal_strips,
    partitions,
    partitions_in_box,
    partitions_upto,
    schur,
    schur_p,
    sqrt_series,
    strip_sum,
    tconst,
    tvar,
)

t1, t2, t3 = tvar(1), tvar(2), tvar(3)
half = Fraction(1, 2)


class TestPartition:
    def test_validation(self):
        assert Partition((3, 1, 0)).parts == (3, 1)
        with pytest.raises(ParseError):
            Partition((1, 2))
        with pytest.raises(ParseError):
            Partition((2, -1))

    def test_weight_and_order(self):
        assert Partition((2, 1)).weight == 3
        assert Partition((1, 1)) < Partition((2,))
        assert Partition(()) < Partition((1,))

    def test_enumeration_order(self):
        assert [p.parts for p in partitions(4)] == [
            (1, 1, 1, 1),
            (2, 1, 1),
            (2, 2),
            (3, 1),
            (4,),
        ]
        assert len(partitions_upto(5)) == 1 + 1 + 2 + 3 + 5 + 7

    def test_box(self):
        got = [p.parts for p in partitions_in_box(2, 2)]
        assert got == [(), (1,), (1, 1), (2,), (2, 1), (2, 2)]


class TestStrips:
    def test_frozen_examples(self):
        assert horizontal_strips((2, 1), 0) == (Partition((2, 1)),)
        assert horizontal_strips((2, 1), 1) == (
            Partition((1, 1)),
            Partition((2,)),
        )
        assert horizontal_strips((2, 1), 2) == (Partition((1,)),)
        assert horizontal_strips((2, 1), 3) == ()

    def test_single_row(self):
        assert horizontal_strips((3,), 2) == (Partition((1,)),)

    @given(st.integers(0, 5), st.integers(0, 8))
    def test_strip_sizes(self, alpha, seed):
        lams = partitions_upto(5)
        lam = lams[seed % len(lams)]
        for mu in horizontal_strips(lam, alpha):
            assert mu.weight == lam.weight - alpha
            # interlacing check
            mu_full = mu.parts + (0,) * (len(lam) - len(mu))
            for i in range(len(lam)):
                assert mu_full[i] <= lam[i]
                if i + 1 < len(lam):
                    assert mu_full[i] >= lam[i + 1]


class TestSchur:
    def test_p_oracles(self):
        assert schur_p(0) == tconst(1)
        assert schur_p(1) == t1
        assert schur_p(2) == half * t1 * t1 + t2
        assert schur_p(3) == Fraction(1, 6) * t1 ** 3 + t1 * t2 + t3
        assert not schur_p(-1)

    def test_chi_oracles(self):
        assert schur((1, 1)) == half * t1 * t1 - t2
        assert schur((2, 1)) == Fraction(1, 3) * t1 ** 3 - t3
        assert schur((2,)) == schur_p(2)
        assert schur(()) == tconst(1)

    def test_strip_sum_oracle(self):
        assert strip_sum((2, 1), 1) == t1 * t1
        assert strip_sum((2, 1), 0) == schur((2, 1))
        assert not strip_sum((2, 1), 3)

    def test_orthonormality(self):
        lams = partitions_upto(4)
        for lam in lams:
            for mu in lams:
                expect = 1 if lam == mu else 0
                assert hall(schur(lam), schur(mu)) == expect

    def test_evaluate(self):
        assert schur((2,)).evaluate({("t", 1): 2, ("t", 2): 3}) == 5
        assert schur((2, 1)).evaluate({("t", 1): 3}) == 9


class TestHall:
    def test_monomial_norms(self):
        # <t1^2, t1^2> = 2!/1 = 2, <t2, t2> = 1/2
        assert hall(t1 * t1, t1 * t1) == 2
        assert hall(t2, t2) == half
        assert hall(t1, t2) == 0

    def test_capped_operand_soundness(self):
        f = (t1 ** 3).with_cap(3)
        assert hall(f, t1 ** 3) == 6
        with pytest.raises(InsufficientPrecision):
            hall(f.differentiate("t", 1), t1 ** 3)

    def test_matches_derivative_route(self):
        polys = [t1 ** 2, t2, schur((2, 1)), t1 * t2 + tconst(3)]
        for f in polys:
            for g in polys:
                assert hall(f, g) == apply_tilde(f, g).constant_term()


class TestApplyTilde:
    def test_scaled_derivative(self):
        # (1/2) d/dt2 applied to t2^2 gives t2
        assert apply_tilde(t2, t2 * t2) == t2
        assert apply_tilde(t1, t1) == tconst(1)

    def test_operator_must_be_exact(self):
        with pytest.raises(ZgrassError):
            apply_tilde(t1.with_cap(2), t1)

    def test_cap_tracking(self):
        target = (t1 * t2).with_cap(3)
        out = apply_tilde(t2, target)
        assert out.maxweight == 1
        assert out == t1.with_cap(1) * half


class TestTruncation:
    def test_cap_drops_heavy_monomials(self):
        f = (t1 + t2).with_cap(1)
        assert f.terms == t1.terms
        assert (f * f).maxweight == 1
        assert not (f * f)

    def test_negate_times(self):
        p = schur_p(2)
        assert p.negate_times() == half * t1 * t1 - t2
        assert schur((1,)).negate_times() == -t1

    def test_inverse_unit(self):
        f = (tconst(1) - t1).with_cap(3)
        inv = f.inverse_unit()
        assert inv == (tconst(1) + t1 + t1 ** 2 + t1 ** 3).with_cap(3)
        assert f * inv == tconst(1).with_cap(3)
        with pytest.raises(ZgrassError):
            (tconst(1) - t1).inverse_unit()
        with pytest.raises(ZgrassError):
            t1.with_cap(3).inverse_unit()

    def test_component_soundness(self):
        f = (t1 + t2).with_cap(1)
        assert f.component(1) == t1
        with pytest.raises(InsufficientPrecision):
            f.component(2)

    def test_families_are_independent(self):
        s1 = tvar(1, "s")
        assert hall(t1, s1) == 0
        assert (t1 + s1) * (t1 - s1) == t1 ** 2 - s1 ** 2


class TestSqrt:
    def test_perfect_square(self):
        q = (tconst(1) + t1) ** 2
        assert sqrt_series(q, 2) == tconst(1) + t1

    def test_series_root(self):
        q = tconst(1) + t2
        r = sqrt_series(q, 4)
        assert r == tconst(1) + half * t2 - Fraction(1, 8) * t2 ** 2
        assert ((r * r).with_cap(4)) == q.with_cap(4)

    def test_needs_unit_one(self):
        with pytest.raises(ZgrassError):
            sqrt_series(tconst(2), 2)

    @given(st.integers(-3, 3), st.integers(-3, 3))
    def test_root_squares_back(self, a, b):
        q = tconst(1) + a * t1 + b * t2
        r = sqrt_series(q, 5)
        assert (r * r).with_cap(5) == q.with_cap(5)
