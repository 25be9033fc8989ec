from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mll.errors import NonPositiveParameter, SquareDiscriminant
from mll.scalar import (
    MetallicScalar,
    make_params,
    scalar_to_str,
    sigma,
    to_real_approx,
)

from oracles import decimal_string, interval_sign

rationals = st.builds(
    Fraction, st.integers(min_value=-400, max_value=400),
    st.integers(min_value=1, max_value=40),
)


def scalars(params):
    return st.builds(lambda a, b: MetallicScalar(a, b, params), rationals, rationals)


class TestParams:
    def test_golden(self):
        p = make_params(1, 1)
        assert p.disc == 5

    def test_silver(self):
        assert make_params(2, 1).disc == 8

    def test_square_discriminant_rejected(self):
        with pytest.raises(SquareDiscriminant):
            make_params(3, 10)  # 9 + 40 = 49

    @pytest.mark.parametrize("p,q", [(0, 1), (1, 0), (-1, 2), (2, -3)])
    def test_nonpositive_rejected(self, p, q):
        with pytest.raises(NonPositiveParameter):
            make_params(p, q)

    def test_non_integer_rejected(self):
        with pytest.raises(NonPositiveParameter):
            make_params(1.5, 1)


class TestFieldOps:
    def test_sigma_squared(self, golden):
        s = sigma(golden)
        assert s * s == MetallicScalar(1, 1, golden)

    def test_sigma_squared_general(self):
        params = make_params(3, 2)
        s = sigma(params)
        assert s * s == 3 * s + 2

    def test_inverse_of_sigma(self, golden):
        s = sigma(golden)
        inv = 1 / s
        # oracle: multiply back and compare with one
        assert inv * s == 1
        assert inv == MetallicScalar(-1, 1, golden)

    def test_division_by_zero(self, golden):
        z = MetallicScalar(0, 0, golden)
        with pytest.raises(ZeroDivisionError):
            sigma(golden) / z

    @given(x=scalars(make_params(1, 1)))
    def test_mul_identity(self, x):
        assert x * 1 == x

    @given(x=scalars(make_params(2, 1)), y=scalars(make_params(2, 1)),
           z=scalars(make_params(2, 1)))
    @settings(max_examples=60)
    def test_field_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x
        if not x.is_zero():
            assert x * x.inverse() == 1

    def test_mixed_fields_rejected(self, golden, silver):
        with pytest.raises(ValueError):
            sigma(golden) + sigma(silver)

    def test_pow(self, golden):
        s = sigma(golden)
        assert s ** 5 == s * s * s * s * s
        assert s ** 0 == 1
        assert s ** -2 == (s.inverse()) ** 2


class TestConjugate:
    def test_conj_sigma(self, golden):
        s = sigma(golden)
        assert s.conjugate() == MetallicScalar(1, -1, golden)  # p - sigma

    @given(x=scalars(make_params(1, 2) if False else make_params(3, 1)))
    def test_involution(self, x):
        assert x.conjugate().conjugate() == x

    def test_vieta(self):
        for p, q in [(1, 1), (2, 1), (3, 1)]:
            params = make_params(p, q)
            s = sigma(params)
            assert s * s.conjugate() == -q
            assert s + s.conjugate() == p

    @given(x=scalars(make_params(2, 1)), y=scalars(make_params(2, 1)))
    @settings(max_examples=60)
    def test_ring_automorphism(self, x, y):
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()
        assert (x + y).conjugate() == x.conjugate() + y.conjugate()

    @given(x=scalars(make_params(1, 1)), y=scalars(make_params(1, 1)))
    @settings(max_examples=60)
    def test_norm_rational_multiplicative(self, x, y):
        nx = x * x.conjugate()
        assert nx.b == 0
        assert (x * y).norm() == x.norm() * y.norm()


class TestSign:
    def test_zero(self, golden):
        assert MetallicScalar(0, 0, golden).sign() == 0

    def test_one_minus_sigma_negative(self, golden):
        assert (1 - sigma(golden)).sign() == -1

    def test_two_minus_sigma_positive(self, golden):
        assert (2 - sigma(golden)).sign() == 1

    def test_against_interval_oracle(self):
        rng = random.Random(20240811)
        for p, q in [(1, 1), (2, 1), (3, 1), (1, 3)]:
            params = make_params(p, q)
            for _ in range(500):
                a = Fraction(rng.randint(-200, 200), rng.randint(1, 60))
                b = Fraction(rng.randint(-200, 200), rng.randint(1, 60))
                x = MetallicScalar(a, b, params)
                assert x.sign() == interval_sign(a, b, p, params.disc)


class TestDecimal:
    def test_golden_six_digits(self, golden):
        assert to_real_approx(sigma(golden), 6) == "1.618033"

    def test_zero(self, golden):
        assert to_real_approx(MetallicScalar(0, 0, golden), 6) == "0.000000"

    def test_silver_six_digits(self, silver):
        # oracle: decimal square root of the discriminant
        expected = decimal_string(Fraction(0), Fraction(1), 2, 8, 6)
        assert expected == "2.414213"
        assert to_real_approx(sigma(silver), 6) == expected

    def test_matches_decimal_oracle(self):
        rng = random.Random(7)
        for p, q in [(1, 1), (2, 1), (3, 1)]:
            params = make_params(p, q)
            for _ in range(50):
                a = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
                b = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
                x = MetallicScalar(a, b, params)
                digits = rng.randint(1, 12)
                assert to_real_approx(x, digits) == decimal_string(
                    a, b, p, params.disc, digits
                )

    def test_digits_validation(self, golden):
        with pytest.raises(ValueError):
            to_real_approx(sigma(golden), 0)


class TestPrinting:
    @pytest.mark.parametrize(
        "a,b,text",
        [
            (0, 0, "0"),
            (Fraction(3, 5), 0, "3/5"),
            (0, 1, "sigma"),
            (0, -1, "-sigma"),
            (Fraction(3, 5), 2, "3/5 + 2*sigma"),
            (Fraction(1, 2), -2, "1/2 - 2*sigma"),
            (1, Fraction(-1, 3), "1 - 1/3*sigma"),
        ],
    )
    def test_forms(self, golden, a, b, text):
        assert scalar_to_str(MetallicScalar(a, b, golden)) == text
