import random

import pytest

from ramforge.astower import ASExtension, as_reduce_F, as_reduce_K, parse_element
from ramforge.errors import InsufficientPrecisionError, ParameterError
from ramforge.forge import P3Parameters
from ramforge.laurent import INF, LaurentSeries, monomial, wp, zero

WINDOW = 240


def ext_for(p, b, window=WINDOW):
    return ASExtension(p, monomial(p, 1, -b, -b + window))


class TestExtension:
    def test_make(self):
        assert ext_for(3, 1).b == 1
        assert ext_for(5, 3).b == 3

    def test_rejects_bad_datum(self):
        with pytest.raises(ParameterError):
            ASExtension(3, monomial(3, 1, -3, 20))  # p | b
        with pytest.raises(ParameterError):
            ASExtension(3, monomial(3, 1, 2, 20))  # nonnegative valuation
        with pytest.raises(ParameterError):
            ASExtension(3, monomial(5, 1, -1, 20))  # modulus mismatch


class TestElementArith:
    def test_defining_relation(self):
        ext = ext_for(3, 1)
        y = ext.y()
        cube = y * y * y
        assert cube.comps[0] == ext.beta
        assert cube.comps[1].coefficient(0) == 1
        assert cube.comps[2].is_zero()

    def test_cancellation(self):
        ext = ext_for(3, 1)
        y = ext.y()
        one = ext.from_base(monomial(3, 1, 0, WINDOW))
        assert ((y + one) - y) == one

    def test_component_valuation(self):
        ext = ext_for(3, 1)
        alpha = monomial(3, 1, -4, WINDOW)
        elt = ext.element({1: alpha})
        assert elt.comps[1] == alpha
        assert elt.valuation() == 3 * (-4) - 1

    def test_scalar_and_pow(self):
        ext = ext_for(3, 1)
        y = ext.y()
        assert (y * 2).comps[1].coefficient(0) == 2
        assert (y**3).comps[0] == ext.beta


class TestPthPower:
    def test_matches_repeated_multiplication(self):
        # the binomial Frobenius path must agree with plain convolution
        rng = random.Random(16)
        for p, b in ((3, 1), (3, 2), (5, 1)):
            ext = ext_for(p, b, window=120)
            for _ in range(12):
                comps = {
                    i: LaurentSeries(
                        p,
                        [(rng.randint(-3, 3), rng.randint(0, p - 1)) for _ in range(3)],
                        40,
                    )
                    for i in range(p)
                }
                u = ext.element(comps)
                by_mult = u
                for _ in range(p - 1):
                    by_mult = by_mult * u
                assert u.pth_power() == by_mult

    def test_wp_additive_in_extension(self):
        rng = random.Random(17)
        ext = ext_for(3, 1, window=120)
        for _ in range(15):
            def rand_elt():
                comps = {
                    i: LaurentSeries(
                        3,
                        [(rng.randint(-3, 3), rng.randint(0, 2)) for _ in range(3)],
                        40,
                    )
                    for i in range(3)
                }
                return ext.element(comps)

            u, v = rand_elt(), rand_elt()
            assert (u + v).wp() == u.wp() + v.wp()


class TestValuation:
    def test_generator(self):
        assert ext_for(3, 1).y().valuation() == -1

    def test_uniformizer_of_base(self):
        ext = ext_for(3, 1)
        assert ext.from_base(monomial(3, 1, 1, WINDOW)).valuation() == 3

    def test_two_components(self):
        ext = ext_for(3, 1)
        alpha = monomial(3, 1, -4, WINDOW)
        elt = ext.element({0: alpha * ext.beta * 2, 1: alpha})
        assert elt.valuation() == -15

    def test_zero_reports_infinite(self):
        ext = ext_for(3, 1)
        assert ext.zero_element(10).valuation() == INF

    def test_unique_minimizer(self):
        rng = random.Random(13)
        for p, b in ((3, 1), (3, 2), (5, 3)):
            ext = ext_for(p, b)
            for _ in range(40):
                comps = {
                    i: LaurentSeries(
                        p,
                        [(rng.randint(-5, 4), rng.randint(0, p - 1)) for _ in range(4)],
                        30,
                    )
                    for i in range(p)
                }
                elt = ext.element(comps)
                if elt.is_zero():
                    continue
                v = elt.valuation()
                hits = [
                    i
                    for i, c in enumerate(elt.comps)
                    if not c.is_zero() and p * c.val - i * b == v
                ]
                assert len(hits) == 1


class TestReduceK:
    def test_already_reduced(self):
        delta = monomial(3, 1, -1, 20)
        res = as_reduce_K(delta)
        assert res.outcome.is_wild and res.outcome.break_value == 1
        assert res.reduced == delta

    def test_one_step(self):
        res = as_reduce_K(monomial(3, 1, -3, 20))
        assert res.outcome.break_value == 1
        assert res.reduced.valuation() == -1
        assert res.witness == monomial(3, 1, -1, 20)

    def test_nonnegative(self):
        assert as_reduce_K(monomial(3, 1, 0, 20)).outcome.kind == "nonnegative"

    def test_witness_identity(self):
        rng = random.Random(14)
        for p in (3, 5):
            for _ in range(40):
                delta = LaurentSeries(
                    p,
                    [(rng.randint(-9, 5), rng.randint(0, p - 1)) for _ in range(6)],
                    40,
                )
                res = as_reduce_K(delta)
                assert (delta - wp(res.witness) - res.reduced).is_zero()
                v = res.reduced.valuation()
                if res.outcome.is_wild:
                    assert v < 0 and v % p != 0 and res.outcome.break_value == -v
                else:
                    assert v == INF or v >= 0

    def test_insufficient_precision(self):
        delta = monomial(3, 1, -9, -8)  # window of one known coefficient
        with pytest.raises(InsufficientPrecisionError):
            as_reduce_K(delta)


def p3_delta(params, window=WINDOW):
    """alpha*y + r*alpha*beta for the tower datum at (p, b, a)."""
    p, b, a = params.p, params.b, params.a
    ext = ASExtension(p, monomial(p, 1, -b, -b + window))
    alpha = monomial(p, 1, -p * params.s, -p * params.s + window) * ext.beta**params.t
    assert alpha.valuation() == -a
    return ext, ext.element({0: alpha * ext.beta * params.r, 1: alpha})


class TestReduceF:
    def test_tower_instance(self):
        params = P3Parameters.derive(3, 1, 4)
        ext, delta = p3_delta(params)
        res = as_reduce_F(delta)
        assert res.outcome.is_wild and res.outcome.break_value == 11
        assert res.reduced.valuation() == -11
        # the reduction should have found the hand witness r*pi^-s*y^(t+1)
        expect = ext.monomial_element(params.r, -params.s, params.t + 1, WINDOW)
        assert res.witness == expect

    def test_exact_image_reduces_to_zero_class(self):
        ext = ext_for(3, 1)
        delta = ext.y().wp()
        res = as_reduce_F(delta)
        assert res.outcome.kind == "nonnegative"

    def test_already_reduced(self):
        ext = ext_for(3, 1)
        res = as_reduce_F(ext.y())
        assert res.outcome.break_value == 1
        assert res.reduced == ext.y()

    def test_negative_s(self):
        params = P3Parameters.derive(5, 3, 4)
        assert params.s == -1
        _, delta = p3_delta(params)
        res = as_reduce_F(delta)
        assert res.outcome.break_value == 2 * 3 + 5 * (4 - 3)

    @pytest.mark.parametrize("p,b,a", [(3, 1, 4), (3, 2, 11), (3, 5, 8), (5, 1, 2)])
    def test_closed_form(self, p, b, a):
        params = P3Parameters.derive(p, b, a)
        _, delta = p3_delta(params)
        res = as_reduce_F(delta)
        assert res.outcome.break_value == 2 * b + p * (a - b)

    def test_witness_identity_random(self):
        rng = random.Random(15)
        for p, b in ((3, 1), (3, 2), (5, 1)):
            ext = ext_for(p, b, window=200)
            for _ in range(20):
                comps = {
                    i: LaurentSeries(
                        p,
                        [(rng.randint(-6, 3), rng.randint(0, p - 1)) for _ in range(5)],
                        190,
                    )
                    for i in range(p)
                }
                delta = ext.element(comps)
                res = as_reduce_F(delta)
                assert (delta - res.witness.wp() - res.reduced).is_zero()

    def test_strictly_increasing_steps(self):
        # every wp-subtraction must raise the valuation
        params = P3Parameters.derive(3, 2, 11)
        ext, delta = p3_delta(params)
        res = as_reduce_F(delta)
        assert res.reduced.valuation() > delta.valuation()


class TestText:
    def test_roundtrip(self):
        ext = ext_for(3, 1)
        alpha = monomial(3, 1, -4, WINDOW)
        elt = ext.element({0: alpha * 2, 1: alpha})
        again = parse_element(ext, elt.to_text())
        assert again == elt
