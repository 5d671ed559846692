import pytest

from curvzeta import (
    cross_check,
    denef_zeta,
    expand_series,
    hilb_recursion,
    igusa_from_Q,
    q_series_closed,
    rat_eq,
    resolve,
    parse_curve,
    threshold,
)
from curvzeta.errors import MissingBaseCase, MissingClassData
from curvzeta.parsing import parse_rational
from curvzeta.resfile import loads
from curvzeta.resolution import Divisor, ResolutionData, has_smooth_branch
from curvzeta.ring import FactoredRational, L

from conftest import GOLDEN

R = parse_rational

LINE_ZETA = R("(L - 1)*T*(L^2 - T)/(L^4*(L - T))")
CUSP_ZETA = R("(1/L - 1/L^2)*(T^2*L^-1 + T^3*L^-2)")

EXPECTED_TABLES = {
    "x": [1] * 7,
    "y - x^2": [1] * 7,
    "y^2 - x^3": [L + 1, L, 0, 0, 0, 0, 0],
    "y^2 - x^5": [L + 1, L, L**2, L**2, 0, 0, 0],
    "x^2 - y^5": [L + 1, L, L**2, L**2, 0, 0, 0],
    "y^3 - x^4": [L + 1, L**2 + L, L**2, 0, 0, 0, 0],
    "x*y": [L + 1, 2 * L, 2 * L, 2 * L, 2 * L, 2 * L, 2 * L],
    "(y^2 - x^3)*x": [L + 1, L**2 + L, 2 * L**2, L**2, L**2, L**2, L**2],
}
THRESHOLDS = {"y^2 - x^3": 3, "y^2 - x^5": 5, "x^2 - y^5": 5, "y^3 - x^4": 4}


class TestDenef:
    def test_cusp(self, resolved):
        assert rat_eq(denef_zeta(resolved("y^2 - x^3")), CUSP_ZETA)

    def test_line(self, resolved):
        assert rat_eq(denef_zeta(resolved("x")), LINE_ZETA)

    def test_empty_order_one_set(self):
        res = ResolutionData(2, (Divisor(1, 2, 1, 2),), 2)
        assert denef_zeta(res).is_zero()

    def test_cusp_expansion_recovers_classes(self, resolved):
        """Divide the zeta coefficients back out and recover H_2, H_3, H_4."""
        res = resolved("y^2 - x^3")
        z = expand_series(denef_zeta(res), 4)
        q = expand_series(q_series_closed(res), 4)
        assert [q[k] for k in (2, 3, 4)] == [L + 1, L, 0]
        assert z[0] == 0 and z[1] == 0


class TestQSeries:
    def test_line(self, resolved):
        q = q_series_closed(resolved("x"))
        assert rat_eq(q, R("T^2/(1 - T)"))
        assert str(q) == "T^2 / (1 - T)"

    def test_cusp(self, resolved):
        assert rat_eq(q_series_closed(resolved("y^2 - x^3")), R("(L + 1)*T^2 + L*T^3"))

    def test_igusa_from_Q_examples(self, resolved):
        assert rat_eq(igusa_from_Q(R("T^2/(1 - T)"), 2), denef_zeta(resolved("x")))
        assert rat_eq(igusa_from_Q(R("(L + 1)*T^2 + L*T^3"), 2), denef_zeta(resolved("y^2 - x^3")))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_Q_zero(self, n):
        expected = FactoredRational(L**-n - L ** (-2 * n)) * R("T")
        assert rat_eq(igusa_from_Q(FactoredRational(0), n), expected)

    def test_verbatim_constant_breaks_line(self, resolved):
        res = resolved("x")
        assert not rat_eq(igusa_from_Q(R("T^2/(1 - T)"), 2, verbatim=True), denef_zeta(res))
        assert not rat_eq(q_series_closed(res, verbatim=True), R("T^2/(1 - T)"))


class TestRecursion:
    @pytest.mark.parametrize("curve", GOLDEN)
    def test_golden_tables(self, curve, resolved):
        table = hilb_recursion(resolved(curve), 8)
        assert list(table.classes) == EXPECTED_TABLES[curve]
        assert table.threshold == THRESHOLDS.get(curve)

    def test_truncated_tables(self, resolved):
        assert list(hilb_recursion(resolved("y^2 - x^3"), 6).classes) == [L + 1, L, 0, 0, 0]
        assert list(hilb_recursion(resolved("x"), 5).classes) == [1, 1, 1, 1]
        assert list(hilb_recursion(resolved("x^2 - y^5"), 7).classes) == [L + 1, L, L**2, L**2, 0, 0]

    def test_indexing(self, resolved):
        table = hilb_recursion(resolved("y^2 - x^3"), 4)
        assert table[3] == L
        assert list(table.ks()) == [2, 3, 4]
        with pytest.raises(KeyError):
            table[5]
        with pytest.raises(ValueError):
            hilb_recursion(resolved("x"), 1)

    @pytest.mark.parametrize("curve", GOLDEN + ["x^2 - y^7", "x*y*(x - y)", "y^2 - x^2*(x + 1)"])
    def test_polynomial_classes(self, curve):
        for c in hilb_recursion(resolve(parse_curve(curve)), 10).classes:
            assert c.is_polynomial()

    @pytest.mark.parametrize("curve", ["x", "y - x^2", "x - y^3", "y + x^2 + x*y"])
    def test_smooth_curves_are_stable(self, curve):
        assert set(hilb_recursion(resolve(parse_curve(curve)), 10).classes) == {L**0}

    @pytest.mark.parametrize("curve", GOLDEN + ["x^2 - y^7"])
    def test_threshold_is_sharp(self, curve, resolved):
        res = resolved(curve) if curve in GOLDEN else resolve(parse_curve(curve))
        thr = threshold(res, has_smooth_branch(res))
        table = hilb_recursion(res, 10)
        if thr is None:
            assert all(table[k] != 0 for k in table.ks())
        else:
            assert table[thr] != 0
            assert all(table[k] == 0 for k in range(thr + 1, 11))


class TestCrossRoute:
    @pytest.mark.parametrize("curve", GOLDEN + ["x^2 - y^7", "x*y*(x - y)"])
    def test_routes_agree(self, curve, resolved):
        res = resolved(curve) if curve in GOLDEN else resolve(parse_curve(curve))
        assert cross_check(res).ok

    def test_verbatim_fails(self, resolved):
        check = cross_check(resolved("x"), verbatim=True)
        assert not check.ok
        assert check.coefficient_mismatches


HIGHER_DIM = """
ambient_dim 3
H2 "L^2 + L + 1"
divisor id=1 N=2 nu=2 m=1 class_open="L^2 + L" class_strict=1
divisor id=2 N=3 nu=4 m=1 class_open=L^2 class_strict=0
divisor id=3 N=6 nu=7 m=2
"""


class TestFileData:
    def test_higher_dimension_routes_agree(self):
        res = loads(HIGHER_DIM)
        assert cross_check(res, 8).ok
        table = hilb_recursion(res, 5)
        assert table[2] == L**2 + L + 1
        assert table.threshold is None

    def test_missing_class_data(self):
        text = HIGHER_DIM.replace(' class_open=L^2 class_strict=0', "")
        with pytest.raises(MissingClassData):
            denef_zeta(loads(text))

    def test_missing_base_case(self):
        res = ResolutionData(3, (Divisor(1, 1, 1, 1, open_class=L**2, strict_class=L + 1),), None)
        with pytest.raises(MissingBaseCase):
            hilb_recursion(res, 4)
        res2 = ResolutionData(2, (Divisor(1, 1, 1, 1, strict_meets=1),), None)
        with pytest.raises(MissingBaseCase):
            hilb_recursion(res2, 4)

    def test_h2_from_origin_multiplicity(self):
        res = ResolutionData(2, (Divisor(1, 1, 1, 1, strict_meets=1),), 1)
        assert list(hilb_recursion(res, 4).classes) == [1, 1, 1]
