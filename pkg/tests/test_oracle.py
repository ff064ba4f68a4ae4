import dataclasses
import random

import pytest

from conftest import P, dense
from mptd import upoly as U
from mptd.decomp import bivariate_decompose, signed_decompose
from mptd.oracle import (
    OracleError, cross_check, multiplicities_by_shear, sheared_systems, sylvester_resultant,
)
from mptd.polyring import PolyError, canonical
from mptd.prs import CommonFactorError


class TestSylvester:
    def test_two_by_two(self):
        assert sylvester_resultant(P("y - x"), P("y + x"), "y") in (P("2*x"), P("-2*x"))

    def test_golden2(self, golden2):
        r = sylvester_resultant(*golden2, "y")
        assert canonical(r) == canonical(P("x^6*(x - 1)^2*(8*x^2 - 16*x - 1)^2"))
        factors = {tuple(phi): e for phi, e in U.sqf_list(r.to_dense("x"))}
        assert factors == {(0, 1): 6, (1, 15, -24, 8): 2}

    def test_common_factor(self):
        assert sylvester_resultant(P("(y - x)*(y + 1)"), P("(y - x)*y"), "y").is_zero()

    def test_free_of_variable(self):
        with pytest.raises(PolyError):
            sylvester_resultant(P("x"), P("y"), "y")

    def test_matches_product_formula(self):
        # Res_y(y - a, y - b) = b - a for constants in y
        assert sylvester_resultant(P("y - x^2"), P("y - 3"), "y") in (P("x^2 - 3"), P("3 - x^2"))


class TestShear:
    def test_golden2(self, golden2):
        r = multiplicities_by_shear(*golden2)
        assert r.total == 12
        assert r.multiset() == [6, 2, 1, 1, 1, 1]
        assert r.system.certificate["distinct_projected_roots"]

    def test_single_point(self):
        assert multiplicities_by_shear(P("x"), P("y")).total == 1

    def test_monomial(self):
        r = multiplicities_by_shear(P("x^2"), P("y^2"))
        assert r.total == 4 and r.multiset() == [4]

    @pytest.mark.parametrize("a", range(1, 5))
    @pytest.mark.parametrize("b", range(1, 5))
    def test_monomial_totals(self, a, b):
        assert multiplicities_by_shear(P(f"x^{a}"), P(f"y^{b}")).total == a * b

    def test_shared_factor(self):
        with pytest.raises(OracleError):
            multiplicities_by_shear(P("x*y"), P("x*(y + 1)"))

    def test_leading_coefficients_constant_after_shear(self, golden2):
        for sys_, _, _ in sheared_systems(*golden2, max_tries=4):
            assert sys_.f1s.lc(1).is_constant() and sys_.f2s.lc(1).is_constant()

    def test_shear_invariance(self):
        rng = random.Random(4)
        for _ in range(5):
            f1, f2 = dense(rng, 3, bound=5), dense(rng, 2, bound=5)
            try:
                a = multiplicities_by_shear(f1, f2)
                b = multiplicities_by_shear(f1, f2, skip=1)
            except OracleError:
                continue
            assert a.shear != b.shear
            assert a.multiset() == b.multiset()

    def test_to_dict(self, golden2):
        d = multiplicities_by_shear(*golden2).to_dict()
        assert d["total"] == 12 and {g["multiplicity"] for g in d["groups"]} == {6, 2, 1}


class TestCrossCheck:
    def test_match(self, golden2):
        d = bivariate_decompose(*golden2)
        c = cross_check(d, multiplicities_by_shear(*golden2))
        assert c and c.diff == []

    def test_permuted_components(self, golden2):
        d = bivariate_decompose(*golden2)
        d2 = dataclasses.replace(d, positives=list(reversed(d.positives)))
        assert cross_check(d2, multiplicities_by_shear(*golden2))

    def test_second_opinion(self, golden2):
        d = bivariate_decompose(*golden2)
        assert cross_check(d, multiplicities_by_shear(*golden2), second_opinion=True)

    def test_wrong_weight_localized(self, golden2):
        d = bivariate_decompose(*golden2)
        first = d.positives[0]
        bad = dataclasses.replace(d, positives=[dataclasses.replace(first, weight=first.weight + 1)] + d.positives[1:])
        c = cross_check(bad, multiplicities_by_shear(*golden2))
        assert not c
        assert any("component" in e for e in c.diff)

    def test_dropped_negative_detected(self):
        f1 = P("x^2*y^4 - x*y^4 - 3*x^2*y^3 - 2*x*y^3 + 3*x^2*y^2 - y^3 - 5*x*y^2 + y^2 + 3*y + 3")
        f2 = P("x^2*y^3 - x*y^3 - y - x - 4")
        signed = signed_decompose(f1, f2)
        assert signed.negatives
        dropped = dataclasses.replace(signed, negatives=[])
        c = cross_check(dropped, multiplicities_by_shear(f1, f2))
        assert not c and c.diff

    def test_refuses_signed(self):
        f1 = P("x^2*y^4 - x*y^4 - 3*x^2*y^3 - 2*x*y^3 + 3*x^2*y^2 - y^3 - 5*x*y^2 + y^2 + 3*y + 3")
        f2 = P("x^2*y^3 - x*y^3 - y - x - 4")
        c = cross_check(signed_decompose(f1, f2), multiplicities_by_shear(f1, f2))
        assert not c

    def test_missing_component(self, golden2):
        d = bivariate_decompose(*golden2)
        bad = dataclasses.replace(d, positives=d.positives[1:])
        c = cross_check(bad, multiplicities_by_shear(*golden2))
        assert not c
        assert any("expected_points" in e for e in c.diff)

    @pytest.mark.parametrize("seed", range(3))
    def test_random_small(self, seed):
        rng = random.Random(seed)
        for _ in range(5):
            f1, f2 = dense(rng, rng.randint(1, 4)), dense(rng, rng.randint(1, 4))
            try:
                d = bivariate_decompose(f1, f2)
            except CommonFactorError:
                continue
            assert cross_check(d, multiplicities_by_shear(f1, f2))
