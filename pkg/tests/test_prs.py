import random

import pytest

from conftest import GOLDEN2_F, GOLDEN3_F1, GOLDEN3_F2, XY, XYZ, P, dense
from mptd.oracle import sylvester_resultant
from mptd.polyring import Poly, PolyError, canonical, divide_exact, gcd, prem, primitive_part
from mptd.prs import (
    CommonFactorError, check_step, normalize_cor8, primitivity_certificate, prs_extended,
    subresultant_sequence,
)


def is_unit(p: Poly) -> bool:
    return p.is_constant() and not p.is_zero()


def same_up_to_unit(a: Poly, b: Poly) -> bool:
    return canonical(a) == canonical(b)


def assert_ledger(seq):
    """Every step re-expands exactly and satisfies both coprimality conditions."""
    k = seq.var
    els = seq.elements
    for i, s in enumerate(seq.steps, start=1):
        assert check_step(seq, i)
        assert s.m * els[i - 1] + s.q * els[i] == divide_exact(seq.m_prev(i), s.w) * s.p * s.f_next
        assert is_unit(gcd(s.m, s.p))
        assert is_unit(gcd(s.m, s.g))
        assert s.m.free_of(k) and s.p.free_of(k)
        divide_exact(seq.m_prev(i), s.w)
    degs = [e.degree(k) for e in els]
    assert all(a > b for a, b in zip(degs[1:], degs[2:]))
    assert els[-1].free_of(k)


@pytest.fixture
def golden2_seq():
    f = P(GOLDEN2_F)
    return prs_extended(f, primitive_part(f.diff("y"), "y"), "y")


class TestGolden2:
    def test_three_steps(self, golden2_seq):
        assert golden2_seq.k == 3
        assert_ledger(golden2_seq)

    def test_p_parts(self, golden2_seq):
        ps = [s.p for s in golden2_seq.steps]
        assert same_up_to_unit(ps[0], P("x"))
        assert same_up_to_unit(ps[1], P("x*(8*x^2 - 16*x - 1)"))
        assert is_unit(ps[2])

    def test_last_pair(self, golden2_seq):
        f4, f5 = golden2_seq.last_pair
        assert same_up_to_unit(f4, P("y"))
        assert same_up_to_unit(f5, P("2*x*(x - 1)^2"))

    def test_trace_json(self, golden2_seq):
        import json
        rows = json.loads(golden2_seq.to_json())
        assert [r["index"] for r in rows] == [1, 2, 3]
        assert set(rows[0]) >= {"m", "q", "p", "w", "g", "f_next"}

    def test_w_units(self, golden2_seq):
        assert all(is_unit(s.w) for s in golden2_seq.steps)


class TestGolden3:
    def test_sequence(self):
        seq = prs_extended(P(GOLDEN3_F1, XYZ), P(GOLDEN3_F2, XYZ), "z")
        assert_ledger(seq)
        f3 = seq.elements[2]
        assert same_up_to_unit(f3, P("x^4 + x^2*y^2 - x^2 - x*z - y + y^2*z", XYZ))
        assert same_up_to_unit(seq.steps[1].m, P("(-x + y^2)^2", XYZ))
        assert seq.steps[0].m == P("x^2", XYZ)


class TestErrors:
    def test_common_factor(self):
        h = P("x*y + 1")
        with pytest.raises(CommonFactorError) as info:
            prs_extended(P("y^2 + x") * h, P("y - 3") * h, "y")
        assert same_up_to_unit(info.value.factor, h)

    def test_not_primitive(self):
        with pytest.raises(PolyError):
            prs_extended(P("x*y^2 + x"), P("y + 1"), "y")


class TestNormalize:
    def test_idempotent(self, golden2_seq):
        once = normalize_cor8(golden2_seq)
        twice = normalize_cor8(once)
        assert once.steps == twice.steps

    def test_identity_and_units(self, golden2_seq):
        seq = normalize_cor8(golden2_seq)
        assert_ledger(seq)
        last = seq.steps[-1]
        assert is_unit(last.g)
        assert is_unit(gcd(last.m, last.g * last.f_next))

    def test_raw_sequence_normalizes(self):
        rng = random.Random(7)
        for _ in range(15):
            f1, f2 = dense(rng, 4, bound=5), dense(rng, 3, bound=5)
            f1, f2 = primitive_part(f1, "y"), primitive_part(f2, "y")
            if f1.degree("y") < f2.degree("y"):
                f1, f2 = f2, f1
            if not is_unit(gcd(f1, f2)):
                continue
            raw = prs_extended(f1, f2, "y", normalize=False)
            for i in range(1, raw.k + 1):
                assert check_step(raw, i)
            assert_ledger(normalize_cor8(raw))


class TestSubresultant:
    def test_golden2_matches_sylvester(self):
        f = P(GOLDEN2_F)
        g = f.diff("y")
        seq = subresultant_sequence(f, g, "y")
        last = seq.elements[-1]
        assert last.free_of("y")
        res = sylvester_resultant(f, g, "y")
        assert same_up_to_unit(last, res)
        assert canonical(last) == canonical(P("x^6*(x - 1)^2*(8*x^2 - 16*x - 1)^2"))

    def test_divisible_terminates(self):
        f2 = P("y^2 + x")
        seq = subresultant_sequence(f2 * P("y - 1"), f2, "y")
        assert len(seq.elements) == 2
        assert prem(seq.elements[0], seq.elements[1], "y").is_zero()

    @pytest.mark.parametrize("seed", range(5))
    def test_regular_relation(self, seed):
        rng = random.Random(seed)
        f1, f2 = dense(rng, 4, bound=9), dense(rng, 3, bound=9)
        f1 = Poly(XY, {**f1.terms, (0, 4): 3})
        f2 = Poly(XY, {**f2.terms, (0, 3): 2})
        seq = subresultant_sequence(f1, f2, "y")
        F, L = seq.elements, seq.leading_coeffs
        for i in range(len(F) - 2):
            regular = F[i].degree("y") - F[i + 1].degree("y") == 1 and F[i + 1].degree("y") - F[i + 2].degree("y") == 1
            if not regular or i == 0:
                continue
            # l_{i+1}^2 F_i - l_i^2 F_{i+2} must be a multiple of F_{i+1}
            lhs = L[i + 1] ** 2 * F[i] - L[i] ** 2 * F[i + 2]
            assert prem(lhs, F[i + 1], "y").is_zero()
        assert len(F) >= 3


class TestPrimitivityCertificate:
    def test_coprime(self):
        assert primitivity_certificate(P("y^2 + x"), P("x"), P("x + 1"))

    def test_shared(self):
        assert not primitivity_certificate(P("x*y"), P("x"), P("x"))

    def test_constant_s(self):
        for l in ("x", "x^2 + 1", "3"):
            assert primitivity_certificate(P("y + 1"), P(l), P("5"))


def regular(seq, f1, f2) -> bool:
    """Degree drops by one per step, coprime leading coefficients, unit p-parts."""
    k = seq.var
    degs = [e.degree(k) for e in seq.elements]
    return (all(a - b == 1 for a, b in zip(degs[1:], degs[2:]))
            and is_unit(gcd(f1.lc(k), f2.lc(k)))
            and all(is_unit(s.p) for s in seq.steps))


@pytest.mark.parametrize("seed", range(6))
def test_random_ledger_and_resultant(seed):
    rng = random.Random(100 + seed)
    checked = 0
    for _ in range(10):
        f1, f2 = dense(rng, rng.randint(1, 6)), dense(rng, rng.randint(1, 6))
        f1, f2 = primitive_part(f1, "y"), primitive_part(f2, "y")
        if f1.degree("y") < f2.degree("y"):
            f1, f2 = f2, f1
        if not is_unit(gcd(f1, f2)):
            continue
        seq = prs_extended(f1, f2, "y")
        assert_ledger(seq)
        if regular(seq, f1, f2):
            checked += 1
            assert same_up_to_unit(seq.elements[-1], sylvester_resultant(f1, f2, "y"))
    assert checked > 0


def test_shared_leading_factor_is_not_regular():
    # both leading coefficients vanish at x = 0: the resultant picks up x, the sequence does not
    f1, f2 = P("x*y^2 + y + 1"), P("x*y - 2")
    seq = prs_extended(f1, f2, "y")
    assert not regular(seq, f1, f2)
    res = sylvester_resultant(f1, f2, "y")
    assert same_up_to_unit(divide_exact(res, seq.elements[-1]), P("x"))
