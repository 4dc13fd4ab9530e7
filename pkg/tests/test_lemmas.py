import pytest

from biunitary import arith, lemmas
from biunitary.lemmas import CaseTag, LemmaId, PrimitivePrimeAbsent


class TestParity:
    def test_small_sweep_passes(self):
        rep = lemmas.check_parity(10**5)
        assert rep.passed
        assert rep.counterexamples == []
        assert rep.lemma_id is LemmaId.PARITY

    def test_single_values_consistent(self):
        # n = 9: sigma** = 10, v2 = 1 >= omega = 1
        assert arith.valuation(arith.sigma_bu_of(9), 2).count >= 1
        # n = 2^10: sigma** = (2^11 - 1) - 2^5 = 2015, odd (power of 2 input)
        assert arith.sigma_bu_of(2**10) == 2015
        assert arith.sigma_bu_of(2**10) % 2 == 1

    def test_bound_guard(self):
        with pytest.raises(ValueError):
            lemmas.check_parity(10**7 + 1)


class TestRatioBounds:
    def test_sweep_passes(self):
        rep = lemmas.check_ratio_bounds(97, 30, 5)
        assert rep.passed, rep.counterexamples[:5]

    def test_e2_carve_out(self):
        # 5/4 >= 1 + 1/4 holds, but 5/4 < 3/2: the 1+1/p bound needs e != 2
        s = arith.sigma_bu_prime_power(2, 2)
        assert s == 5
        assert s * 4 >= 4 * (4 + 1)
        assert s * 2 < 4 * 3

    def test_minimum_attained_at_e_4_m_2(self):
        # sigma**(3^4)/3^4 = 112/81 equals (4/3)(28/27)
        assert arith.sigma_bu_prime_power(3, 4) == 112
        assert 112 * 81 == (4 * 28) * 3 * 27


class TestBang:
    def test_exceptional_pairs(self):
        with pytest.raises(PrimitivePrimeAbsent):
            lemmas.find_primitive_prime(2, 6)
        with pytest.raises(PrimitivePrimeAbsent):
            lemmas.find_primitive_prime(2, 1)
        with pytest.raises(PrimitivePrimeAbsent):
            lemmas.find_primitive_prime(3, 2)  # 3 + 1 = 2^2
        with pytest.raises(PrimitivePrimeAbsent):
            lemmas.find_primitive_prime(7, 2)  # 7 + 1 = 2^3

    def test_2_4(self):
        p = lemmas.find_primitive_prime(2, 4)
        assert p == 5
        assert p % 4 == 1

    def test_residue_condition(self):
        for a, n in [(2, 11), (3, 5), (5, 6), (10, 3)]:
            p = lemmas.find_primitive_prime(a, n)
            assert (a**n - 1) % p == 0
            assert p % n == 1
            for m in range(1, n):
                assert (a**m - 1) % p != 0

    def test_overflow(self):
        with pytest.raises(arith.Overflow64Error):
            lemmas.find_primitive_prime(12, 18)

    def test_sweep(self):
        rep = lemmas.check_bang(12, 18)
        assert rep.passed, rep.counterexamples[:5]
        assert rep.notes["pairs_checked"] > 50


class TestClassify2aqb:
    def test_case_a(self):
        cls = lemmas.classify_2aqb(13, 1)
        assert cls.case_tag is CaseTag.A_E1
        assert cls.sigma == 14 and (cls.a, cls.q, cls.b) == (1, 7, 1)

    def test_not_of_form(self):
        cls = lemmas.classify_2aqb(13, 2)
        assert cls.case_tag is CaseTag.NOT_OF_FORM
        assert cls.sigma == 170  # 2 * 5 * 17

    def test_case_d(self):
        cls = lemmas.classify_2aqb(3, 4)
        assert cls.case_tag is CaseTag.D_E4_MERSENNE
        assert cls.sigma == 112 and cls.a == 4 and cls.q == 7
        assert 3 == 2**2 - 1 and 3 * 3 - 3 + 1 == 7

    def test_case_b_239(self):
        cls = lemmas.classify_2aqb(239, 2)
        assert cls.case_tag is CaseTag.B_E2
        assert cls.sigma == 57122 == 2 * 13**4
        assert (cls.a, cls.q, cls.b) == (1, 13, 4)

    def test_case_c(self):
        # sigma**(7^3) = 8 * 50 / ... = (7+1)(7^2+1) = 400 = 2^4 * 5^2
        cls = lemmas.classify_2aqb(7, 3)
        assert cls.case_tag is CaseTag.C_E3_MERSENNE
        assert cls.sigma == 400 and (cls.a, cls.q, cls.b) == (4, 5, 2)

    def test_pure_power_of_two_flag(self):
        cls = lemmas.classify_2aqb(7, 1)
        assert cls.pure_two_power and cls.b == 0 and cls.q is None
        assert cls.case_tag is CaseTag.A_E1

    def test_rejects_even_prime(self):
        with pytest.raises(ValueError):
            lemmas.classify_2aqb(2, 3)

    def test_sweep(self):
        rep = lemmas.check_classification(200, 6)
        assert rep.passed, rep.counterexamples[:5]
        counts = rep.notes["tag_counts"]
        assert counts.get(CaseTag.A_E1.value, 0) > 0
        assert counts.get(CaseTag.NOT_OF_FORM.value, 0) > 0

    def test_mersenne_certified(self):
        # every C/D tag over a wider sweep carries a certified Mersenne prime
        for p in (q for q in arith.SMALL_PRIMES[1:] if q <= 500):
            for e in (3, 4):
                cls = lemmas.classify_2aqb(p, e)
                if cls.case_tag in (CaseTag.C_E3_MERSENNE, CaseTag.D_E4_MERSENNE):
                    assert arith.is_prime(p) and (p + 1) & p == 0  # p = 2^k - 1


class TestSbuPow2PrimePower:
    def test_e4_allowed(self):
        assert arith.sigma_bu_prime_power(2, 4) == 27 == 3**3

    def test_e5_not_prime_power(self):
        assert arith.factorize(arith.sigma_bu_prime_power(2, 5)).pairs == ((3, 2), (7, 1))

    def test_sweep(self):
        rep = lemmas.check_sbu_pow2_prime_power(40)
        assert rep.passed, rep.counterexamples
