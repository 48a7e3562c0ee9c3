import random
from fractions import Fraction

import pytest

from binpart.errors import DegenerateSetError, InfiniteSetError
from binpart.factor2 import is_primitive
from binpart.gf2poly import Poly2
from binpart.partitions import DigitSet, sequence
from binpart.periodicity import (
    check_ar_br_family,
    check_putnam_family,
    complement,
    identity_coefficients,
    parity_period,
    parity_profile_infinite,
    period_search,
    phi_poly,
    rational_phi,
    verify_main_theorem,
    verify_prime_theorem,
)

S = DigitSet.parse
P = Poly2.parse


def sets_up_to(top: int):
    for mask in range(1, 1 << top):
        yield DigitSet.finite([0] + [a + 1 for a in range(top) if mask >> a & 1])


def observed_period(par: list[int]) -> int:
    """Smallest T with par[n + T] == par[n] across the whole list."""
    for T in range(1, len(par)):
        if all(par[n + T] == par[n] for n in range(len(par) - T)):
            return T
    raise AssertionError("window too short")


def test_phi_poly():
    assert phi_poly(S("0,1,4,9")) == P("1+x+x^4+x^9")
    assert phi_poly(S("0")) == Poly2.ONE
    assert phi_poly(S("0,1,2")) == P("1+x+x^2")
    with pytest.raises(InfiniteSetError):
        phi_poly(DigitSet.naturals())


def test_parity_periods():
    assert parity_period(S("0,1,4,9")) == 84
    assert parity_period(S("0,1,3")) == 7
    assert parity_period(S("0,1,5,9,10")) == 33


def test_degenerate_set():
    with pytest.raises(DegenerateSetError):
        parity_period(S("0"))
    with pytest.raises(DegenerateSetError):
        complement(S("0"))


def test_complement_examples():
    assert complement(S("0,2,3")).complement == (0, 2, 3, 4)
    assert complement(S("0,1,3")).complement == (0, 1, 2, 4)
    prof = complement(S("0,1,4,9"))
    assert prof.period == 84
    assert len(prof.complement) == 41
    assert (prof.complement[0], prof.complement[-1]) == (0, 75)
    assert prof.odd_density == Fraction(41, 84)
    assert prof.to_dict()["density"] == "41/84"


def test_density_counterexample():
    prof = complement(S("0,1,5,9,10"))
    assert (prof.period, len(prof.complement)) == (33, 18)
    assert 2 * len(prof.complement) > prof.period + 1


def test_primitive_density():
    for text, T in (("0,1,2", 3), ("0,1,3", 7)):
        A = S(text)
        assert is_primitive(phi_poly(A))
        prof = complement(A)
        assert prof.period == T
        assert 2 * len(prof.complement) == T + 1


def test_primitive_density_wider():
    # every phi_A of degree <= 10 that is primitive
    for A in sets_up_to(10):
        if len(A) >= 2 and is_primitive(phi_poly(A)):
            prof = complement(A)
            assert 2 * len(prof.complement) == prof.period + 1, str(A)


def test_consecutive_digits():
    for d in range(3, 11):
        prof = complement(DigitSet.finite(range(d)))
        assert prof.complement == (0, 1)
        assert prof.period == d
    prof = complement(S("0,1"))
    assert (prof.period, prof.complement) == (1, (0,))


def test_parity_period_is_exact_on_sequences():
    for A in sets_up_to(12):
        if len(A) < 2 or A.max_member() > 12:
            continue
        T = parity_period(A)
        if T > 600:
            continue
        par = sequence(A, 2, 5 * T, modulus=2)
        assert all(par[n + T] == par[n] for n in range(4 * T + 1))
        assert observed_period(par) == T, str(A)


def test_complementarity_and_double_complement():
    rng = random.Random(11)
    checked_double = 0
    for _ in range(150):
        A = DigitSet.finite([0] + [a for a in range(1, 10) if rng.random() < 0.4])
        if len(A) < 2:
            continue
        prof = complement(A)
        T = prof.period
        par = sequence(A, 2, 2 * T, modulus=2)
        assert all(bool(v) == (n % T in prof.complement) for n, v in enumerate(par))
        Ap = prof.complement_set()
        if len(Ap) >= 2 and parity_period(Ap) == T:
            back = complement(Ap)
            assert back.complement == A.members
            par2 = sequence(Ap, 2, 2 * T, modulus=2)
            assert all(bool(v) == (n % T in A) for n, v in enumerate(par2))
            checked_double += 1
    assert checked_double > 20


def test_main_theorem_examples():
    assert verify_main_theorem(S("0,1,2"), 200).ok
    assert verify_main_theorem(S("0,1,4,9"), 500).ok
    assert verify_main_theorem(S("0"), 10).ok


def test_main_theorem_all_subsets_of_0_to_10():
    for A in sets_up_to(10):
        check = verify_main_theorem(A, 512)
        assert check.ok and check.first_failure is None, str(A)


def test_main_theorem_detects_a_wrong_series(monkeypatch):
    import binpart.periodicity as mod

    real = mod.sequence

    def corrupt(A, b, N, modulus=None):
        out = list(real(A, b, N, modulus))
        out[37] ^= 1
        return out

    monkeypatch.setattr(mod, "sequence", corrupt)
    check = verify_main_theorem(S("0,1,4,9"), 100)
    assert not check.ok and check.first_failure == 37


def test_prime_theorem():
    assert verify_prime_theorem(S("0,1,2"), 3, 200).ok
    assert verify_prime_theorem(S("0,1,3"), 3, 300).ok
    assert verify_prime_theorem(S("0,1"), 5, 300).ok
    assert verify_prime_theorem(S("0,1"), 2, 100).ok
    assert verify_prime_theorem(S("0,2,3,7"), 7, 150).ok
    with pytest.raises(ValueError):
        verify_prime_theorem(S("0,1"), 4, 10)


def test_composite_witness():
    coeffs = identity_coefficients(S("0,1"), 4, 2)
    assert coeffs[2] == 6
    assert coeffs[2] % 4 == 2


def test_rational_phi():
    g, h = rational_phi(S("0|mod=2,res=1|from=1")).as_fraction()
    # (1+x+x^2)/(1+x^2)
    assert g * P("1+x^2") == P("1+x+x^2") * h
    g, h = rational_phi(DigitSet.naturals()).as_fraction()
    assert g * P("1+x") == h
    g, h = rational_phi(S("0|mod=1,res=0|from=2")).as_fraction()
    assert g * P("1+x") == P("1+x+x^2") * h
    rp = rational_phi(S("0,1,4,9"))
    assert rp.numerator == Poly2.ZERO and rp.polynomial_part == P("1+x+x^4+x^9")


def test_infinite_parities():
    odds = parity_profile_infinite(S("0|mod=2,res=1|from=1"))
    assert all(odds.is_odd(n) == (n == 0 or n % 3 != 0) for n in range(3000))
    minus_one = parity_profile_infinite(S("0|mod=1,res=0|from=2"))
    assert all(minus_one.is_odd(n) == (n % 3 in (0, 2)) for n in range(3000))
    nat = parity_profile_infinite(DigitSet.naturals())
    assert [n for n in range(3000) if nat.is_odd(n)] == [0, 1]


def test_infinite_parities_random_tails():
    rng = random.Random(5)
    for _ in range(40):
        M = rng.randint(1, 6)
        residues = {r for r in range(M) if rng.random() < 0.5} or {0}
        cutoff = rng.randint(1, 10)
        explicit = [0] + [a for a in range(1, cutoff) if rng.random() < 0.5]
        A = DigitSet.periodic(explicit, cutoff, M, residues)
        prof = parity_profile_infinite(A)
        par = sequence(A, 2, 600, modulus=2)
        assert all(prof.is_odd(n) == bool(v) for n, v in enumerate(par)), str(A)


def test_period_search():
    assert period_search(S("0,1,2"), 2, 2, 300, 300).found == (0, 3)
    for d in (3, 4, 5):
        assert period_search(S("0,1,2"), 2, d, 200, 200).found is None
    assert period_search(S("0,1"), 3, 2, 200, 200).found is None
    rep = period_search(S("0,1,4,9"), 2, 2, 50, 100)
    assert rep.found == (0, 84)
    assert rep.to_dict()["T"] == 84


def test_period_search_transient():
    # f for A = N is 1, 1, then even: eventually constant with transient 2
    assert period_search(DigitSet.naturals(), 2, 2, 10, 10).found == (2, 1)


def test_period_search_bounds():
    with pytest.raises(ValueError):
        period_search(S("0,1"), 2, 2, 10, 0)


def test_putnam_family():
    for b in range(2, 6):
        for d in range(1, 5):
            assert check_putnam_family(b, d, 300)
    assert sequence(S("0,1,2,3"), 2, 20) == [n // 2 + 1 for n in range(21)]
    with pytest.raises(ValueError):
        check_putnam_family(1, 1, 5)


def test_ar_br_family():
    fam = check_ar_br_family(2)
    assert fam.a_set.members == (0, 1, 2, 4) and fam.b_set.members == (0, 1, 3)
    assert phi_poly(fam.a_set) * phi_poly(fam.b_set) == P("1+x^7")
    for r in range(2, 11):
        fam = check_ar_br_family(r)
        assert fam.ok and fam.period_a == fam.expected_period == 2 ** (r + 1) - 1
    with pytest.raises(ValueError):
        check_ar_br_family(1)
    with pytest.raises(ValueError):
        check_ar_br_family(13)
