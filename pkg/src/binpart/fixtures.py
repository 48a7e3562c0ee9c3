"""Replayable numeric fixtures for the ``paper-check`` subcommand.

Each fixture returns ``(ok, detail)``; ``detail`` is a short JSON-friendly
summary of what was computed.
"""

from __future__ import annotations

from typing import Callable

from .factor2 import factor, is_primitive, m_bound, order_of_irreducible, period
from .gf2poly import Poly2
from .partitions import DigitSet, ReprCounter, churchhouse_report, sequence, stern
from .periodicity import (
    check_ar_br_family,
    check_putnam_family,
    complement,
    identity_coefficients,
    parity_profile_infinite,
    period_search,
    phi_poly,
    verify_main_theorem,
    verify_prime_theorem,
)

P = Poly2.parse
S = DigitSet.parse

FIXTURES: dict[str, Callable[[], tuple[bool, object]]] = {}


def fixture(name: str):
    def register(fn):
        FIXTURES[name] = fn
        return fn

    return register


@fixture("factor-0149")
def _factor_0149():
    fact = factor(P("1+x+x^4+x^9"))
    want = ((P("1+x"), 4), (P("1+x+x^2"), 1), (P("1+x^2+x^3"), 1))
    return fact.factors == want, str(fact)


@fixture("period-0149")
def _period_0149():
    cert = period(P("1+x+x^4+x^9"))
    bound = m_bound(P("1+x+x^4+x^9"))
    return (cert.period, bound) == (84, 84), {"period": cert.period, "m_bound": bound}


@fixture("small-orders")
def _small_orders():
    got = {s: order_of_irreducible(P(s)) for s in ("1+x", "1+x+x^2", "1+x+x^3", "1+x^2+x^3")}
    return got == {"1+x": 1, "1+x+x^2": 3, "1+x+x^3": 7, "1+x^2+x^3": 7}, got


@fixture("complement-023")
def _complement_023():
    prof = complement(S("0,2,3"))
    return (prof.period, prof.complement) == (7, (0, 2, 3, 4)), prof.to_dict()


@fixture("complement-013")
def _complement_013():
    prof = complement(S("0,1,3"))
    return (prof.period, prof.complement) == (7, (0, 1, 2, 4)), prof.to_dict()


@fixture("complement-0149")
def _complement_0149():
    prof = complement(S("0,1,4,9"))
    c = prof.complement
    ok = prof.period == 84 and len(c) == 41 and c[0] == 0 and c[-1] == 75
    return ok, {"T": prof.period, "size": len(c), "max": c[-1], "density": prof.to_dict()["density"]}


@fixture("density-counterexample")
def _density_counterexample():
    prof = complement(S("0,1,5,9,10"))
    size, T = len(prof.complement), prof.period
    return (T, size) == (33, 18) and 2 * size > T + 1, f"|A'| = {size} > {(T + 1) // 2} = (T+1)/2, T = {T}"


@fixture("primitive-density")
def _primitive_density():
    out = {}
    ok = True
    for s in ("0,1,2", "0,1,3"):
        A = S(s)
        prof = complement(A)
        prim = is_primitive(phi_poly(A))
        out[s] = {"T": prof.period, "size": len(prof.complement), "primitive": prim}
        ok &= prim and 2 * len(prof.complement) == prof.period + 1
    return ok, out


@fixture("consecutive-digits")
def _consecutive_digits():
    ok = True
    detail = {}
    for d in range(2, 11):
        A = DigitSet.finite(range(d))
        prof = complement(A)
        detail[d] = {"T": prof.period, "complement": list(prof.complement)}
        if d >= 3:
            # phi * (1 + x) = 1 + x^d with period exactly d
            ok &= prof.complement == (0, 1) and prof.period == d
        par = sequence(A, 2, 5 * d, modulus=2)
        ok &= all(bool(v) == (n % d in (0, 1)) for n, v in enumerate(par))
    # d = 2: phi = 1 + x has period 1, so the complement is {0} and f is always odd.
    ok &= detail[2] == {"T": 1, "complement": [0]}
    return ok, detail


@fixture("power-of-two-families")
def _ar_br():
    rows = {r: check_ar_br_family(r) for r in range(2, 9)}
    return all(x.ok for x in rows.values()), {r: x.period_a for r, x in rows.items()}


@fixture("stern-parity")
def _stern_parity():
    ok = all((stern(n) % 2 == 0) == (n % 3 == 0) for n in range(1, 10001))
    return ok, "s(n) even iff 3 | n for 1 <= n <= 10000"


@fixture("stern-identity")
def _stern_identity():
    c = ReprCounter(S("0,1,2"), 2)
    ok = all(stern(n) == c.count(n - 1) for n in range(1, 10001))
    return ok, "s(n) = f_{0,1,2}(n-1) for 1 <= n <= 10000"


@fixture("stern-parity-series")
def _stern_series():
    got = sequence(S("0,1,2"), 2, 7, modulus=2)
    return got == [1, 1, 0, 1, 1, 0, 1, 1], got


@fixture("main-identity")
def _main_identity():
    sets = ("0,1,2", "0,1,3", "0,2,3", "0,1,4,9", "0,1,5,9,10", "0")
    got = {s: verify_main_theorem(S(s), 512).ok for s in sets}
    return all(got.values()), got


@fixture("prime-identity")
def _prime_identity():
    cases = (("0,1,2", 3), ("0,1,3", 3), ("0,1", 5), ("0,1", 2))
    got = {f"{s} p={p}": verify_prime_theorem(S(s), p, 300).ok for s, p in cases}
    return all(got.values()), got


@fixture("composite-witness")
def _composite_witness():
    c2 = identity_coefficients(S("0,1"), 4, 2)[2]
    return c2 == 6 and c2 % 4 == 2, {"coefficient_x2": c2, "mod_4": c2 % 4}


@fixture("putnam-family")
def _putnam():
    ok = all(check_putnam_family(b, d, 500) for b in range(2, 6) for d in range(1, 5))
    return ok, "f(n) = n//b + 1 and f(n+bd) = f(n) + d, b = 2..5"


@fixture("standard-digits")
def _standard_digits():
    ok = all(set(sequence(DigitSet.finite(range(b)), b, 300)) == {1} for b in range(2, 8))
    return ok, "f = 1 for A = {0..b-1}, b = 2..7"


@fixture("odd-digits")
def _odd_digits():
    prof = parity_profile_infinite(S("0|mod=2,res=1|from=1"))
    par = sequence(S("0|mod=2,res=1|from=1"), 2, 2000, modulus=2)
    ok = all(bool(v) == (n == 0 or n % 3 != 0) for n, v in enumerate(par))
    ok &= all(prof.is_odd(n) == bool(v) for n, v in enumerate(par))
    return ok, prof.to_dict()


@fixture("naturals-minus-one")
def _naturals_minus_one():
    A = S("0|mod=1,res=0|from=2")
    prof = parity_profile_infinite(A)
    par = sequence(A, 2, 2000, modulus=2)
    ok = all(bool(v) == (n % 3 in (0, 2)) for n, v in enumerate(par))
    ok &= all(prof.is_odd(n) == bool(v) for n, v in enumerate(par))
    return ok, prof.to_dict()


@fixture("binary-partitions-even")
def _binary_even():
    par = sequence(DigitSet.naturals(), 2, 10000, modulus=2)
    prof = parity_profile_infinite(DigitSet.naturals())
    ok = par[:2] == [1, 1] and not any(par[2:]) and prof.initial_odd == (0, 1)
    return ok, "f_N(n) even for 2 <= n <= 10000"


@fixture("churchhouse")
def _churchhouse():
    rep = churchhouse_report(4096, 256)
    return rep.ok, {"matching_readings": rep.matching_readings, "rows": len(rep.table)}


@fixture("stern-no-period-mod-d")
def _stern_no_period():
    found = {d: period_search(S("0,1,2"), 2, d, 300, 300).found for d in (2, 3, 4, 5)}
    return found == {2: (0, 3), 3: None, 4: None, 5: None}, {str(d): f for d, f in found.items()}


@fixture("base-b-no-period")
def _base_b_no_period():
    cases = ((3, 2), (4, 2), (4, 3))
    found = {f"b={b} d={d}": period_search(S("0,1"), b, d, 300, 300).found for b, d in cases}
    return all(v is None for v in found.values()), found


def run(only: str | None = None) -> list[tuple[str, bool, object]]:
    names = [only] if only else list(FIXTURES)
    results = []
    for name in names:
        if name not in FIXTURES:
            raise KeyError(name)
        try:
            ok, detail = FIXTURES[name]()
        except Exception as exc:  # a crashing fixture is a failing fixture
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results
