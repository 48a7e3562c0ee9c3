"""Factorization over GF(2), irreducibility, primitivity and polynomial periods.

The period of ``h`` with ``h(0) = 1`` is the least ``T >= 1`` such that
``h | 1 + x^T``, i.e. the multiplicative order of ``x`` modulo ``h``.  It is
computed from the complete factorization ``h = prod f_i^e_i``:

    period(h) = 2^k * lcm(order(f_i)),   k minimal with 2^k >= max e_i,

and the result is re-certified by checking ``x^T = 1`` and ``x^(T/p) != 1``
modulo ``h`` for every prime ``p | T``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConstantTermError, DegreeCapError, InvariantError, ReducibleError
from .gf2poly import (
    Poly2,
    _divmod,
    _derivative,
    _gcd,
    _mod,
    _mul,
    _powmod,
    _sqr,
    _sqrt,
    _x_pow_2k_mod,
)

__all__ = [
    "Factorization2",
    "PeriodCertificate",
    "factor",
    "factor_u64",
    "is_irreducible",
    "is_primitive",
    "is_prime",
    "m_bound",
    "order_of_irreducible",
    "period",
    "squarefree_decompose",
]

ORDER_DEGREE_CAP = 64
U64_MAX = (1 << 64) - 1


# ---------- 64-bit integer factorization


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = _small_primes(1024)
# Deterministic for all n < 3.3e24, which covers 64 bits.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2^64 (and well beyond)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:13]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """A non-trivial factor of the odd composite n (Brent's variant of rho)."""
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


def factor_u64(n: int) -> list[tuple[int, int]]:
    """Prime factorization of 1 <= n < 2^64 as sorted (prime, exponent) pairs.

    >>> factor_u64(511)
    [(7, 1), (73, 1)]
    """
    if n < 1 or n > U64_MAX:
        raise ValueError(f"factor_u64 needs 1 <= n < 2^64, got {n}")
    counts: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m)
        stack += [d, m // d]
    return sorted(counts.items())


@lru_cache(maxsize=None)
def _mersenne_factors(d: int) -> tuple[tuple[int, int], ...]:
    return tuple(factor_u64((1 << d) - 1))


# ---------- result types


@dataclass(frozen=True)
class Factorization2:
    """Complete factorization ``original = prod factor**exp``."""

    factors: tuple[tuple[Poly2, int], ...]
    original: Poly2

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def product(self) -> Poly2:
        acc = 1
        for f, e in self.factors:
            acc = _mul(acc, (f**e).bits)
        return Poly2(acc)

    def max_exponent(self) -> int:
        return max((e for _, e in self.factors), default=0)

    def __str__(self) -> str:
        parts = []
        for f, e in self.factors:
            s = f"({f})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class PeriodCertificate:
    poly: Poly2
    period: int
    m_bound: int
    prime_factorization_of_period: tuple[tuple[int, int], ...]
    factorization: Factorization2

    def verify(self) -> None:
        """Re-check divisibility, minimality and ``period | m_bound``."""
        h = self.poly.bits
        T = self.period
        if _powmod(2, T, h) != 1:
            raise InvariantError(f"{self.poly} does not divide 1+x^{T}")
        for p, _ in self.prime_factorization_of_period:
            if _powmod(2, T // p, h) == 1:
                raise InvariantError(f"{self.poly} divides 1+x^{T // p}; {T} is not minimal")
        if self.m_bound % T:
            raise InvariantError(f"period {T} does not divide bound {self.m_bound}")
        prod = 1
        for p, e in self.prime_factorization_of_period:
            prod *= p**e
        if prod != T:
            raise InvariantError("prime factorization does not multiply to the period")


# ---------- factorization stages on raw bit vectors


def _squarefree_int(f: int) -> dict[int, int]:
    """{exponent: product of square-free parts with that multiplicity}."""
    out: dict[int, int] = {}

    def put(e: int, part: int) -> None:
        out[e] = _mul(out.get(e, 1), part)

    def rec(f: int, mult: int) -> None:
        if f == 1:
            return
        fp = _derivative(f)
        if fp == 0:
            rec(_sqrt(f), 2 * mult)
            return
        c = _gcd(f, fp)
        w = _divmod(f, c)[0]
        i = 1
        while w != 1:
            y = _gcd(w, c)
            part = _divmod(w, y)[0]
            if part != 1:
                put(i * mult, part)
            w = y
            c = _divmod(c, y)[0]
            i += 1
        if c != 1:
            rec(_sqrt(c), 2 * mult)

    rec(f, 1)
    return out


def _ddf(f: int) -> list[tuple[int, int]]:
    """Split a square-free f into (product of all degree-d irreducibles, d)."""
    out = []
    i = 1
    xp = 2
    while f.bit_length() - 1 >= 2 * i:
        xp = _mod(_sqr(xp), f)
        g = _gcd(f, xp ^ 2)
        if g != 1:
            out.append((g, i))
            f = _divmod(f, g)[0]
            xp = _mod(xp, f)
        i += 1
    if f != 1:
        out.append((f, f.bit_length() - 1))
    return out


def _edf(g: int, d: int, rng: random.Random) -> list[int]:
    """Split g, a product of distinct degree-d irreducibles, by trace maps."""
    n = g.bit_length() - 1
    if n == d:
        return [g]
    while True:
        a = rng.getrandbits(n)
        if a < 2:
            continue
        s = t = a
        for _ in range(d - 1):
            s = _mod(_sqr(s), g)
            t ^= s
        u = _gcd(g, t)
        if u != 1 and u != g:
            break
    return _edf(u, d, rng) + _edf(_divmod(g, u)[0], d, rng)


def _check_nonzero_unit_constant(h: Poly2) -> None:
    if h.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if not h.constant_term:
        raise ConstantTermError(f"{h} has constant term 0; strip powers of x first")


# ---------- public operations


def squarefree_decompose(h: Poly2) -> list[tuple[Poly2, int]]:
    """Square-free parts with multiplicities, sorted by multiplicity.

    >>> squarefree_decompose(Poly2.parse("1+x^2"))
    [(Poly2('1+x'), 2)]
    """
    if h.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    low = (h.bits & -h.bits).bit_length() - 1
    parts = _squarefree_int(h.bits >> low)
    if low:
        # x^low: x is square-free and coprime to the rest.
        parts[low] = _mul(parts.get(low, 1), 2)
    return [(Poly2(p), e) for e, p in sorted(parts.items())]


def factor(h: Poly2, seed: int = 0, verify: bool = True) -> Factorization2:
    """Complete factorization of h (with h(0) = 1) into irreducibles."""
    _check_nonzero_unit_constant(h)
    rng = random.Random(seed)
    exps: dict[int, int] = {}
    for e, part in _squarefree_int(h.bits).items():
        for g, d in _ddf(part):
            for f in _edf(g, d, rng):
                exps[f] = exps.get(f, 0) + e
    factors = tuple(
        sorted(((Poly2(f), e) for f, e in exps.items()), key=lambda fe: fe[0].sort_key())
    )
    result = Factorization2(factors, h)
    if verify:
        if result.product() != h:
            raise InvariantError(f"factors of {h} do not multiply back")
        for f, _ in factors:
            if not is_irreducible(f):
                raise InvariantError(f"factor {f} of {h} is reducible")
    return result


def is_irreducible(h: Poly2) -> bool:
    """Rabin's test: x^(2^d) = x mod h and gcd(x^(2^(d/p)) - x, h) = 1."""
    d = h.degree
    if d < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    m = h.bits
    x = _mod(2, m)
    if _x_pow_2k_mod(d, m) != x:
        return False
    for p, _ in factor_u64(d):
        if _gcd(m, _x_pow_2k_mod(d // p, m) ^ x) != 1:
            return False
    return True


def _order_int(f: int, d: int) -> int:
    order = (1 << d) - 1
    for p, e in _mersenne_factors(d):
        for _ in range(e):
            if _powmod(2, order // p, f) == 1:
                order //= p
            else:
                break
    return order


def _check_order_degree(d: int) -> None:
    if d > ORDER_DEGREE_CAP:
        raise DegreeCapError(
            f"order computation needs the factorization of 2^{d}-1; degree cap is {ORDER_DEGREE_CAP}"
        )


def order_of_irreducible(f: Poly2) -> int:
    """Multiplicative order of x modulo the irreducible f (f != x)."""
    d = f.degree
    if d < 1:
        raise ValueError("order needs degree >= 1")
    if not f.constant_term:
        raise ConstantTermError(f"{f} is divisible by x; x has no order modulo it")
    _check_order_degree(d)
    if not is_irreducible(f):
        raise ReducibleError(f"{f} is reducible")
    return _order_int(f.bits, d)


def _two_power_ceiling(e: int) -> int:
    """Least k with 2^k >= e."""
    return (e - 1).bit_length() if e > 1 else 0


def _bound_from(fact: Factorization2) -> int:
    k = _two_power_ceiling(fact.max_exponent())
    lcm = 1
    for f, _ in fact:
        lcm = math.lcm(lcm, (1 << f.degree) - 1)
    return lcm << k


def m_bound(h: Poly2, seed: int = 0) -> int:
    """M(h) = 2^k * lcm(2^d_i - 1) for k minimal with 2^k >= every exponent."""
    if h.degree < 1:
        raise ValueError("m_bound needs degree >= 1")
    return _bound_from(factor(h, seed=seed))


def period(h: Poly2, seed: int = 0) -> PeriodCertificate:
    """Least T >= 1 with h | 1 + x^T, certified."""
    if h.degree < 1:
        raise ValueError("period needs degree >= 1")
    fact = factor(h, seed=seed)
    k = _two_power_ceiling(fact.max_exponent())
    lcm = 1
    primes: dict[int, int] = {}
    for f, _ in fact:
        d = f.degree
        _check_order_degree(d)
        order = _order_int(f.bits, d)
        lcm = math.lcm(lcm, order)
        for p, e in factor_u64(order):
            primes[p] = max(primes.get(p, 0), e)
    if k:
        primes[2] = k  # every order is odd
    cert = PeriodCertificate(
        poly=h,
        period=lcm << k,
        m_bound=_bound_from(fact),
        prime_factorization_of_period=tuple(sorted(primes.items())),
        factorization=fact,
    )
    cert.verify()
    return cert


def is_primitive(h: Poly2) -> bool:
    """Irreducible of degree r with period 2^r - 1."""
    r = h.degree
    if r < 1:
        raise ValueError("primitivity is defined for degree >= 1")
    if not h.constant_term or not is_irreducible(h):
        return False
    _check_order_degree(r)
    return _order_int(h.bits, r) == (1 << r) - 1
