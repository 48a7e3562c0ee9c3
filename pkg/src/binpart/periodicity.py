"""Parity of f_{A,2}(n) via phi_A(x) over GF(2).

Over GF(2)[[x]] the generating function of f_{A,2} is the inverse of
phi_A(x) = sum_{a in A} x^a.  For finite A with T = period(phi_A),

    F(x) = 1/phi_A(x) = q(x) / (1 + x^T),   q = (1 + x^T) / phi_A,

so f_{A,2}(n) is odd exactly when n mod T is an exponent of q (the
complementary set A').  Eventually periodic A give a rational phi_A and an
eventually periodic parity pattern.  The module also holds the mod-p
identity check, the bounded period search used to probe other (b, d), and
two exactly solvable families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateSetError, InfiniteSetError, InvariantError
from .factor2 import is_prime, period
from .gf2poly import Poly2, _divmod, _mul
from .partitions import DigitSet, sequence

__all__ = [
    "ParityProfile",
    "RationalPhi",
    "EventualParity",
    "TheoremCheck",
    "PeriodSearchReport",
    "ArBrFamily",
    "phi_poly",
    "parity_period",
    "complement",
    "verify_main_theorem",
    "verify_prime_theorem",
    "identity_coefficients",
    "rational_phi",
    "parity_profile_infinite",
    "period_search",
    "check_putnam_family",
    "check_ar_br_family",
]


def _bits_from_parities(values) -> int:
    """Pack a 0/1 list (index = exponent) into a bit vector."""
    if not values:
        return 0
    return int("".join("1" if v else "0" for v in reversed(values)), 2)


def _require_finite(A: DigitSet) -> None:
    if not A.is_finite:
        raise InfiniteSetError(f"{A} is infinite")


def _require_nondegenerate(A: DigitSet) -> None:
    _require_finite(A)
    if len(A) < 2:
        raise DegenerateSetError("A = {0}: phi = 1, f(n) = 0 for n > 0; no parity period")


# ---------- finite sets


def phi_poly(A: DigitSet) -> Poly2:
    """sum_{a in A} x^a for finite A."""
    _require_finite(A)
    return Poly2.from_exponents(A.members)


def parity_period(A: DigitSet, seed: int = 0) -> int:
    """Minimal period of f_{A,2}(n) mod 2, i.e. the period of phi_A."""
    _require_nondegenerate(A)
    return period(phi_poly(A), seed=seed).period


@dataclass(frozen=True)
class ParityProfile:
    digits: DigitSet
    period: int
    complement: tuple[int, ...]
    odd_density: Fraction

    def is_odd(self, n: int) -> bool:
        return n >= 0 and n % self.period in self._complement_set

    @property
    def _complement_set(self) -> frozenset[int]:
        cached = self.__dict__.get("_cs")
        if cached is None:
            cached = frozenset(self.complement)
            object.__setattr__(self, "_cs", cached)
        return cached

    def complement_set(self) -> DigitSet:
        return DigitSet.finite(self.complement)

    def to_dict(self) -> dict:
        return {
            "T": self.period,
            "complement": list(self.complement),
            "size": len(self.complement),
            "density": f"{self.odd_density.numerator}/{self.odd_density.denominator}",
        }


def complement(A: DigitSet, seed: int = 0) -> ParityProfile:
    """Period T, complementary set A' and odd density |A'|/T of a finite A."""
    _require_nondegenerate(A)
    phi = phi_poly(A)
    T = period(phi, seed=seed).period
    one_plus_xT = (1 << T) | 1
    q, r = _divmod(one_plus_xT, phi.bits)
    if r:
        raise InvariantError(f"{phi} does not divide 1+x^{T}")
    qpoly = Poly2(q)
    comp = tuple(qpoly.exponents())
    profile = ParityProfile(A, T, comp, Fraction(len(comp), T))
    if comp[:1] != (0,):
        raise InvariantError("0 must belong to the complementary set")
    if _mul(phi.bits, q) != one_plus_xT:
        raise InvariantError("phi * q != 1 + x^T")
    parities = sequence(A, 2, 3 * T - 1, modulus=2)
    for n, v in enumerate(parities):
        if bool(v) != profile.is_odd(n):
            raise InvariantError(f"parity of f({n}) disagrees with the complementary set")
    return profile


@dataclass(frozen=True)
class TheoremCheck:
    ok: bool
    truncation: int
    first_failure: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_main_theorem(A: DigitSet, N: int = 512) -> TheoremCheck:
    """Check F_{A,2}(x) * phi_A(x) = 1 in GF(2)[[x]] through degree N."""
    _require_finite(A)
    F = _bits_from_parities(sequence(A, 2, N, modulus=2))
    prod = _mul(F, phi_poly(A).bits) & ((1 << (N + 1)) - 1)
    diff = prod ^ 1
    if diff == 0:
        return TheoremCheck(True, N)
    return TheoremCheck(False, N, (diff & -diff).bit_length() - 1)


def _series_mul(a: list[int], b: list[int], N: int, modulus: int | None) -> list[int]:
    out = [0] * (N + 1)
    nz_b = [(j, v) for j, v in enumerate(b[: N + 1]) if v]
    for i, x in enumerate(a[: N + 1]):
        if not x:
            continue
        for j, y in nz_b:
            if i + j > N:
                break
            out[i + j] += x * y
    if modulus is not None:
        out = [v % modulus for v in out]
    return out


def identity_coefficients(A: DigitSet, b: int, N: int, modulus: int | None = None) -> list[int]:
    """Coefficients 0..N of F_{A,b}(x)^(b-1) * phi_A(x); exact unless ``modulus``."""
    _require_finite(A)
    F = sequence(A, b, N, modulus=modulus)
    acc = [1] + [0] * N
    for _ in range(b - 1):
        acc = _series_mul(acc, F, N, modulus)
    phi = [0] * (N + 1)
    for a in A.members:
        if a <= N:
            phi[a] = 1
    return _series_mul(acc, phi, N, modulus)


def verify_prime_theorem(A: DigitSet, p: int, N: int = 300) -> TheoremCheck:
    """Check F_{A,p}^(p-1) * phi_A = 1 in GF(p)[[x]] through degree N."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = identity_coefficients(A, p, N, modulus=p)
    for n, c in enumerate(coeffs):
        if c != (1 if n == 0 else 0):
            return TheoremCheck(False, N, n)
    return TheoremCheck(True, N)


# ---------- eventually periodic sets


@dataclass(frozen=True)
class RationalPhi:
    """phi_A(x) = polynomial_part + numerator / denominator, denominator = 1 + x^T."""

    numerator: Poly2
    denominator: Poly2
    polynomial_part: Poly2

    @property
    def tail_period(self) -> int:
        return self.denominator.degree

    def coefficient(self, n: int) -> int:
        T = self.tail_period
        return self.polynomial_part.coeff(n) ^ self.numerator.coeff(n % T)

    def as_fraction(self) -> tuple[Poly2, Poly2]:
        """(g, h) with phi_A = g / h."""
        g = self.polynomial_part * self.denominator + self.numerator
        return g, self.denominator

    def check(self, A: DigitSet) -> None:
        deg_a = max(self.polynomial_part.degree, 0)
        for n in range(2 * (deg_a + self.tail_period) + 1):
            if self.coefficient(n) != (n in A):
                raise InvariantError(f"rational form of phi disagrees with A at {n}")


def rational_phi(A: DigitSet) -> RationalPhi:
    """phi_A = a(x) + r(x)/(1 + x^M) over GF(2), M the tail period of A."""
    if A.is_finite:
        rp = RationalPhi(Poly2.ZERO, Poly2.parse("1+x"), phi_poly(A))
    else:
        M = A.tail_modulus
        rho = Poly2.from_exponents(A.tail_residues)
        # The full periodic series rho/(1+x^M) also covers n < cutoff; cancel
        # those terms and add the explicit members instead.
        low = [n for n in range(A.cutoff) if n % M in A._residue_set]
        a = Poly2.from_exponents(low) + Poly2.from_exponents(A.explicit_members)
        rp = RationalPhi(rho, Poly2((1 << M) | 1), a)
    rp.check(A)
    return rp


@dataclass(frozen=True)
class EventualParity:
    """f_{A,2}(n) is odd iff n is in ``initial_odd`` (n < transient) or
    n >= transient and n mod period is in ``odd_residues``."""

    digits: DigitSet
    transient: int
    initial_odd: tuple[int, ...]
    period: int
    odd_residues: tuple[int, ...]

    def is_odd(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.transient:
            return n in self.initial_odd
        return n % self.period in self.odd_residues

    def to_dict(self) -> dict:
        return {
            "transient": self.transient,
            "initial_odd": list(self.initial_odd),
            "T": self.period,
            "odd_residues": list(self.odd_residues),
        }


def _minimal_period(residues: set[int], T: int) -> int:
    for p in range(1, T + 1):
        if T % p == 0 and all((r + p) % T in residues for r in residues):
            return p
    return T  # pragma: no cover


def parity_profile_infinite(A: DigitSet, seed: int = 0) -> EventualParity:
    """Eventual parity pattern of f_{A,2} from F = 1/phi_A in GF(2)(x)."""
    g, h = rational_phi(A).as_fraction()
    if not g.constant_term:
        raise InvariantError("phi_A has constant term 0, impossible when 0 is in A")
    # F = h/g = a2 + r2/g = a2 + r2*qt/(1+x^T)
    a2, r2 = divmod(h, g)
    if g.degree >= 1 and r2:
        T = period(g, seed=seed).period
        qt, rem = divmod(Poly2((1 << T) | 1), g)
        if rem:
            raise InvariantError(f"{g} does not divide 1+x^{T}")
        pattern = set((r2 * qt).exponents())
    else:
        T, pattern = 1, set()
    T = _minimal_period(pattern, T) if pattern else 1
    pattern = {r % T for r in pattern}

    def odd(n: int) -> bool:
        return bool(a2.coeff(n)) != (n % T in pattern)

    transient = a2.degree + 1 if a2 else 0
    while transient > 0 and odd(transient - 1) == ((transient - 1) % T in pattern):
        transient -= 1
    result = EventualParity(
        digits=A,
        transient=transient,
        initial_odd=tuple(n for n in range(transient) if odd(n)),
        period=T,
        odd_residues=tuple(sorted(pattern)),
    )
    for n, v in enumerate(sequence(A, 2, transient + 3 * T, modulus=2)):
        if bool(v) != result.is_odd(n):
            raise InvariantError(f"parity pattern disagrees with f({n}) mod 2")
    return result


# ---------- bounded period search


@dataclass(frozen=True)
class PeriodSearchReport:
    digits: DigitSet
    base: int
    modulus: int
    max_transient: int
    max_period: int
    found: tuple[int, int] | None
    window: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        return {
            "found": self.found is not None,
            "N": self.found[0] if self.found else None,
            "T": self.found[1] if self.found else None,
            "window": list(self.window) if self.window else None,
            "max_transient": self.max_transient,
            "max_period": self.max_period,
        }


def period_search(A: DigitSet, b: int, d: int, N_max: int, T_max: int) -> PeriodSearchReport:
    """Smallest T <= T_max (then smallest N <= N_max) with u(n+T) = u(n) for
    every n >= N inside u(0..N_max + 5*T_max), where u(n) = f_{A,b}(n) mod d."""
    if N_max < 0 or T_max < 1:
        raise ValueError("need N_max >= 0 and T_max >= 1")
    last = N_max + 5 * T_max
    u = np.array(sequence(A, b, last, modulus=d), dtype=np.int64)
    for T in range(1, T_max + 1):
        bad = np.flatnonzero(u[T:] != u[:-T])
        N = int(bad[-1]) + 1 if bad.size else 0
        if N <= N_max:
            return PeriodSearchReport(A, b, d, N_max, T_max, (N, T), (N, last - T))
    return PeriodSearchReport(A, b, d, N_max, T_max, None)


# ---------- closed-form families


def check_putnam_family(b: int, d: int, N: int) -> bool:
    """For A_b = {0, ..., b^2 - 1}: f(n) = n // b + 1 and f(n + b*d) = f(n) + d, n <= N."""
    if b < 2:
        raise ValueError("base must be >= 2")
    A = DigitSet.finite(range(b * b))
    f = sequence(A, b, N + b * d)
    return all(f[n] == n // b + 1 and f[n + b * d] == f[n] + d for n in range(N + 1))


@dataclass(frozen=True)
class ArBrFamily:
    r: int
    a_set: DigitSet
    b_set: DigitSet
    product_ok: bool
    period_a: int
    period_b: int
    complementary: bool

    @property
    def expected_period(self) -> int:
        return (1 << (self.r + 1)) - 1

    @property
    def ok(self) -> bool:
        T = self.expected_period
        return self.product_ok and self.period_a == T and self.period_b == T and self.complementary


def check_ar_br_family(r: int, seed: int = 0) -> ArBrFamily:
    """A_r = {0} u {2^l : l <= r} and B_r = {0} u {2^l - 1 : 1 <= l <= r}."""
    if not 2 <= r <= 12:
        raise ValueError("r must lie in 2..12")
    A = DigitSet.finite([0] + [1 << l for l in range(r + 1)])
    B = DigitSet.finite([0] + [(1 << l) - 1 for l in range(1, r + 1)])
    T = (1 << (r + 1)) - 1
    product_ok = phi_poly(A) * phi_poly(B) == Poly2((1 << T) | 1)
    ca, cb = complement(A, seed=seed), complement(B, seed=seed)
    return ArBrFamily(
        r=r,
        a_set=A,
        b_set=B,
        product_ok=product_ok,
        period_a=ca.period,
        period_b=cb.period,
        complementary=ca.complement == B.members and cb.complement == A.members,
    )
