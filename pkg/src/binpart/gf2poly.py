"""Polynomials over GF(2), bit-packed into Python integers.

Bit ``i`` of the backing integer is the coefficient of ``x**i``.  Python's
arbitrary-precision integers are already a canonical little-endian array of
machine limbs (no high zero limbs), so equality of polynomials is equality of
integers and XOR is coefficient-wise addition.

Two layers live here:

* private ``_mul``/``_divmod``/``_mod``/... helpers working on raw ``int``
  bit vectors, used by the hot loops in :mod:`binpart.factor2`;
* the immutable :class:`Poly2` value type plus the public functions
  ``add``, ``mul``, ``square``, ``divrem``, ``gcd``, ``powmod`` and
  ``derivative``.

Text forms: caret notation ``"1+x+x^4+x^9"`` and hex ``"0x213"``; both are
parsed by :meth:`Poly2.parse` and emitted by ``str()`` / :meth:`Poly2.to_hex`.
"""

from __future__ import annotations

import math
import os
import re

from .errors import DegreeOverflowError, ParseError

__all__ = [
    "NEG_INF",
    "Poly2",
    "add",
    "mul",
    "square",
    "divrem",
    "gcd",
    "powmod",
    "derivative",
    "max_degree",
    "set_max_degree",
]

#: Degree of the zero polynomial.
NEG_INF = -math.inf

DEFAULT_MAX_DEGREE = 1 << 20
KARATSUBA_THRESHOLD = 4096  # bits


def _max_degree_from_env() -> int:
    raw = os.environ.get("BINPART_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"BINPART_MAX_DEGREE must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError("BINPART_MAX_DEGREE must be positive")
    return value


_max_degree = _max_degree_from_env()


def max_degree() -> int:
    """Largest degree a :class:`Poly2` may have."""
    return _max_degree


def set_max_degree(value: int) -> int:
    """Change the degree cap; returns the previous value."""
    global _max_degree
    if value < 1:
        raise ValueError("maximum degree must be positive")
    previous, _max_degree = _max_degree, int(value)
    return previous


# ---------- raw bit-vector arithmetic


def _deg(a: int) -> int:
    # Only for a != 0; callers handle zero separately.
    return a.bit_length() - 1


def _mul_school(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    if b.bit_length() <= 32:
        c = 0
        while b:
            low = b & -b
            c ^= a << (low.bit_length() - 1)
            b ^= low
        return c
    # 4-bit windows: table[k] = a * k for every nibble k.
    a2 = a << 1
    a4 = a << 2
    a8 = a << 3
    table = [0, a, a2, a2 ^ a, a4, a4 ^ a, a4 ^ a2, a4 ^ a2 ^ a]
    table += [a8 ^ t for t in table]
    c = 0
    shift = 0
    while b:
        nib = b & 15
        if nib:
            c ^= table[nib] << shift
        b >>= 4
        shift += 4
    return c


def _mul(a: int, b: int) -> int:
    if not a or not b:
        return 0
    la, lb = a.bit_length(), b.bit_length()
    if min(la, lb) <= KARATSUBA_THRESHOLD:
        return _mul_school(a, b)
    half = max(la, lb) // 2
    mask = (1 << half) - 1
    a0, a1 = a & mask, a >> half
    b0, b1 = b & mask, b >> half
    z0 = _mul(a0, b0)
    z2 = _mul(a1, b1)
    z1 = _mul(a0 ^ a1, b0 ^ b1) ^ z0 ^ z2
    return (z2 << (2 * half)) ^ (z1 << half) ^ z0


def _sqr(a: int) -> int:
    # Frobenius: interleave a zero bit after every coefficient.
    if a < 2:
        return a
    return int("0".join(format(a, "b")), 2)


def _sqrt(a: int) -> int:
    """Inverse of ``_sqr``; ``a`` must have no odd-exponent terms."""
    if a < 2:
        return a
    s = format(a, "b")
    if len(s) % 2 == 0 or "1" in s[1::2]:
        raise ValueError("polynomial is not a perfect square")
    return int(s[::2], 2)


def _even_mask(nbits: int) -> int:
    return int("01" * ((nbits + 1) // 2), 2) if nbits > 0 else 0


def _derivative(a: int) -> int:
    return (a >> 1) & _even_mask(a.bit_length())


def _mod(a: int, m: int) -> int:
    dm = m.bit_length()
    if dm == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    while True:
        da = a.bit_length()
        if da < dm:
            return a
        a ^= m << (da - dm)


def _divmod(a: int, m: int) -> tuple[int, int]:
    dm = m.bit_length()
    if dm == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = 0
    while True:
        da = a.bit_length()
        if da < dm:
            return q, a
        shift = da - dm
        q |= 1 << shift
        a ^= m << shift


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _powmod(base: int, e: int, m: int) -> int:
    if m.bit_length() < 2:
        raise ValueError("modulus must have degree >= 1")
    base = _mod(base, m)
    if e == 0:
        return 1
    result = 1
    if base == 2:
        # base is x: multiplication is a shift.
        top = 1 << (m.bit_length() - 1)
        for bit in format(e, "b"):
            result = _mod(_sqr(result), m)
            if bit == "1":
                result <<= 1
                if result & top:
                    result ^= m
        return result
    for bit in format(e, "b"):
        result = _mod(_sqr(result), m)
        if bit == "1":
            result = _mod(_mul(result, base), m)
    return result


def _x_pow_2k_mod(k: int, m: int) -> int:
    """x^(2^k) mod m by k successive squarings."""
    r = _mod(2, m)
    for _ in range(k):
        r = _mod(_sqr(r), m)
    return r


# ---------- value type

_TERM = re.compile(r"^(?:(?P<const>[01])|x(?:\^(?P<exp>\d+))?)$")


class Poly2:
    """Immutable polynomial over GF(2).

    >>> p = Poly2.parse("1+x+x^4+x^9")
    >>> p.degree, p.to_hex()
    (9, '0x213')
    """

    __slots__ = ("_bits",)

    def __init__(self, bits: int | Poly2 = 0):
        if isinstance(bits, Poly2):
            bits = bits._bits
        if not isinstance(bits, int) or isinstance(bits, bool):
            raise TypeError(f"Poly2 expects an int bit vector, got {type(bits).__name__}")
        if bits < 0:
            raise ValueError("bit vector must be non-negative")
        if bits.bit_length() - 1 > _max_degree:
            raise DegreeOverflowError(
                f"degree {bits.bit_length() - 1} exceeds maximum {_max_degree}"
            )
        object.__setattr__(self, "_bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("Poly2 is immutable")

    def __delattr__(self, name):
        raise AttributeError("Poly2 is immutable")

    def __reduce__(self):
        return (Poly2, (self._bits,))

    # construction

    @classmethod
    def from_exponents(cls, exponents) -> Poly2:
        """Sum of x^e over the given exponents (repeated exponents cancel)."""
        bits = 0
        for e in exponents:
            if e < 0:
                raise ValueError("exponents must be non-negative")
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def monomial(cls, k: int) -> Poly2:
        return cls(1 << k)

    @classmethod
    def parse(cls, text: str) -> Poly2:
        """Parse caret (``"1+x+x^3"``) or hex (``"0xb"``) notation."""
        s = "".join(text.split())
        if not s:
            raise ParseError("empty polynomial")
        if s[:2].lower() == "0x":
            try:
                return cls(int(s[2:], 16))
            except ValueError:
                raise ParseError(f"bad hex polynomial {text!r}") from None
        bits = 0
        for term in s.split("+"):
            m = _TERM.match(term)
            if m is None:
                raise ParseError(f"bad term {term!r} in polynomial {text!r}")
            if m.group("const") is not None:
                bits ^= int(m.group("const"))
            else:
                exp = m.group("exp")
                bits ^= 1 << (int(exp) if exp is not None else 1)
        return cls(bits)

    # inspection

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def degree(self) -> int | float:
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return self._bits.bit_length() - 1 if self._bits else NEG_INF

    def is_zero(self) -> bool:
        return not self._bits

    def is_one(self) -> bool:
        return self._bits == 1

    @property
    def constant_term(self) -> int:
        return self._bits & 1

    def coeff(self, i: int) -> int:
        return (self._bits >> i) & 1 if i >= 0 else 0

    def exponents(self) -> list[int]:
        """Exponents with coefficient 1, ascending."""
        s = format(self._bits, "b")[::-1]
        return [i for i, ch in enumerate(s) if ch == "1"] if self._bits else []

    def weight(self) -> int:
        return bin(self._bits).count("1")

    def truncate(self, n: int) -> Poly2:
        """Terms of degree <= n."""
        return Poly2(self._bits & ((1 << (n + 1)) - 1))

    # text

    def __str__(self) -> str:
        if not self._bits:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return "+".join(terms)

    def to_hex(self) -> str:
        return hex(self._bits)

    def __repr__(self) -> str:
        return f"Poly2({str(self)!r})" if self._bits.bit_length() <= 64 else f"Poly2({self.to_hex()})"

    # comparisons

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly2", self._bits))

    def __bool__(self) -> bool:
        return bool(self._bits)

    def sort_key(self) -> tuple[int | float, int]:
        return (self.degree, self._bits)

    # arithmetic

    def __add__(self, other: Poly2) -> Poly2:
        if not isinstance(other, Poly2):
            return NotImplemented
        return Poly2(self._bits ^ other._bits)

    __sub__ = __add__
    __xor__ = __add__

    def __mul__(self, other: Poly2) -> Poly2:
        if not isinstance(other, Poly2):
            return NotImplemented
        return mul(self, other)

    def __divmod__(self, other: Poly2) -> tuple[Poly2, Poly2]:
        if not isinstance(other, Poly2):
            return NotImplemented
        return divrem(self, other)

    def __floordiv__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly2) -> Poly2:
        if not isinstance(other, Poly2):
            return NotImplemented
        return Poly2(_mod(self._bits, other._bits))

    def __pow__(self, e: int) -> Poly2:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = 1, self._bits
        while e:
            if e & 1:
                result = _mul(result, base)
            e >>= 1
            if e:
                base = _sqr(base)
        return Poly2(result)


Poly2.ZERO = Poly2(0)
Poly2.ONE = Poly2(1)
Poly2.X = Poly2(2)


# ---------- public operations


def add(a: Poly2, b: Poly2) -> Poly2:
    return Poly2(a.bits ^ b.bits)


def mul(a: Poly2, b: Poly2) -> Poly2:
    """Carryless product; Karatsuba once both operands exceed 4096 bits."""
    la, lb = a.bits.bit_length(), b.bits.bit_length()
    if la and lb and la + lb - 2 > _max_degree:
        raise DegreeOverflowError(f"product degree {la + lb - 2} exceeds maximum {_max_degree}")
    return Poly2(_mul(a.bits, b.bits))


def square(a: Poly2) -> Poly2:
    """a(x)^2 = a(x^2): every exponent doubled."""
    if a.bits and 2 * (a.bits.bit_length() - 1) > _max_degree:
        raise DegreeOverflowError(f"square exceeds maximum degree {_max_degree}")
    return Poly2(_sqr(a.bits))


def divrem(a: Poly2, b: Poly2) -> tuple[Poly2, Poly2]:
    """Quotient and remainder with ``a = q*b + r`` and ``deg r < deg b``.

    Raises ZeroDivisionError when ``b`` is zero.
    """
    q, r = _divmod(a.bits, b.bits)
    return Poly2(q), Poly2(r)


def gcd(a: Poly2, b: Poly2) -> Poly2:
    if not a.bits and not b.bits:
        raise ValueError("gcd(0, 0) is undefined")
    return Poly2(_gcd(a.bits, b.bits))


def powmod(base: Poly2, e: int, m: Poly2) -> Poly2:
    """base**e mod m by square-and-multiply; requires deg m >= 1."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    if m.bits.bit_length() < 2:
        raise ValueError("modulus must have degree >= 1")
    return Poly2(_powmod(base.bits, e, m.bits))


def derivative(a: Poly2) -> Poly2:
    """Formal derivative; only odd exponents survive, each lowered by one."""
    return Poly2(_derivative(a.bits))
