"""Counting base-b representations with digits from a set A.

``f_{A,b}(n)`` is the number of sequences (e_0, e_1, ...) with every
``e_k`` in A, finitely many nonzero, and ``n = sum e_k b^k``.  Peeling off
the last digit gives

    f(0) = 1,   f(n) = sum_{a in A, a <= n, a = n mod b} f((n - a) / b),

which :class:`ReprCounter` evaluates either top-down (finite A, single n)
or bottom-up (sequences, and every infinite A).  The generating-function
product in :func:`count_series_oracle` is an independent route to the same
numbers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InfiniteSetError, ParseError

__all__ = [
    "DigitSet",
    "ReprCounter",
    "ChurchhouseReport",
    "count",
    "count_mod",
    "sequence",
    "count_series_oracle",
    "theta",
    "stern",
    "nu2",
    "churchhouse_report",
]


# ---------- digit sets


@dataclass(frozen=True)
class DigitSet:
    """A set of non-negative integers containing 0, finite or eventually periodic.

    ``n`` is a member iff ``n < cutoff and n in explicit_members``, or
    ``n >= cutoff`` and ``n % tail_modulus in tail_residues``.  Instances are
    canonicalized on construction (minimal tail period, minimal cutoff), so
    two descriptions of the same set compare equal.
    """

    explicit_members: tuple[int, ...]
    cutoff: int
    tail_modulus: int | None = None
    tail_residues: tuple[int, ...] | None = None

    def __post_init__(self):
        members = tuple(sorted(set(int(a) for a in self.explicit_members)))
        cutoff = int(self.cutoff)
        if members and members[0] < 0:
            raise ValueError("digits must be non-negative")
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        if members and members[-1] >= cutoff:
            raise ValueError(f"explicit members must lie below cutoff {cutoff}")
        modulus, residues = self.tail_modulus, self.tail_residues
        if (modulus is None) != (residues is None):
            raise ValueError("tail_modulus and tail_residues go together")
        if modulus is not None:
            modulus = int(modulus)
            if modulus < 1:
                raise ValueError("tail modulus must be positive")
            residues = tuple(sorted(set(int(r) for r in residues)))
            if residues and (residues[0] < 0 or residues[-1] >= modulus):
                raise ValueError(f"tail residues must lie in [0, {modulus})")
            if not residues:
                modulus = residues = None
        if modulus is None:
            cutoff = members[-1] + 1 if members else 0
        else:
            modulus, residues = _minimal_tail(modulus, residues)
            rset = set(residues)
            mset = set(members)
            while cutoff > 0 and ((cutoff - 1) in mset) == ((cutoff - 1) % modulus in rset):
                cutoff -= 1
                mset.discard(cutoff)
            members = tuple(a for a in members if a < cutoff)
        object.__setattr__(self, "explicit_members", members)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "tail_modulus", modulus)
        object.__setattr__(self, "tail_residues", residues)
        if 0 not in self:
            raise ValueError("digit sets must contain 0")

    # constructors

    @classmethod
    def finite(cls, members: Iterable[int]) -> DigitSet:
        members = tuple(members)
        return cls(members, max(members) + 1 if members else 0)

    @classmethod
    def periodic(
        cls, explicit: Iterable[int], cutoff: int, modulus: int, residues: Iterable[int]
    ) -> DigitSet:
        return cls(tuple(explicit), cutoff, modulus, tuple(residues))

    @classmethod
    def naturals(cls) -> DigitSet:
        return cls((), 0, 1, (0,))

    @classmethod
    def parse(cls, text: str) -> DigitSet:
        """Parse ``"0,1,4,9"`` or ``"0,1|mod=2,res=1|from=3"``.

        Several tail residues are separated by ``;`` (``res=1;3``).
        """
        s = "".join(text.split())
        sections = s.split("|")
        try:
            explicit = [int(t) for t in sections[0].split(",") if t != ""]
        except ValueError:
            raise ParseError(f"bad digit list in {text!r}") from None
        keys: dict[str, str] = {}
        for section in sections[1:]:
            for item in section.split(","):
                key, sep, value = item.partition("=")
                if not sep or key not in ("mod", "res", "from") or key in keys:
                    raise ParseError(f"bad tail specification {item!r} in {text!r}")
                keys[key] = value
        try:
            if "mod" in keys or "res" in keys:
                if "mod" not in keys or "res" not in keys:
                    raise ParseError(f"tail needs both mod= and res= in {text!r}")
                modulus = int(keys["mod"])
                residues = [int(r) for r in re.split(r"[;:]", keys["res"]) if r != ""]
                cutoff = int(keys["from"]) if "from" in keys else (max(explicit) + 1 if explicit else 0)
                return cls(tuple(explicit), cutoff, modulus, tuple(residues))
            if "from" in keys:
                raise ParseError(f"from= without a periodic tail in {text!r}")
            return cls.finite(explicit)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(f"invalid digit set {text!r}: {exc}") from None

    def __str__(self) -> str:
        if self.is_finite:
            return ",".join(map(str, self.explicit_members))
        start = max(self.cutoff, 1)
        head = ",".join(str(n) for n in range(start) if n in self)
        res = ";".join(map(str, self.tail_residues))
        return f"{head}|mod={self.tail_modulus},res={res}|from={start}"

    # queries

    @property
    def is_finite(self) -> bool:
        return self.tail_modulus is None

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.cutoff:
            return n in self._member_set
        return self.tail_modulus is not None and n % self.tail_modulus in self._residue_set

    @property
    def _member_set(self) -> frozenset[int]:
        cached = self.__dict__.get("_ms")
        if cached is None:
            cached = frozenset(self.explicit_members)
            object.__setattr__(self, "_ms", cached)
        return cached

    @property
    def _residue_set(self) -> frozenset[int]:
        cached = self.__dict__.get("_rs")
        if cached is None:
            cached = frozenset(self.tail_residues or ())
            object.__setattr__(self, "_rs", cached)
        return cached

    @property
    def members(self) -> tuple[int, ...]:
        if not self.is_finite:
            raise InfiniteSetError("an infinite digit set has no member tuple")
        return self.explicit_members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        if self.is_finite:
            return iter(self.explicit_members)
        return self.members_upto(math.inf)

    def members_upto(self, n) -> Iterator[int]:
        """Members a <= n in increasing order."""
        for a in self.explicit_members:
            if a > n:
                return
            yield a
        if self.tail_modulus is None:
            return
        M = self.tail_modulus
        base = self.cutoff - self.cutoff % M
        while True:
            for r in self.tail_residues:
                a = base + r
                if a < self.cutoff:
                    continue
                if a > n:
                    return
                yield a
            base += M

    def max_member(self) -> int:
        return self.members[-1]


def _minimal_tail(modulus: int, residues: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    rset = set(residues)
    for p in range(1, modulus + 1):
        if modulus % p == 0 and all((r + p) % modulus in rset for r in residues):
            return p, tuple(sorted({r % p for r in residues}))
    return modulus, residues  # pragma: no cover


# ---------- counting


class ReprCounter:
    """Evaluation session for f_{A,b}(n), exact or reduced mod ``modulus``.

    Holds a private memo; not meant to be shared across threads.
    """

    def __init__(self, digits: DigitSet, base: int, modulus: int | None = None):
        if base < 2:
            raise ValueError("base must be >= 2")
        if modulus is not None and modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.digits = digits
        self.base = base
        self.modulus = modulus
        self._memo: dict[int, int] = {0: self._reduce(1)}
        # explicit digits split by residue class mod b
        self._classes: list[list[int]] = [[] for _ in range(base)]
        for a in digits.explicit_members:
            self._classes[a % base].append(a)
        self._f: list[int] = []
        self._prefix: list[int] = []

    def _reduce(self, v: int) -> int:
        return v % self.modulus if self.modulus is not None else v

    def count(self, n: int) -> int:
        """f(n) (mod ``modulus`` when set); 0 for negative n."""
        if n < 0:
            return 0
        if not self.digits.is_finite or n < len(self._f):
            return self.sequence(n)[n]
        memo = self._memo
        if n in memo:
            return memo[n]
        b = self.base
        classes = self._classes
        d = self.modulus
        stack = [n]
        while stack:
            m = stack[-1]
            if m in memo:
                stack.pop()
                continue
            deps = [(m - a) // b for a in classes[m % b] if a <= m]
            missing = [k for k in deps if k not in memo]
            if missing:
                stack.extend(missing)
                continue
            total = sum(memo[k] for k in deps)
            memo[m] = total % d if d is not None else total
            stack.pop()
        return memo[n]

    def sequence(self, N: int) -> list[int]:
        """[f(0), ..., f(N)], extending the bottom-up table as needed.

        The returned list is the session's table; do not mutate it.
        """
        f = self._f
        if len(f) > N:
            return f
        A = self.digits
        b = self.base
        d = self.modulus
        classes = self._classes
        prefix = self._prefix
        M = A.tail_modulus
        if M is not None:
            c = A.cutoff
            rset = A._residue_set
            # tail_hits[n % M] = residues s of j mod M whose digit n - b*j lies in the tail
            tail_hits = [[s for s in range(M) if (n - b * s) % M in rset] for n in range(M)]
        for n in range(len(f), N + 1):
            if n == 0:
                v = 1
            else:
                v = 0
                for a in classes[n % b]:
                    if a > n:
                        break
                    v += f[(n - a) // b]
                if M is not None and n >= c:
                    J = (n - c) // b
                    for s in tail_hits[n % M]:
                        if s <= J:
                            v += prefix[J - (J - s) % M]
            if d is not None:
                v %= d
            f.append(v)
            if M is not None:
                p = v + prefix[n - M] if n >= M else v
                prefix.append(p % d if d is not None else p)
        return f


def count(A: DigitSet, b: int, n: int) -> int:
    """Exact number of base-b representations of n with digits in A."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return ReprCounter(A, b).count(n)


def count_mod(A: DigitSet, b: int, n: int, d: int) -> int:
    """count(A, b, n) mod d, without materializing the exact value."""
    if d < 2:
        raise ValueError("modulus must be >= 2")
    if n < 0:
        raise ValueError("n must be non-negative")
    return ReprCounter(A, b, d).count(n)


def sequence(A: DigitSet, b: int, N: int, modulus: int | None = None) -> list[int]:
    """[f(0), ..., f(N)], optionally reduced mod ``modulus``."""
    return list(ReprCounter(A, b, modulus).sequence(N))


def count_series_oracle(A: DigitSet, b: int, N: int) -> list[int]:
    """Coefficients 0..N of prod_k phi_A(x^(b^k)), truncated at degree N.

    Shares no code with :class:`ReprCounter`; used to cross-check it.
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    digits = list(A.members_upto(N))
    coeffs = [1] + [0] * N
    step = 1
    while step <= N:
        new = [0] * (N + 1)
        for a in digits:
            shift = a * step
            if shift > N:
                break
            for i in range(N + 1 - shift):
                if coeffs[i]:
                    new[i + shift] += coeffs[i]
        coeffs = new
        step *= b
    return coeffs


def theta(A: DigitSet, n: int, counter: ReprCounter | None = None) -> int:
    """sum_{a in A} f_{A,2}(n - a); odd only at n = 0."""
    if not A.is_finite:
        raise InfiniteSetError("theta sums over every digit; A must be finite")
    if counter is None:
        counter = ReprCounter(A, 2)
    elif counter.digits != A or counter.base != 2 or counter.modulus is not None:
        raise ValueError("counter must be an exact base-2 session for A")
    if n < 0:
        return 0
    return sum(counter.count(n - a) for a in A.members if a <= n)


def stern(n: int) -> int:
    """Stern's diatomic sequence: s(0)=0, s(1)=1, s(2n)=s(n), s(2n+1)=s(n)+s(n+1)."""
    if n < 0:
        raise ValueError("stern(n) needs n >= 0")
    # Track (s(m), s(m+1)) while reading n's bits from the top.
    a, b = 0, 1
    for bit in format(n, "b") if n else "":
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return a


def nu2(m: int) -> int:
    """2-adic valuation of m >= 1."""
    if m == 0:
        raise ValueError("nu2(0) is undefined")
    m = abs(m)
    return (m & -m).bit_length() - 1


# ---------- binary partition congruences


# Candidate readings of the valuation formula for f_{N,2}(4m) versus f_{N,2}(m).
# "valuation-difference" compares nu2(f(4m)) - nu2(f(m)); "difference-valuation"
# compares nu2(f(4m) - f(m)).  Right-hand sides are floor((3/2)(3v+4)) and
# floor((3v+4)/2) with v = nu2(m).
READINGS = {
    "valuation-difference, floor(3/2*(3v+4))": ("vd", lambda v: (3 * (3 * v + 4)) // 2),
    "valuation-difference, floor((3v+4)/2)": ("vd", lambda v: (3 * v + 4) // 2),
    "difference-valuation, floor(3/2*(3v+4))": ("dv", lambda v: (3 * (3 * v + 4)) // 2),
    "difference-valuation, floor((3v+4)/2)": ("dv", lambda v: (3 * v + 4) // 2),
}


@dataclass
class ChurchhouseReport:
    max_n: int
    table_max_m: int
    odd_beyond_one: list[int] = field(default_factory=list)
    four_rule_violations: list[int] = field(default_factory=list)
    divisible_by_eight: list[int] = field(default_factory=list)
    table: list[dict] = field(default_factory=list)
    reading_agreement: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """No violations of the three parity rules (the table is informational)."""
        return not (self.odd_beyond_one or self.four_rule_violations or self.divisible_by_eight)

    @property
    def matching_readings(self) -> list[str]:
        rows = len(self.table)
        return [k for k, hits in self.reading_agreement.items() if rows and hits == rows]

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "table_max_m": self.table_max_m,
            "ok": self.ok,
            "odd_beyond_one": self.odd_beyond_one,
            "four_rule_violations": self.four_rule_violations,
            "divisible_by_eight": self.divisible_by_eight,
            "reading_agreement": self.reading_agreement,
            "matching_readings": self.matching_readings,
            "table": self.table,
        }


def _four_rule(n: int) -> bool:
    """nu2(n-1) or nu2(n) is a positive even integer."""
    for m in (n - 1, n):
        if m > 0:
            v = nu2(m)
            if v > 0 and v % 2 == 0:
                return True
    return False


def churchhouse_report(max_n: int, table_max_m: int | None = None) -> ChurchhouseReport:
    """Check the binary-partition parity rules for n <= max_n and tabulate
    the 4m-versus-m valuations for even m <= table_max_m (default max_n // 4)."""
    if max_n < 16:
        raise ValueError("max_n must be >= 16")
    if table_max_m is None:
        table_max_m = max_n // 4
    f = ReprCounter(DigitSet.naturals(), 2).sequence(max(max_n, 4 * table_max_m))
    report = ChurchhouseReport(max_n=max_n, table_max_m=table_max_m)
    for n in range(max_n + 1):
        v = f[n]
        if n >= 2 and v % 2:
            report.odd_beyond_one.append(n)
        if n >= 1 and (v % 4 == 0) != _four_rule(n):
            report.four_rule_violations.append(n)
        if v % 8 == 0:
            report.divisible_by_eight.append(n)
    report.reading_agreement = {k: 0 for k in READINGS}
    for m in range(2, table_max_m + 1, 2):
        v = nu2(m)
        vd = nu2(f[4 * m]) - nu2(f[m])
        dv = nu2(f[4 * m] - f[m])
        row = {"m": m, "nu2_m": v, "valuation_difference": vd, "difference_valuation": dv}
        for name, (lhs, rhs) in READINGS.items():
            if (vd if lhs == "vd" else dv) == rhs(v):
                report.reading_agreement[name] += 1
        report.table.append(row)
    return report
