"""Digit-restricted base-b partition counts and their behaviour mod 2.

Submodules:

* :mod:`binpart.gf2poly`     -- bit-packed GF(2)[x] arithmetic (:class:`Poly2`)
* :mod:`binpart.factor2`     -- factorization, irreducibility, orders, periods
* :mod:`binpart.partitions`  -- :class:`DigitSet`, f_{A,b}(n), Stern, valuations
* :mod:`binpart.periodicity` -- parity periods, complementary sets, searches
* :mod:`binpart.cli`         -- the ``binpart`` command
"""

from .errors import BinpartError
from .factor2 import factor, factor_u64, is_irreducible, is_primitive, m_bound, period
from .gf2poly import Poly2
from .partitions import DigitSet, ReprCounter, count, count_mod, count_series_oracle, stern
from .periodicity import complement, parity_period, phi_poly, verify_main_theorem

__version__ = "0.1.0"

__all__ = [
    "BinpartError",
    "DigitSet",
    "Poly2",
    "ReprCounter",
    "complement",
    "count",
    "count_mod",
    "count_series_oracle",
    "factor",
    "factor_u64",
    "is_irreducible",
    "is_primitive",
    "m_bound",
    "parity_period",
    "period",
    "phi_poly",
    "stern",
    "verify_main_theorem",
]
