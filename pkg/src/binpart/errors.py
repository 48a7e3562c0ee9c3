"""Exception hierarchy shared by the binpart modules."""


class BinpartError(Exception):
    """Base class for all structured errors raised by binpart."""


class ParseError(BinpartError, ValueError):
    """Malformed polynomial or digit-set text."""


class DegreeOverflowError(BinpartError, OverflowError):
    """A polynomial would exceed the configured maximum degree."""


class DegreeCapError(BinpartError):
    """Order computation requested for an irreducible factor of degree > 64."""


class ConstantTermError(BinpartError, ValueError):
    """Polynomial has constant term 0 where h(0) = 1 is required."""


class ReducibleError(BinpartError, ValueError):
    """An irreducible polynomial was required."""


class InfiniteSetError(BinpartError, ValueError):
    """Operation is only defined for finite digit sets."""


class DegenerateSetError(BinpartError, ValueError):
    """Digit set {0}: phi = 1 and no parity period exists."""


class InvariantError(BinpartError, AssertionError):
    """An internal consistency re-check failed."""
