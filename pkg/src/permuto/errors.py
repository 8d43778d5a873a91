"""Exception hierarchy.  Every error carries a stable machine-readable code
(used verbatim by the CLI as ``error=<code>``) and an exit status class:
2 = bad input / parse, 3 = domain violation, 4 = internal consistency."""

from __future__ import annotations


class PermutoError(Exception):
    code = "Error"
    exit_status = 3

    def __init__(self, message: str = "", **witness):
        super().__init__(message or self.code)
        self.witness = witness


class ParseError(PermutoError):
    code = "ParseError"
    exit_status = 2


class CapExceeded(PermutoError):
    code = "CapExceeded"
    exit_status = 2


class EmptyFamily(PermutoError):
    code = "EmptyFamily"


class MixedCardinality(PermutoError):
    code = "MixedCardinality"


class ExchangeFailure(PermutoError):
    """Witnessed failure of basis exchange: no j in B2\\B1 repairs (B1, B2, i)."""

    code = "ExchangeFailure"

    def __init__(self, b1: int, b2: int, i: int):
        super().__init__(f"exchange fails for bases {b1:#x}, {b2:#x} at element {i}",
                         b1=b1, b2=b2, i=i)
        self.b1, self.b2, self.i = b1, b2, i


class HasLoops(PermutoError):
    code = "HasLoops"


class NotSubmodular(PermutoError):
    code = "NotSubmodular"

    def __init__(self, s: int, t: int):
        super().__init__(f"submodular inequality fails at S={s:#x}, T={t:#x}", s=s, t=t)
        self.s, self.t = s, t


class GenericityExhausted(PermutoError):
    code = "GenericityExhausted"
    exit_status = 4


class WeightNotCertified(PermutoError):
    code = "WeightNotCertified"


class DegreeMismatch(PermutoError):
    """Internal-consistency failure: interpolated polynomial misses a fresh value."""

    code = "DegreeMismatch"
    exit_status = 4


class WrongArity(PermutoError):
    code = "WrongArity"


class NonUnitCoefficient(PermutoError):
    code = "NonUnitCoefficient"


class NotDownwardClosed(PermutoError):
    code = "NotDownwardClosed"


class NotPure(PermutoError):
    code = "NotPure"
