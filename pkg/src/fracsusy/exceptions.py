"""Exception types raised by fracsusy."""


class InadmissibleSpec(ValueError):
    """A structure-function family that cannot define a representation."""


class NegativeStructureFunction(InadmissibleSpec):
    """A structure function under a square root is negative.

    Carries the offending grade ``s`` and level ``n`` so the caller can see
    where the family stops being representable.
    """

    def __init__(self, s, n, value):
        self.s = s
        self.n = n
        self.value = value
        super().__init__(f"F_{s}({n}) = {value!r} is negative; no real matrix element")


class DomainError(ValueError):
    """A potential was evaluated outside its domain."""
