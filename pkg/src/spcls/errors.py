"""Exception hierarchy.

Validation failures (bad input structures) derive from :class:`ValidationError`;
theorem violations that can only come from a bug derive from
:class:`InternalInconsistency`.
"""


class SpclsError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SpclsError):
    """An instance file could not be read or refers to undeclared names."""


class ValidationError(SpclsError):
    """A structure fails one of the defining conditions."""


# -- lattices ---------------------------------------------------------------

class LatticeError(ValidationError):
    pass


class CycleDetected(LatticeError):
    def __init__(self, x: str, y: str):
        super().__init__(f"order is not antisymmetric: {x} <= {y} and {y} <= {x}")
        self.pair = (x, y)


class NoMeet(LatticeError):
    def __init__(self, x: str, y: str):
        super().__init__(f"no greatest lower bound for {x} and {y}")
        self.pair = (x, y)


class NoJoin(LatticeError):
    def __init__(self, x: str, y: str):
        super().__init__(f"no least upper bound for {x} and {y}")
        self.pair = (x, y)


class NoBottom(LatticeError):
    def __init__(self):
        super().__init__("order has no bottom element")


class NoTop(LatticeError):
    def __init__(self):
        super().__init__("order has no top element")


# -- state property systems -------------------------------------------------

class AxiomViolation(ValidationError):
    axiom: int = 0


class Axiom1Violation(AxiomViolation):
    axiom = 1

    def __init__(self, state: str, bottom: str):
        super().__init__(f"axiom (1) violated: bottom {bottom} is actual in state {state}")
        self.state = state


class Axiom2Violation(AxiomViolation):
    axiom = 2

    def __init__(self, state: str, witness: tuple[str, ...], missing: str):
        if witness:
            what = "meet of " + ", ".join(witness)
        else:
            what = "empty meet"
        super().__init__(
            f"axiom (2) violated in state {state}: {what} = {missing} is not actual"
        )
        self.state = state
        self.witness = witness
        self.missing = missing


class Axiom3Violation(AxiomViolation):
    axiom = 3

    def __init__(self, a: str, b: str, direction: str):
        super().__init__(f"axiom (3) violated for ({a}, {b}): {direction}")
        self.pair = (a, b)
        self.direction = direction


# -- closure spaces ---------------------------------------------------------

class ClosureSpaceError(ValidationError):
    pass


class MissingEmpty(ClosureSpaceError):
    def __init__(self):
        super().__init__("family of closed sets does not contain the empty set")


class MissingFull(ClosureSpaceError):
    def __init__(self):
        super().__init__("family of closed sets does not contain the whole space")


class NotIntersectionClosed(ClosureSpaceError):
    def __init__(self, a: str, b: str, meet: str):
        super().__init__(f"intersection of {a} and {b} is {meet}, which is not closed")
        self.pair = (a, b)


# -- morphisms --------------------------------------------------------------

class UniverseMismatch(ValidationError):
    pass


class InvalidInput(ValidationError):
    """A morphism or map handed to a functor fails its own validity check."""


class ExhaustiveCapExceeded(SpclsError):
    def __init__(self, size: int, cap: int):
        super().__init__(
            f"exhaustive enumeration over {size} elements exceeds the cap of {cap}"
        )
        self.size = size
        self.cap = cap


# -- bugs -------------------------------------------------------------------

class InternalInconsistency(SpclsError):
    """A result contradicts a theorem that holds for every valid input."""


class MultipleComplements(InternalInconsistency):
    pass


class AtomNotFound(InternalInconsistency):
    pass


class RoundTripFailure(InternalInconsistency):
    pass
