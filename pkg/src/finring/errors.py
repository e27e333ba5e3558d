"""Exception hierarchy shared by all modules."""


class RingError(Exception):
    """Base class for errors raised by finring."""


class BadShape(RingError):
    pass


class UnreducedConstant(RingError):
    pass


class NonAssociative(RingError):
    def __init__(self, triple, msg=None):
        self.triple = triple
        super().__init__(msg or f"structure constants are not associative on generators {triple}")


class InconsistentConstant(RingError):
    """A product e_i*e_j is not killed by d_i and d_j."""


class RingMismatch(RingError):
    pass


class NotTwoSidedIdeal(RingError):
    pass


class BadCharacteristic(RingError):
    pass


class SearchBudgetExceeded(RingError):
    """Backtracking search hit its node cap; says nothing about existence."""


class BudgetExceeded(RingError):
    pass


class NotUnital(RingError):
    pass


class NotSimple(RingError):
    pass


class NotSemisimple(RingError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"Jacobson radical is nonzero (contains {witness})")


class NotPrime(RingError):
    pass


class NotPrimePower(RingError):
    pass


class PreconditionFailed(RingError):
    pass


class OddLength(RingError):
    pass


class BadDegree(RingError):
    pass


class ZeroPolynomial(RingError):
    pass


class ConstantTerm(RingError):
    pass


class DuplicateFactorClass(RingError):
    pass


class ParseError(RingError):
    def __init__(self, msg, line=0, col=0):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {msg}")
