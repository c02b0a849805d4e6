"""Exception hierarchy shared by all modules.

Two families: DomainError for inputs that violate a geometric
precondition (bad vectors, invalid configurations), NumericalError for
computations that did not converge or produced structure inconsistent
with what the input promised.
"""


class GeometryError(Exception):
    pass


class DomainError(GeometryError):
    """Input violates a geometric precondition."""


class NumericalError(GeometryError):
    """A numerical procedure failed or produced unexpected structure."""


class NotSpacelike(DomainError):
    pass


class NotTimelike(DomainError):
    pass


class NotInvolution(DomainError):
    pass


class NotHyperbolicType(DomainError):
    pass


class NegativeCoefficient(DomainError):
    pass


class InvalidConfiguration(DomainError):
    pass


class EmptyInterval(DomainError):
    pass


class OutOfChart(DomainError):
    pass


class DegenerateFrame(NumericalError):
    pass


class EigenFailure(NumericalError):
    pass


class ClassificationFailure(NumericalError):
    pass


class RankUnexpected(NumericalError):
    pass


class DegeneratePolygon(NumericalError):
    pass


class NotQuadrilateral(NumericalError):
    pass


class InscriptionFailure(NumericalError):
    pass


class NonmonotoneTrace(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass
