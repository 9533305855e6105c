"""Exception hierarchy.

Input problems (bad graphs, bad maps, malformed files) derive from
``HarmonicaInputError``.  ``TheoremViolation`` is reserved for checks that
encode proven statements; seeing one means a bug, not a bad input.
"""


class HarmonicaError(Exception):
    pass


class HarmonicaInputError(HarmonicaError, ValueError):
    pass


class LoopEdge(HarmonicaInputError):
    pass


class DuplicateId(HarmonicaInputError):
    pass


class EmptyGraph(HarmonicaInputError):
    pass


class Disconnected(HarmonicaInputError):
    pass


class UnknownVertex(HarmonicaInputError, KeyError):
    pass


class UnknownEdge(HarmonicaInputError, KeyError):
    pass


class NotAMorphism(HarmonicaInputError):
    pass


class EndpointMismatch(NotAMorphism):
    pass


class SourceTargetMismatch(HarmonicaInputError):
    pass


class NotHarmonic(HarmonicaInputError):
    pass


class NotHarmonicAt(NotHarmonic):
    def __init__(self, vertex, msg=None):
        super().__init__(msg or f"morphism is not harmonic at {vertex!r}")
        self.vertex = vertex


class DegenerateAt(HarmonicaInputError):
    def __init__(self, vertex, msg=None):
        super().__init__(msg or f"morphism is degenerate at {vertex!r}")
        self.vertex = vertex


class IncidenceViolation(HarmonicaInputError):
    pass


class NotBijective(HarmonicaInputError):
    pass


class GenusTooSmall(HarmonicaInputError):
    pass


class HypothesisUnmet(HarmonicaInputError):
    pass


class BadTree(HarmonicaInputError):
    pass


class DisconnectedCover(HarmonicaInputError):
    pass


class DegenerateTree(HarmonicaInputError):
    pass


class ParseError(HarmonicaInputError):
    """Malformed input file; ``where`` names the offending field or position."""

    def __init__(self, msg, where=None):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


class BudgetExceeded(HarmonicaError):
    pass


class ClosureBudgetExceeded(BudgetExceeded):
    pass


class TheoremViolation(HarmonicaError, AssertionError):
    pass


class NonconstantPreimageCount(TheoremViolation):
    pass


class FiberInconsistent(TheoremViolation):
    pass


class ClassificationGap(TheoremViolation):
    pass
