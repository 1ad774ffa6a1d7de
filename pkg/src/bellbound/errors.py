"""Exception hierarchy for the symbolic engine and the CHSH layer."""


class BellboundError(Exception):
    """Base class for all package-specific errors."""


# --- exact algebra ---------------------------------------------------------

class DivisionByZero(BellboundError, ZeroDivisionError):
    """Division by the zero rational function."""


class PoleAtPoint(BellboundError, ZeroDivisionError):
    """A denominator vanishes at the requested parameter value."""


class InconsistentSolution(BellboundError):
    """A substitution was attempted with an inconsistent linear solution."""


# --- roots and intervals ---------------------------------------------------

class ZeroPolynomial(BellboundError):
    """Root isolation was asked for the zero polynomial."""


class SignChangesInside(BellboundError):
    """A sign query hit an interval containing a root of num or den."""


class PoleInsideInterval(BellboundError):
    """A crossing query hit an interval containing a pole."""


# --- parametric optimizer --------------------------------------------------

class NonQuadraticObjective(BellboundError):
    """The objective is not (at most) quadratic in the variables."""


class NonlinearConstraint(BellboundError):
    """A constraint is not affine in the variables."""


class EmptyCandidateSet(BellboundError):
    """No feasible candidate covers (part of) the parameter domain."""


class AuditFailure(BellboundError):
    """An independent check of a candidate optimum failed.

    The first argument names the violated condition.
    """


# --- CHSH models -----------------------------------------------------------

class ProbabilityOutOfRange(BellboundError):
    """A model entry leaves [0, 1] somewhere on the validity interval."""


class ParameterOutOfRange(BellboundError):
    """A model parameter lies outside its allowed range."""


class UnknownModelName(BellboundError):
    """Requested builtin model does not exist."""


# --- numeric oracle --------------------------------------------------------

class UnboundedBlock(BellboundError):
    """A constraint block has no vertices (empty or unbounded polytope)."""


class NonBipartiteStructure(BellboundError):
    """The objective couples variables inside a single constraint block."""


# --- CLI / files -----------------------------------------------------------

class TargetOutOfRange(BellboundError):
    """A threshold target is never reached by the bound."""


class ProblemFileError(BellboundError):
    """A problem or model file failed to parse or validate."""
