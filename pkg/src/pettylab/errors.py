"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured error records. Validation problems derive from
:class:`ValidationError` (CLI exit status 2); numerical breakdowns derive
from :class:`NumericFailure` (exit status 3).
"""


class PettyError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"error": self.code, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if _jsonable(v)})
        return out


def _jsonable(v):
    return isinstance(v, (str, int, float, bool, list, type(None)))


class ValidationError(PettyError, ValueError):
    code = "invalid-input"


class InvalidAtom(ValidationError):
    code = "invalid-atom"


class InvalidWeight(ValidationError):
    code = "invalid-weight"


class EmptyMeasure(ValidationError):
    code = "empty-measure"


class UnsupportedDimension(ValidationError):
    code = "unsupported-dim"


class PerturbationTooLarge(ValidationError):
    code = "perturbation-too-large"


class UnboundedBody(ValidationError):
    code = "unbounded-body"


class InvalidSupport(ValidationError):
    code = "invalid-support"


class DimensionMismatch(ValidationError):
    code = "dimension-mismatch"


class SingularMap(ValidationError):
    code = "singular-map"


class InvalidParameter(ValidationError):
    code = "invalid-parameter"


class InvalidExponent(ValidationError):
    code = "invalid-exponent"


class InvalidMeasure(ValidationError):
    code = "invalid-measure"


class ConditioningGuard(ValidationError):
    code = "conditioning-guard"


class NumericFailure(PettyError, ArithmeticError):
    code = "numeric-failure"


class DegenerateHull(NumericFailure):
    code = "degenerate-hull"


class NoConvergence(NumericFailure):
    """Optimizer budget exhausted; ``best`` holds the best iterate found."""

    code = "no-convergence"

    def __init__(self, message, best=None, **details):
        super().__init__(message, **details)
        self.best = best
