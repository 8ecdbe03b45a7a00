# errors.py
from typing import Optional


class HyperquadricError(ValueError):
    """Base class for every error raised by the toolkit"""


class SignatureError(HyperquadricError):
    """Invalid (r, s, t) triple or weight vector"""


class DimensionError(HyperquadricError):
    """Operands live in spaces of different signature or size"""


class InvalidPointError(HyperquadricError):
    """The zero vector does not define a projective point"""


class RankError(HyperquadricError):
    """A basis that was required to be independent is not"""


class ShapeError(HyperquadricError):
    """Matrix shape does not fit the operation"""


class DegreeMismatchError(HyperquadricError):
    """Homogeneous polynomials of different degree were combined"""


class ZeroDivisorError(HyperquadricError):
    """Division by a polynomial with no finite multiplicity: zero or a constant"""


class PolynomialParseError(HyperquadricError):
    """Malformed polynomial text"""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        self.line, self.column = self._locate(text, position)
        super().__init__(f"{message} at line {self.line}, column {self.column}")

    @staticmethod
    def _locate(text: str, position: int):
        before = text[:position]
        line = before.count('\n') + 1
        column = position - (before.rfind('\n') + 1) + 1
        return line, column


class IndeterminacyError(HyperquadricError):
    """The map vanishes identically where it has to be evaluated"""


class UnsupportedSignatureError(HyperquadricError):
    """The source form is too small for the polarized divisibility test"""


class DegenerateFormError(HyperquadricError):
    """The Hermitian form is identically zero"""


class DecompositionError(HyperquadricError):
    """A supplied A (+) B is not an orthogonal direct sum of the target"""


class CapacityError(HyperquadricError):
    """The target signature cannot host the requested construction"""


class NoNullPointsError(HyperquadricError):
    """The target has no null points"""


class CorpusError(HyperquadricError):
    """A corpus entry violates the checker precondition"""


class DescriptorError(HyperquadricError):
    """Malformed JSON map / chart descriptor"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class UnknownCheckerError(HyperquadricError):
    """No checker is registered under the requested id"""
