"""Exception hierarchy shared by the computational modules"""


class ToolkitError(ValueError):
    """Base class for domain errors raised by the toolkit.

    The CLI serializes these as ``{"error": <class name>, "message": ...}``
    and exits with code 1.
    """

    @property
    def name(self) -> str:
        return type(self).__name__


class NotInRange(ToolkitError):
    """Element is not in the image of sigma_n at the requested level"""


class OrderExceedsLevel(ToolkitError):
    """Root of unity order is larger than the Habiro level"""


class OrderTimesDepthExceedsLevel(ToolkitError):
    """Taylor depth times root order does not fit under the level"""


class DenominatorMismatch(ToolkitError):
    """Q/Z support label has a denominator not dividing the working level"""


class NonIntegralInput(ToolkitError):
    """Integral-model operation received non-integral coefficients"""


class NonIntegral(ToolkitError):
    """Integral output was demanded but a component is not an integer"""


class SingularMatrix(ToolkitError):
    """Integer matrix has zero determinant"""


class BetaOutOfRange(ToolkitError):
    """Inverse temperature outside the convergent (Gibbs) regime"""


class NonPositiveHeightForm(ToolkitError):
    """Linear form is not strictly positive on the open cone"""


class ConeNotPreserved(ToolkitError):
    """Matrix does not map the open cone's lattice points into itself"""


class LevelNotPreserved(ToolkitError):
    """sigma_alpha does not map the level-N ideal into itself"""


class InvalidGaloisElement(ToolkitError):
    """Galois element is not a unit modulo the order"""


class ConvergenceWarning(UserWarning):
    """Series is summed outside the range where convergence is guaranteed"""
