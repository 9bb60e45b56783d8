"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`BasmajianError` and carries a short machine-readable ``code``
(``E_PRECISION_EXHAUSTED`` and friends) that the command line front end
prints next to the message.
"""


class BasmajianError(Exception):
    code = "E_GENERIC"


class PrecisionExhausted(BasmajianError, ArithmeticError):
    """A refinable quantity stayed zero up to the precision cap."""

    code = "E_PRECISION_EXHAUSTED"


class DivisionByZero(BasmajianError, ZeroDivisionError):
    code = "E_DIVISION_BY_ZERO"


class ModelMismatch(BasmajianError, TypeError):
    code = "E_MODEL_MISMATCH"


class NoSimpleSegment(BasmajianError, ValueError):
    code = "E_NO_SIMPLE_SEGMENT"


class ZeroPolynomial(BasmajianError, ValueError):
    code = "E_ZERO_POLY"


class DimensionError(BasmajianError, ValueError):
    code = "E_DIMENSION"


class NotBiproximal(BasmajianError, ValueError):
    code = "E_NOT_BIPROXIMAL"


class NotHyperbolic(BasmajianError, ValueError):
    code = "E_NOT_HYPERBOLIC"


class DegeneratePairing(BasmajianError, ValueError):
    code = "E_DEGENERATE_PAIRING"


class BadLetter(BasmajianError, ValueError):
    code = "E_BAD_LETTER"


class BadSurface(BasmajianError, ValueError):
    code = "E_BAD_SURFACE"


class IdentityCoset(BasmajianError, ValueError):
    """The identity double coset was requested for a boundary paired with itself."""

    code = "E_IDENTITY_COSET"


class NotDistinct(BasmajianError, ValueError):
    code = "E_NOT_DISTINCT"


class OnAxisEndpoint(BasmajianError, ValueError):
    code = "E_ON_AXIS_ENDPOINT"


class OrderError(BasmajianError, ValueError):
    code = "E_ORDER"


class ConfigError(BasmajianError, ValueError):
    code = "E_CONFIG"

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
