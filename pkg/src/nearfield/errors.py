"""Exception types shared across the package."""


class NearfieldError(Exception):
    """Base class for all package-specific failures."""


class DomainError(NearfieldError, ValueError):
    """Argument outside the mathematical domain of a special function."""


class GeometryError(NearfieldError):
    """Scene geometry violates a hard constraint (e.g. overlapping balls)."""


class SceneFileError(NearfieldError):
    """Scene file is malformed or carries unknown keys."""


class PoleError(NearfieldError):
    """A Dirichlet-to-Neumann coefficient is evaluated at (numerically) a pole,
    i.e. the energy is an interior eigenvalue of the corresponding problem."""


class InvertibilityError(NearfieldError):
    """A middle factor that should be invertible for real potentials is
    numerically singular; indicates a convention bug upstream."""


class ProximityError(NearfieldError):
    """Field evaluation point too close to a quadrature surface."""


class RankError(NearfieldError):
    """Pseudo-inversion retained fewer modes than the requested trusted degree."""


class DegenerateError(NearfieldError):
    """Scalar recovery relation degenerates (denominator ~ 0) at some degree."""


class BoundsError(NearfieldError):
    """Fit parameters left the admissible box."""


class NonConvergenceError(NearfieldError):
    """Optimizer exhausted its iteration budget.

    Carries the best iterate found so callers can still inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
