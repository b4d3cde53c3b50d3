"""Exception types shared across the package.

Numerical routines either return a certified answer or raise one of these;
silent degradation is never an option.
"""


class CharlabError(Exception):
    """Base class for all package-specific failures."""


class RefinementError(CharlabError):
    """Gauss-Newton refinement did not reach the flatness tolerance."""

    def __init__(self, residual: float, iterations: int, tol: float):
        self.residual = residual
        self.iterations = iterations
        self.tol = tol
        super().__init__(
            f"refinement stalled at residual {residual:.3e} after "
            f"{iterations} iterations (target {tol:.1e})"
        )


class RankAmbiguousError(CharlabError):
    """A rank decision fell inside the indeterminate singular-value band."""

    def __init__(self, value: float, band: tuple):
        self.value = value
        self.band = band
        super().__init__(
            f"singular value {value:.3e} inside indeterminate band "
            f"[{band[0]:.1e}, {band[1]:.1e}]"
        )


class NonCocycleError(CharlabError):
    """A pairing was fed a cochain that is not a cocycle at the working tolerance."""

    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"cocycle residual {residual:.3e} exceeds tolerance {tol:.1e}"
        )


class ChainConstructionError(CharlabError):
    """The fundamental two-chain failed its descent self-test."""


class QuadratureError(CharlabError):
    """Period quadrature failed its doubling convergence check."""

    def __init__(self, drift: float, tol: float, order: int):
        self.drift = drift
        self.tol = tol
        self.order = order
        super().__init__(
            f"period drift {drift:.3e} between orders {order} and {2 * order} "
            f"exceeds {tol:.1e}"
        )
