"""Exception types shared across the package."""


class AttenuwaveError(Exception):
    """Base class for all package errors."""


class ModelValidationError(AttenuwaveError, ValueError):
    """Model parameters violate the constraints of the chosen law."""


class BranchCutError(AttenuwaveError, ValueError):
    """Evaluation point lies on the branch cut of a fractional power."""


class SingularLimitError(AttenuwaveError, ValueError):
    """The requested limit diverges (e.g. zero-frequency phase speed)."""


class GridError(AttenuwaveError, ValueError):
    """Frequency grid is malformed or inconsistent with a signal."""


class TailFloorError(AttenuwaveError, ValueError):
    """Spectral tail does not decay below the configured floor."""


class IllConditionedError(AttenuwaveError, ValueError):
    """Band-edge error of an apodized transform exceeds the trust threshold."""


class StencilError(AttenuwaveError, ValueError):
    """Finite-difference step is too large for the evaluation point."""


class ZeroEnergyError(AttenuwaveError, ValueError):
    """Signal has no energy; the requested ratio is undefined."""


class NoCrossingError(AttenuwaveError, ValueError):
    """Threshold crossing not found in a shell."""


class ConfigError(AttenuwaveError, ValueError):
    """Run configuration file is malformed or contains unknown keys."""
