"""Exception types shared across the package."""


class LayerrError(Exception):
    """Base class for all layerr errors."""


class EvaluationError(LayerrError):
    """A quadrature node produced a non-finite or singular value."""


class NoRootExists(LayerrError):
    """The squared-distance function is constant in the requested variable."""


class NonConvergence(LayerrError):
    """Newton iteration failed to converge after the retry ladder."""


class InfiniteGeometryFactor(LayerrError):
    """The derivative of the squared-distance function vanishes at the root."""


class DegenerateModel(LayerrError):
    """The linearized root model has no complex root at the grid point."""


class ConfigError(LayerrError):
    """A CLI configuration file could not be parsed or validated."""
