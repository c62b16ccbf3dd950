"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input: bad files, bad indices, bad parameters."""


class NumericalError(RuntimeError):
    """A numerical procedure failed: no convergence, rank collapse, ill-conditioning."""
