"""Exception hierarchy shared by every module."""


class KGError(Exception):
    """Base class for all errors raised by kgpt."""


class ParameterError(KGError, ValueError):
    """A model or grid parameter violates its invariant."""


class DomainError(KGError, ValueError):
    """A function was called outside its mathematical domain."""


class PoleError(KGError, ZeroDivisionError):
    """A deformed csch/coth was evaluated at (or numerically at) its pole."""


class NoBoundState(KGError):
    """The requested level has no normalizable bound state."""

    def __init__(self, n, reason=""):
        self.n = n
        msg = f"no bound state for n={n}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class ConvergenceError(KGError, ArithmeticError):
    """A root bracket, bisection or quadrature failed to converge."""


class MultipleRootsError(ConvergenceError):
    """More than one sign change inside a window that should hold one root."""
