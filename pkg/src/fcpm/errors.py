"""Exception types shared across the package."""


class FcpmError(Exception):
    """Base class for all package errors."""


class ValidationError(FcpmError):
    """Parameter data fails a structural or genericity requirement."""


class DomainError(FcpmError):
    """Evaluation point lies outside the convergence domain."""


class BranchError(FcpmError):
    """A fractional power would be evaluated on its branch cut."""


class PoleError(FcpmError):
    """Gamma evaluated at a non-positive integer."""


class ConvergenceError(FcpmError):
    """An adaptive numeric routine failed to reach its target accuracy."""


class ModeError(FcpmError):
    """An exact-only operation was requested on float-mode data."""


class InvarianceError(FcpmError):
    """An internal algebraic invariant failed (bug guard, not user error)."""
