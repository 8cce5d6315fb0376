"""Exception types raised across the package."""

from __future__ import annotations


class PrudentiaError(Exception):
    """Base class for all package errors."""


class UnknownLabel(PrudentiaError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown label"


class NotCAR(PrudentiaError, ValueError):
    """Ranking is not complete and antisymmetric on a 3- or 4-element domain."""


class NotStrict(PrudentiaError, ValueError):
    pass


class ZeroNormal(PrudentiaError, ValueError):
    pass


class DimensionBudget(PrudentiaError, ValueError):
    pass


class Budget(PrudentiaError, ValueError):
    pass


class NotFound(PrudentiaError, LookupError):
    pass


class Infeasible(PrudentiaError, ValueError):
    """No linear functional reproduces the labelled observations."""


class Underdetermined(PrudentiaError, ValueError):
    """The observations admit a cone of normals of dimension > 1.

    ``witness`` is one valid normal, ``basis`` spans the subspace the
    valid normals live in.
    """

    def __init__(self, message, witness=None, basis=()):
        super().__init__(message)
        self.witness = witness
        self.basis = tuple(basis)


class NotConditionally2Diverse(PrudentiaError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class JacobiViolated(PrudentiaError, ValueError):
    def __init__(self, message, triple=None, residual=None):
        super().__init__(message)
        self.triple = triple
        self.residual = residual


class Degenerate(PrudentiaError, ValueError):
    pass


class NotTotal(PrudentiaError, ValueError):
    pass


class EmptyDatabase(PrudentiaError, ValueError):
    pass


class NotTwoDiverse(PrudentiaError, ValueError):
    pass
