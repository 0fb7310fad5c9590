"""
Exceptions raised by csmexact.

Every class also derives from the built-in exception a caller would expect,
so ``except ValueError`` keeps working around any of the library calls.
"""


class CsmError(Exception):
    """Base class for all csmexact errors."""
    pass


class ContractError(CsmError, ValueError):
    """
    A precondition of an operation was violated, e.g. two polynomials with
    different variable counts were added together.
    """
    pass


class DomainError(CsmError, ValueError):
    """
    A value lies outside of the model's domain, e.g. a power-sum index larger
    than the particle number.
    """
    pass


class UnsafePointError(CsmError, ValueError):
    """A sample point is too close to a singular surface of the Hamiltonian."""
    pass


class QuadratureConfigError(CsmError, ValueError):
    """The quadrature rule cannot integrate the requested polynomials."""
    pass


class InternalConsistencyError(CsmError, RuntimeError):
    """
    An exact identity that must always hold was found broken.

    Seeing this is a bug in csmexact, not in the caller's input.
    """
    pass
