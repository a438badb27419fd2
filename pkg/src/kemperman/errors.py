"""Exception hierarchy shared by every module."""


class KempermanError(Exception):
    """Base class for all domain errors raised by the package."""


class ContractError(KempermanError, ValueError):
    """An argument violates an operation's contract (range, group, shape)."""


class GroupOrderError(ContractError):
    """Group order does not fit in a 64-bit word."""


class GroupMismatchError(ContractError):
    pass


class EmptySetError(ContractError):
    pass


class NotSubgroupError(ContractError):
    pass


class NotGeneratorError(ContractError):
    """Coset does not generate a cyclic quotient (or the quotient is not cyclic)."""


class PreconditionError(KempermanError, ValueError):
    pass


class NonCriticalSubgroupError(PreconditionError):
    """``(A, H)`` is not a critical pair."""


class CosetNotSplitError(PreconditionError):
    """The coset ``R`` lies entirely inside or entirely outside ``B``."""


class NotCriticalError(PreconditionError):
    pass


class NotMaximalError(PreconditionError):
    pass


class TrivialTrioError(PreconditionError):
    pass


class BoundExceeded(KempermanError):
    """Exhaustive enumeration was requested above the configured order bound."""


class NoStructureFound(KempermanError, RuntimeError):
    """No beat or chord matched a maximal critical trio.

    Kemperman's theorem says this cannot happen, so it always indicates a bug.
    """

    def __init__(self, trio, message=None):
        self.trio = trio
        super().__init__(message or f"no structure found for {trio!r} (counterexample report)")


class DocumentError(KempermanError, ValueError):
    pass


class SchemaError(DocumentError):
    pass


class MalformedSetError(DocumentError):
    pass


class ElementRangeError(DocumentError):
    pass
