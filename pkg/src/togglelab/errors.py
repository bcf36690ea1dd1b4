"""Exception hierarchy shared by every togglelab module."""


class ToggleLabError(Exception):
    """Base class for all library errors."""


class DegreeMismatchError(ToggleLabError, ValueError):
    """Two permutations (or a permutation and a group) act on different point counts."""


class NotTransitiveError(ToggleLabError, ValueError):
    """An operation that needs a transitive group was handed an intransitive one."""


class FamilyError(ToggleLabError, ValueError):
    """A set family failed validation (duplicates, unknown labels, bad file)."""


class FactorizationError(ToggleLabError, ValueError):
    """A Factorization record does not satisfy its own invariants."""


class BlockSystemError(ToggleLabError, ValueError):
    """A partition is not a block system for the group it was paired with."""


class PosetError(ToggleLabError, ValueError):
    """A poset description is cyclic or references unknown elements."""


class InfeasibleRequestError(ToggleLabError, ValueError):
    """An enumeration request exceeds what can be computed exhaustively."""
