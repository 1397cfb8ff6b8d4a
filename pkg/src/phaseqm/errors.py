"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PhaseQMError(Exception):
    """Base class for all errors raised by this package."""


class ExprError(PhaseQMError):
    """Lexing, parsing, or mode violation in the expression language.

    Carries the byte offset of the offending input character.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class DimensionError(PhaseQMError):
    """A matrix dimension is too small for the requested construction."""


class StateError(PhaseQMError):
    """A candidate density matrix violates the state invariants."""


class TruncationError(PhaseQMError):
    """A reported value is not stable under doubling the Fock dimension,
    or a search that must succeed on valid states came up empty."""


class NumericalContractError(PhaseQMError):
    """A numeric result violates its contract, e.g. a non-negligible
    imaginary residue on a quantity that must be real."""


class GridError(PhaseQMError):
    """A phase-space grid is inadequate for the requested computation."""
