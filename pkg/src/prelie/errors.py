"""Shared exception types."""

from __future__ import annotations


class PrelieError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(PrelieError, ValueError):
    """Ambient dimensions or shapes do not match."""


class CapError(PrelieError, RuntimeError):
    """An enumeration would exceed its feasibility cap."""


class FalsificationError(PrelieError, AssertionError):
    """A structural fact the verification battery relies on failed to hold.

    Raised with a concrete witness; reaching this is itself a reportable
    result, not a bug in the caller.
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness
