"""Exception hierarchy shared by every module.

Validation errors carry the offending cell, tuple or item in ``witness`` so
the CLI can print it next to the message.
"""
from __future__ import annotations


class FlockError(ValueError):
    """Base class for all validation failures raised by knotflock."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidFile(FlockError):
    pass


# groups and loops
class NotLatin(FlockError):
    pass


class NotAssociative(FlockError):
    pass


class NoIdentity(FlockError):
    pass


class ClosureMismatch(FlockError):
    pass


# ternary operations
class BNotAdmissible(FlockError):
    pass


class NotQuasigroup(FlockError):
    pass


class ReconstructionFailed(FlockError):
    pass


class KNotCentralInvolution(FlockError):
    pass


class NotExtraLoop(FlockError):
    pass


# classification
class DuplicateIsomorphismClass(FlockError):
    pass


class InvalidGroupFile(InvalidFile):
    pass


class CoverageIncomplete(FlockError):
    pass


# diagrams and colorings
class LetterOutOfRange(FlockError):
    pass


class EmptyTokens(FlockError):
    pass


class NotColorable(FlockError):
    pass


class NotCentralColoring(FlockError):
    pass


class NoGroupProvenance(FlockError):
    pass


class NotInSubgroup(FlockError):
    pass


class ActingSetNotClosed(FlockError):
    pass


# homology
class ArityMismatch(FlockError):
    pass


class SizeBudgetExceeded(FlockError):
    pass
