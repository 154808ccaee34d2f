"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class KCatError(Exception):
    """Base class for all errors raised by kcat."""


class NonPrimeCharacteristic(KCatError):
    pass


class InvalidOrder(KCatError):
    pass


class GroupAxiomError(KCatError):
    """A multiplication table fails a group axiom; ``witness`` names the culprit."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


class NotAssociative(GroupAxiomError):
    pass


class NoIdentity(GroupAxiomError):
    pass


class NoInverse(GroupAxiomError):
    pass


class MalformedCategory(KCatError):
    pass


class NotComposable(KCatError):
    pass


class CyclicQuiver(KCatError):
    pass


class UnknownObject(KCatError):
    pass


class BadWitness(KCatError):
    def __init__(self, message: str, obj: str):
        super().__init__(message)
        self.obj = obj


class NotFree(KCatError):
    pass


class NotSameOrbit(KCatError):
    pass


class InvalidGrading(KCatError):
    pass


class NotAutomorphism(KCatError):
    pass


class InhomogeneousBasis(KCatError):
    pass


class FormatError(KCatError):
    """Malformed interchange data. ``location`` is a JSON path or ``line:col``."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
