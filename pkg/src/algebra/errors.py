"""Exceptions raised by the algebra modules.

Every error carries the witness that made the check fail, so a failing
property can be reproduced from the message alone.
"""

from typing import Any, Optional


class AlgebraError(Exception):
    """Base class for all algebra failures."""

    def __init__(self, message: str, witness: Any = None):
        """
        Initialize the error.

        Args:
            message: Human readable reason
            witness: Element, pair or triple exhibiting the failure
        """
        super().__init__(message)
        self.message = message
        self.witness = witness

    def __str__(self) -> str:
        if self.witness is None:
            return self.message
        return f"{self.message} (witness: {self.witness})"


class InvariantViolation(AlgebraError):
    """A guaranteed property did not hold; indicates a defect, not bad input."""


# Semigroup validation


class NotAnInverseSemigroup(AlgebraError):
    """The table does not define an inverse semigroup."""


class MalformedTable(NotAnInverseSemigroup):
    """The table is not square or has entries out of range."""


class NotAssociative(NotAnInverseSemigroup):
    """(ab)c != a(bc) for the witness triple."""


class NoInverse(NotAnInverseSemigroup):
    """The witness element has no inverse."""


class IdempotentsDontCommute(NotAnInverseSemigroup):
    """The witness pair of idempotents does not commute."""


class NotASemilattice(AlgebraError):
    """The semigroup has a non-idempotent element or is not commutative."""


# Partial bijections


class GroundMismatch(AlgebraError):
    """Operands live on ground sets of different sizes."""


class NotInjective(AlgebraError):
    """A partial map sends two points to the same image."""


class JoinFails(AlgebraError):
    """The union of a family of partial bijections is not a partial bijection."""

    def __init__(self, message: str, witness: Any = None, class_index: Optional[int] = None):
        super().__init__(message, witness)
        self.class_index = class_index


# Congruences


class NotCompatible(AlgebraError):
    """The partition is not compatible with multiplication."""


class SizeBoundExceeded(AlgebraError):
    """The semigroup is larger than the configured enumeration bound."""


class NotIdempotentPure(AlgebraError):
    """A class containing an idempotent also contains a non-idempotent."""


# Partial actions


class PremorphismError(AlgebraError):
    """The table of maps is not a premorphism."""


class AxiomOneFails(PremorphismError):
    """tau(s^-1) != tau(s)^-1."""


class AxiomTwoFails(PremorphismError):
    """tau(s)tau(t) is not below tau(st)."""


class NotIdealIso(PremorphismError):
    """A map is not an order isomorphism between order ideals."""


class NotGlobal(AlgebraError):
    """The action is not a homomorphism."""


class NotFInverse(AlgebraError):
    """Some sigma-class has no maximum element."""


class NotStrict(AlgebraError):
    """The strictness map alpha is undefined or not a semilattice morphism."""


class NotOrderPreserving(AlgebraError):
    """s <= t but tau_s is not below tau_t."""


class BadWitness(AlgebraError):
    """The proposed global action does not restrict to the partial action."""


# L-triples


class LTripleError(AlgebraError):
    """An L-triple axiom fails."""


class NotPartialOrder(LTripleError):
    """The relation is not reflexive, antisymmetric and transitive."""


class NotDownDirected(LTripleError):
    """Two points have no common lower bound."""


class IdealViolation(LTripleError):
    """A subset that must be an order ideal is not down-closed."""


class NotSubsemilattice(LTripleError):
    """Two points of Y have no meet in X, or the meet lies outside Y."""


class NotOrderIsomorphism(LTripleError):
    """A map or its inverse does not preserve the order."""


class EmptyDomain(LTripleError):
    """A map of the action has an empty domain."""


class NotGenerated(LTripleError):
    """X is not covered by the images TY."""


# Input handling


class InputError(AlgebraError):
    """Bad user input; maps to exit code 2."""


class ParseError(InputError):
    """An instance file could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class OutOfRange(InputError):
    """A generator parameter is outside its documented range."""


class UnknownVerb(InputError):
    """The command verb is not recognised."""


class ClassJoinFails(JoinFails, NotIdempotentPure):
    """A class of a non-idempotent-pure congruence has no join in I(X)."""


class NotCovering(AlgebraError):
    """The domains of the idempotent maps do not cover the ground set."""
