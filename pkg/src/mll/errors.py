"""Exception hierarchy for the mll package.

Exit-code mapping used by the CLI:
  2 -- invalid input (manifest, expression, hint problems)
  3 -- unsupported structure (non-metallic operator, non-lightlike instance)
  1 -- a requested check failed (not an exception; signalled via report status)
"""

from __future__ import annotations


class MllError(Exception):
    """Base class for all package errors."""


# -- scalar field ------------------------------------------------------------

class NonPositiveParameter(MllError):
    """p or q of the metallic equation is not a positive integer."""


class SquareDiscriminant(MllError):
    """p^2 + 4q is a perfect square, so x^2 - p x - q splits over Q."""


# -- linear algebra ----------------------------------------------------------

class DimensionMismatch(MllError):
    """Operands live in different ambient dimensions."""


class NoSolution(MllError):
    """A linear system is inconsistent."""


class NotContained(MllError):
    """A subspace argument is not contained where required."""


# -- metallic structure ------------------------------------------------------

class UnsupportedStructure(MllError):
    """The operator cannot be handled (non-constant, wrong shape, ...)."""


class PolynomialViolation(UnsupportedStructure):
    """J*J != p*J + q*I."""


class NotSelfAdjoint(UnsupportedStructure):
    """J is not self-adjoint for the given metric."""


# -- bundles -----------------------------------------------------------------

class NotLightlike(MllError):
    """The induced metric is non-degenerate (radical rank 0)."""


class DegenerateScreenHint(MllError):
    """A supplied screen hint is not tangent, not independent of the
    radical, or fails non-degeneracy."""


class NotTangent(MllError):
    """A vector or field expected in the tangent space is not tangent."""


class WrongMode(MllError):
    """A splitting was requested in a mode the instance does not support."""


class WrongStructureKind(MllError):
    """A check was requested whose hypothesis does not match the instance."""


class NonGenericSample(MllError):
    """A sample point hits a denominator zero or rank drop of the symbolic
    construction."""


# -- manifests / parsing -----------------------------------------------------

class ManifestError(MllError):
    """Invalid manifest content (exit-code-2 class)."""


class ExprSyntaxError(ManifestError):
    """Malformed expression; carries the source position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownIdentifier(ManifestError):
    """Expression references a name that is neither a chart variable nor a
    declared constant."""

    def __init__(self, name: str, pos: int):
        super().__init__(f"unknown identifier {name!r} (at position {pos})")
        self.name = name
        self.pos = pos


class NonPolynomial(ManifestError):
    """Expression uses a negative exponent."""
