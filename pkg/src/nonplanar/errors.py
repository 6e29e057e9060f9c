"""Exception hierarchy.

Errors split into two families. ``InputError`` subclasses signal malformed or
out-of-range input. ``NegativeVerdict`` subclasses are well-formed mathematical
outcomes (no twin, no habit plane, ...) that callers such as the CLI render as
results rather than failures.
"""


class NonplanarError(Exception):
    """Base class for every error raised by the package."""


class InputError(NonplanarError, ValueError):
    pass


class NegativeVerdict(NonplanarError):
    """A well-posed question whose answer is 'no'."""

    verdict = "negative"


# mat3 / symmetry
class NonFinite(InputError):
    pass


class NonSymmetric(InputError):
    pass


class SingularInput(InputError):
    pass


class ZeroAxis(InputError):
    pass


# twinning
class DeterminantMismatch(InputError):
    pass


class DegenerateCoincidence(NegativeVerdict):
    """The two matrices lie on the same well; every rotation-matched pair is trivial."""

    verdict = "degenerate-coincidence"


class NoSolution(NegativeVerdict):
    verdict = "no-solution"


class IdentityInput(NegativeVerdict):
    verdict = "identity-input"


class NoTwin(NegativeVerdict):
    verdict = "no-twin"


# interior point
class KappaOutOfRange(InputError):
    pass


class KappaDegenerate(InputError):
    pass


class NonPositiveDelta(InputError):
    pass


class NoAdmissibleKappa(NegativeVerdict):
    verdict = "no-admissible-kappa"


# surface
class BoundViolated(NegativeVerdict):
    verdict = "bound-violated"


class PlanarProfile(NegativeVerdict):
    verdict = "planar-profile"


class ZeroShear(InputError):
    pass


class OutOfDomain(InputError):
    pass


class MeshSurfaceMismatch(InputError):
    pass


class DisconnectedMesh(InputError):
    pass


# case study
class DegenerateDenominator(InputError):
    pass
