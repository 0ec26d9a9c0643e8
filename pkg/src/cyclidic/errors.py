"""Exception hierarchy.

Every geometric precondition failure derives from :class:`GeometryError`;
the CLI maps those to exit code 3.
"""


class GeometryError(ValueError):
    """Base class for violated geometric preconditions."""


# kernel
class ParabolicComplex(GeometryError):
    pass


class DegeneratePair(GeometryError):
    pass


class NoLinearRelation(GeometryError):
    pass


class ContactViolation(GeometryError):
    pass


class PointSphereArgument(GeometryError):
    pass


class NonIntersecting(GeometryError):
    pass


class NoRealSpheres(GeometryError):
    pass


class DegenerateSpan(GeometryError):
    """A span does not have the expected dimension or signature."""


class NotLightlike(GeometryError):
    pass


# incidence
class NotOnSphere(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class NoCommonSphere(GeometryError):
    pass


class DegenerateInput(NoCommonSphere):
    pass


class DegeneratePencil(GeometryError):
    pass


# cyclide
class DegenerateTorus(GeometryError):
    pass


class CircleFamily(GeometryError):
    pass


class SingularParameter(GeometryError):
    pass


class BaseParameter(GeometryError):
    pass


class NotCurvatureCircle(GeometryError):
    pass


class NonSpacelikeDerivative(GeometryError):
    pass


class NotOrthogonal(GeometryError):
    pass


class OutsideJStar(GeometryError):
    pass


class CircleNotOnSphere(GeometryError):
    pass


class NoCommonCurvatureSphere(GeometryError):
    pass


class FourPointIntersection(NoCommonCurvatureSphere):
    """Two contact elements of a cyclide share no sphere (generic pair)."""


class NotOnQuerSphere(GeometryError):
    pass


class NotOrthogonalToBaseCircle(GeometryError):
    pass


# dc_system
class PointSphereComplexArgument(GeometryError):
    pass


class NullDirection(GeometryError):
    pass


class UnsupportedChart(GeometryError):
    pass


# apps
class NoMidpointSphere(GeometryError):
    pass


class DoubleRoot(NoMidpointSphere):
    pass


class SameSphere(GeometryError):
    pass


class SingularBox(GeometryError):
    pass


class NotMLie(GeometryError):
    pass
