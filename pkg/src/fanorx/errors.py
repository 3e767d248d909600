"""Exception hierarchy shared by every module."""


class FanorxError(Exception):
    """Base class for all library errors."""


class GeometryError(FanorxError):
    """Invalid geometric input or an impossible geometric query."""


class EmptyInput(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


class NotFullDimensional(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class UnboundedDirection(GeometryError):
    pass


class FaceNotInPolytope(GeometryError):
    pass


class NotUnimodular(GeometryError):
    pass


class ZeroVolume(GeometryError):
    pass


class DirectionNotInDualCone(GeometryError):
    pass


class InconsistentBarycenters(GeometryError):
    pass


class UnsupportedDimension(FanorxError):
    pass


class DegenerateBoundingBox(GeometryError):
    pass


class InputError(FanorxError):
    """Problems with a serialized input document."""


class InputSyntaxError(InputError):
    pass


class SchemaError(InputError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class RationalParseError(SchemaError):
    pass
