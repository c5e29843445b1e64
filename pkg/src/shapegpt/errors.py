"""Exception taxonomy shared by every subsystem.

Each error name matches the failure mode it reports; tool invocation wraps
these into error ToolResults instead of letting them escape to the agent loop.
"""


class ShapeGptError(Exception):
    """Base class for all toolkit errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


# --- shapefile I/O ---------------------------------------------------------

class MissingFile(ShapeGptError):
    pass


class BadMagic(ShapeGptError):
    pass


class UnsupportedShapeKind(ShapeGptError):
    pass


class CountMismatch(ShapeGptError):
    pass


class MalformedRecord(ShapeGptError):
    pass


class IoFailure(ShapeGptError):
    pass


class FieldOverflow(ShapeGptError):
    pass


class EmptyInput(ShapeGptError):
    pass


# --- geometry --------------------------------------------------------------

class WrongGeometryKind(ShapeGptError):
    pass


class InvalidGeometry(ShapeGptError):
    pass


class NonPositiveDistance(ShapeGptError):
    pass


class OpenBoundary(ShapeGptError):
    pass


class UnsortedDistances(ShapeGptError):
    pass


class TooFewSeeds(ShapeGptError):
    pass


class DuplicateSeedsOnly(ShapeGptError):
    pass


class TooFewVertices(ShapeGptError):
    pass


class SelfIntersecting(ShapeGptError):
    pass


class DegenerateLine(ShapeGptError):
    pass


class TooFewPoints(ShapeGptError):
    pass


class DegenerateOrientation(ShapeGptError):
    """Point cloud has no definable major axis (all points coincident).

    Carries the parts of the dispersion summary that are still defined.
    """

    def __init__(self, message, mean_center=None, standard_distance=None):
        super().__init__(message)
        self.mean_center = mean_center
        self.standard_distance = standard_distance


class UnsupportedCrsPair(ShapeGptError):
    pass


class LatitudeOutOfRange(ShapeGptError):
    pass


# --- function library ------------------------------------------------------

class SchemaMismatch(ShapeGptError):
    pass


class DuplicateTool(ShapeGptError):
    pass


class WrongToolCount(ShapeGptError):
    pass


class UnknownLayer(ShapeGptError):
    pass


class SandboxViolation(ShapeGptError):
    pass


# --- agent runtime ---------------------------------------------------------

class TransportError(ShapeGptError):
    pass


class MalformedModelOutput(ShapeGptError):
    pass


class ScriptExhausted(ShapeGptError):
    """A scripted model client ran out of canned turns."""


# --- benchmark -------------------------------------------------------------

class MalformedTask(ShapeGptError):
    pass


class TraceValidationFailure(ShapeGptError):
    pass


class UnreadableArtifact(ShapeGptError):
    pass


# --- service ---------------------------------------------------------------

class BadArchive(ShapeGptError):
    pass


class NoShapefileFound(ShapeGptError):
    pass


class OversizeUpload(ShapeGptError):
    pass


class SessionBusy(ShapeGptError):
    pass


class UnknownSession(ShapeGptError):
    pass


class UnknownArtifact(ShapeGptError):
    pass
