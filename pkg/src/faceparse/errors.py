"""Exception hierarchy shared across the toolkit."""


class FaceParseError(Exception):
    """Base class for all toolkit errors."""


# --- landmark files ---------------------------------------------------------

class LandmarkFileError(FaceParseError):
    pass


class CountMismatch(LandmarkFileError):
    """Point count line disagrees with 106 or with the number of lines."""


class MalformedLine(LandmarkFileError):
    """A coordinate line is not two finite decimal numbers."""


# --- part schema ------------------------------------------------------------

class SchemaError(FaceParseError):
    pass


class IndexOutOfRange(SchemaError):
    """Schema references a landmark index outside 0..105."""


class DuplicateCategory(SchemaError):
    pass


class MissingCategory(SchemaError):
    pass


class BadStrategy(SchemaError):
    pass


# --- geometry ---------------------------------------------------------------

class GeometryError(FaceParseError):
    pass


class DegeneratePart(GeometryError):
    """Part landmarks are insufficient or collapsed to a point."""


class IllConditionedFit(GeometryError):
    """Least-squares system too ill-conditioned to trust."""


# --- array operations -------------------------------------------------------

class DimensionMismatch(FaceParseError):
    """Input maps do not share dimensions (or labels exceed channels)."""


class NegativeAlpha(FaceParseError):
    pass


class InvalidProbability(FaceParseError):
    """Prediction array violates range or normalization requirements."""


class WrongArity(FaceParseError):
    pass


# --- dataset ----------------------------------------------------------------

class DatasetError(FaceParseError):
    pass


class MissingSplitFile(DatasetError):
    pass


class DanglingId(DatasetError):
    """A split file lists an id with no landmark file behind it."""


class DuplicateSampleId(DatasetError):
    """The same id appears in more than one split."""
