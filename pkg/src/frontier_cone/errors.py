"""Exception types shared across the package."""


class FrontierConeError(Exception):
    """Base class for all package errors."""


class InvalidAnchor(FrontierConeError):
    """Anchor vector is zero, has nonpositive entries, or mismatched dimension."""


class DegenerateRay(FrontierConeError):
    """An observation ray does not cross the projection hyperplane."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"observation {index} has nonpositive inner product with x0")


class NotApplicable(FrontierConeError):
    """Operation called outside its dimensional domain (e.g. q=1 vs q>1 paths)."""


class MalformedProgram(FrontierConeError):
    """Linear program with inconsistent dimensions."""


class InvalidSample(FrontierConeError):
    """Observation data violating basic shape/sign requirements."""


class OutsideHull(FrontierConeError):
    """Query point lies outside the convex hull of the section points."""


class InvalidBandwidth(FrontierConeError):
    """Nonpositive neighborhood radius."""


class InsufficientLocalData(FrontierConeError):
    """Too few (or rank-deficient) points for the local quadratic regression."""

    def __init__(self, count_needed, count_found):
        self.count_needed = count_needed
        self.count_found = count_found
        super().__init__(
            f"local quadratic fit needs {count_needed} well-spread points, found {count_found}"
        )


class NotLocallyStrictlyConcave(FrontierConeError):
    """Fitted curvature determinant is nonpositive; curved-region constants undefined."""


class InsufficientReplicates(FrontierConeError):
    """Fewer than two limit replicates supplied to the bias correction."""


class DegenerateRegion(FrontierConeError):
    """Region sampling kept missing the origin's hull; n too small for the dimension."""


class InvalidGrid(FrontierConeError):
    """Sample-size grid unsuitable for the rate regression."""


class EmptyInput(FrontierConeError):
    """Empty value list where at least one element is required."""


class OutsideSupport(FrontierConeError):
    """Evaluation point outside the scenario's input support."""


#: Errors caused by bad user input (CLI exit code 2).
USAGE_ERRORS = (
    InvalidAnchor,
    NotApplicable,
    MalformedProgram,
    InvalidSample,
    InvalidBandwidth,
    InvalidGrid,
    EmptyInput,
    OutsideSupport,
)

#: Errors signalling numerical degeneracy of an otherwise valid run (CLI exit code 3).
DEGENERACY_ERRORS = (
    DegenerateRay,
    OutsideHull,
    InsufficientLocalData,
    NotLocallyStrictlyConcave,
    InsufficientReplicates,
    DegenerateRegion,
)
