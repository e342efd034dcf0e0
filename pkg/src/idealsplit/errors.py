"""Exception taxonomy shared across the package.

Absence of a solution (no extension, no splitting, nothing left to
process) is expressed with ``None`` return values, never with these
exceptions; exceptions mark violated preconditions or malformed input.
"""


class IdealSplitError(Exception):
    """Base class for all package errors."""


class AmbientMismatchError(IdealSplitError):
    """Two objects that must share an ambient group do not."""


class NotSubgroupError(IdealSplitError):
    """A claimed containment between subgroups fails."""


class HomDefinitionError(IdealSplitError):
    """A matrix does not define a homomorphism on the given presentations."""


class SizeBoundError(IdealSplitError):
    """An enumeration was asked to walk a group beyond its size bound."""


class NotExactError(IdealSplitError):
    """A sequence that must be exact is not."""


class NotASplittingError(IdealSplitError):
    """A map handed in as a (partial) splitting fails the section identity."""


class LatticeError(IdealSplitError):
    """Structurally broken order data: unknown ids, cycles, bad covers."""


class NotHereditaryError(LatticeError):
    """A processed set is not downward closed."""


class NotComaximalError(IdealSplitError):
    """A family of subideals fails pairwise comaximality in its ideal."""


class MissingMapError(IdealSplitError):
    """A coherence check references a coefficient pair with no stored map."""


class MissingSigmaError(IdealSplitError):
    """Family coherence was asked about coefficients with no splitting."""


class InstanceValidationError(IdealSplitError):
    """An operation that needs a valid instance received an invalid one."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SplittingObstructionError(IdealSplitError):
    """The inductive construction hit an ideal with no admissible extension."""

    def __init__(self, message, ideal=None, diagnostics=None):
        super().__init__(message)
        self.ideal = ideal
        self.diagnostics = diagnostics or {}


class GluingError(IdealSplitError):
    """Comaximal gluing failed (non-surjective gamma or ill-definedness)."""


class DefectNotApplicableError(IdealSplitError):
    """The requested defect kind cannot be planted in this instance."""


class LiftHypothesisError(IdealSplitError):
    """An isomorphism-lifting hypothesis (iso, pairing, validity) fails."""


class SchemaError(IdealSplitError):
    """Malformed serialized data: bad JSON shape, dimensions, or fields."""
