"""Exception types shared across the package."""


class SiltError(Exception):
    """Base class for all mathematical / input errors raised by siltlab."""

    code = "error"


class MalformedPresentation(SiltError):
    code = "malformed_presentation"


class InfiniteDimensional(SiltError):
    code = "infinite_dimensional"


class UnsupportedField(SiltError):
    code = "unsupported_field"


class FieldTooSmall(SiltError):
    code = "field_too_small"


class LiftFailed(SiltError):
    code = "lift_failed"


class NotChainMap(SiltError):
    code = "not_chain_map"


class MixedAlgebras(SiltError):
    code = "mixed_algebras"


class ZeroModule(SiltError):
    code = "zero_module"


class NotProjective(SiltError):
    code = "not_projective"


class NotInjective(SiltError):
    code = "not_injective"


class SimpleIsInjective(SiltError):
    code = "simple_is_injective"


class SelfExtension(SiltError):
    code = "self_extension"


class ProjDimTooBig(SiltError):
    code = "proj_dim_too_big"


class NotASummand(SiltError):
    code = "not_a_summand"


class NotInAisle(SiltError):
    code = "not_in_aisle"


class IterationCap(SiltError):
    code = "iteration_cap"


class NotHereditary(SiltError):
    code = "not_hereditary"


class ValidationFailed(SiltError):
    code = "validation_failed"


class CycleDetected(SiltError):
    code = "cycle_detected"
