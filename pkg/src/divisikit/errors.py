"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured JSON without string matching.
"""


class DivisikitError(Exception):
    code = "error"
    exit_code = 2


class MalformedInput(DivisikitError):
    code = "malformed_input"


# distributions and polynomials
class AllZero(DivisikitError):
    code = "all_zero"


class NegativeMass(DivisikitError):
    code = "negative_mass"


class NegativeCoefficient(DivisikitError):
    code = "negative_coefficient"


class DegreeExceedsBound(DivisikitError):
    code = "degree_exceeds_bound"


# divisibility
class DegreeNotDivisible(DivisikitError):
    code = "degree_not_divisible"


class InvalidEpsilon(DivisikitError):
    code = "invalid_epsilon"


# decomposability
class PrecisionExhausted(DivisikitError):
    code = "precision_exhausted"
    exit_code = 3


class InvalidSupportBound(DivisikitError):
    code = "invalid_support_bound"


class OddDegree(DivisikitError):
    code = "odd_degree"


# subset sum toolbox
class InstanceTooLarge(DivisikitError):
    code = "instance_too_large"


class ShiftOnPlainVariant(DivisikitError):
    code = "shift_on_plain_variant"


class DegenerateCardinality(DivisikitError):
    code = "degenerate_cardinality"


class DegenerateGadget(DivisikitError):
    code = "degenerate_gadget"


# matrices
class DegenerateSpectrum(DivisikitError):
    code = "degenerate_spectrum"


class NotStochasticInput(DivisikitError):
    code = "not_stochastic_input"


class DimensionMismatch(DivisikitError):
    code = "dimension_mismatch"


class NoPositiveEntry(DivisikitError):
    code = "no_positive_entry"


class NotDiagonalizable(DivisikitError):
    code = "not_diagonalizable"


class NotSquareDimension(DivisikitError):
    code = "not_square_dimension"


# sat embedding
class ParamsTooSmall(DivisikitError):
    code = "params_too_small"


class DimensionTooSmall(DivisikitError):
    code = "dimension_too_small"
