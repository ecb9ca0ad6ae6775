"""Exception types raised across the toolkit."""


class ReharkError(Exception):
    """Base class for all toolkit errors."""


# --- binary interchange ---------------------------------------------------

class BadMagic(ReharkError):
    """File does not start with the expected magic tag."""


class TruncatedFile(ReharkError):
    """Byte count does not match the declared dimensions."""


class UnsupportedVersion(ReharkError):
    """Matrix file carries a version this reader does not understand."""


class IoFailure(ReharkError):
    """Underlying read or write failed."""


class NonFiniteEntry(ReharkError):
    """A matrix contains NaN or infinite entries where finite values are required."""


# --- bundle validation ----------------------------------------------------

class MissingComponent(ReharkError):
    """Manifest key or referenced file is absent."""


class DimensionMismatch(ReharkError):
    """Shapes of related matrices or vectors disagree."""


class LabelOutOfRange(ReharkError):
    """A class label is >= the declared number of classes."""


class UnbalancedSupport(ReharkError):
    """Support set does not hold exactly n_shots samples per class."""


# --- numeric operations ---------------------------------------------------

class InvalidExponent(ReharkError):
    """Power-transform exponent must be positive."""


class EmptyInput(ReharkError):
    """Operation requires at least one row."""


class GammaOutOfRange(ReharkError):
    """Text mixing coefficient outside [0, 1]."""


class OmegaOutOfRange(ReharkError):
    """Visual refinement weight outside [0, 1]."""


class EmptyClass(ReharkError):
    """A class has no support samples to build a prototype from."""


class InvalidSpec(ReharkError):
    """Kernel specification is inconsistent or incomplete."""


class SolveFailure(ReharkError):
    """Linear system could not be solved (non-finite inputs)."""


# --- evaluation and search ------------------------------------------------

class LengthMismatch(ReharkError):
    """Prediction and truth vectors differ in length."""


class InvalidBudget(ReharkError):
    """Search budget must be at least one trial."""


class ConstraintConflict(ReharkError):
    """Ablation constraints pin an unknown parameter or an out-of-range value."""
