"""Exception hierarchy for the gbcbound library.

Two branches matter to callers:

* ``InputError`` - the caller handed us something invalid (bad scenario,
  malformed schedule, out-of-range index ...).  The CLI maps these to
  exit code 2.
* ``VerificationFailure`` - a numerical self-check contradicted the
  analytic rule it was guarding.  The CLI maps these to exit code 1.
"""


class GbcBoundError(Exception):
    """Base class for all gbcbound errors."""


class InputError(GbcBoundError, ValueError):
    """Invalid input; CLI exit code 2."""


class NonPositiveParameter(InputError):
    """Power, bandwidth, source variance, or a noise variance is <= 0."""


class NonDecreasingNoises(InputError):
    """Noise variances are not strictly decreasing."""


class IndexOutOfRange(InputError):
    """Receiver index outside 1..K."""


class InvalidDistortion(InputError):
    """Distortion tuple violates 0 < D_k <= source variance (or wrong length)."""


class InvalidTauSchedule(InputError):
    """Schedule entries are negative, NaN, or the last entry is not 0."""


class NonMonotoneTau(InvalidTauSchedule):
    """Schedule entries increase somewhere (must be nonincreasing)."""


class NonFiniteTau(InputError):
    """A finite-only evaluation received a schedule containing +inf."""


class StepOutOfDomain(InputError):
    """Finite-difference step would leave the open distortion domain."""


class ZeroP(InputError):
    """Power sum requested with exponent p = 0."""


class InvalidP(InputError):
    """Minkowski check requested with p <= 0 or p too close to 1."""


class LengthMismatch(InputError):
    """Vectors of different lengths (or empty) where equal length is required."""


class InvalidSplit(InputError):
    """Power split is not a nonnegative vector summing to 1."""


class DimensionMismatch(InputError):
    """Channels with different user counts in a containment check."""


class InvalidCapacities(InputError):
    """Capacity pair does not satisfy 0 < C_1 < C_2."""


class DistortionAtSourceVariance(InputError):
    """Virtual channel requested for D_k = N_S (infinite virtual noise)."""


class NonStrictOrdering(InputError):
    """Virtual channel requires strictly decreasing distortions."""


class BandwidthNotOne(InputError):
    """Analog simulation is defined only for bandwidth factor b = 1."""


class InfeasibleEverywhere(GbcBoundError):
    """Boundary trace found no feasible distortion in the search range."""


class VerificationFailure(GbcBoundError):
    """A self-check failed; CLI exit code 1."""


class ClassificationMismatch(VerificationFailure):
    """Empirical probes disagree with the analytic bound classification."""
