"""Exception types raised by the morita package."""


class MoritaError(Exception):
    """Base class for all errors raised by this package."""


class NonUnitalFusion(MoritaError):
    """Fusion rules violate the unit constraints N^{a,1}_c = N^{1,a}_c = delta_{a,c}."""


class NumericalFailure(MoritaError):
    """A numerical computation did not converge or is ill-conditioned."""


class InconsistentAction(MoritaError):
    """No positive solution of the module dimension equations exists."""


class MissingBlock(MoritaError):
    """A coherence check referenced an F-block that is structurally required but absent."""


class ShapeMismatch(MoritaError):
    """Gauge or tensor data does not match the fusion-space dimensions."""


class AlgebraMismatch(MoritaError):
    """Operands belong to different annular algebras."""


class DecompositionFailure(MoritaError):
    """Representation decomposition produced an inconsistent result."""


class DegenerateSpectrum(MoritaError):
    """Random-element splitting failed to separate eigenspaces within the retry budget."""


class RankAmbiguous(MoritaError):
    """Numerical rank of an intertwiner-space map is not close to an integer."""


class GradingMismatch(MoritaError):
    """A representation is missing a sector required by the skeletal data."""


class PipelineInconsistent(MoritaError):
    """Assembled dual data failed its own validation; indicates an internal bug."""


class MismatchedRank(MoritaError):
    """Cross-check found a different number of irreducibles than the oracle."""


class FormatError(MoritaError):
    """A data file is malformed."""
