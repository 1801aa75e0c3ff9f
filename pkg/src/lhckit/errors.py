"""Exception types shared across the toolkit."""


class LhcKitError(Exception):
    """Base class for all toolkit errors."""


class ShapeError(LhcKitError):
    """Alphabets, matrices or maps do not fit together."""


class InvalidPartition(LhcKitError):
    """Blocks overlap or fail to cover the vertex set."""


class RequiresPartition(LhcKitError):
    """Operation is only defined for partition hypergraphs."""


class RequiresBijective(LhcKitError):
    """Operation needs a bijective edge map."""


class RangeError(LhcKitError):
    """Numeric parameter outside its admissible range."""


class CapacityError(LhcKitError):
    """A product alphabet would exceed the materialization cap."""


class IsolatedVertex(LhcKitError):
    """Vertex lies in no edge, so no constraint or probability is defined."""


class SizeMismatch(LhcKitError):
    """Edge counts differ where a bijection is required."""


class EmptyBlock(LhcKitError):
    """A thresholded block came out empty; hypotheses are too tight."""


class HypothesisViolated(LhcKitError):
    """A stated precondition inequality fails; the message names it."""


class LambdaTooLarge(LhcKitError):
    """Error profile too large for the factor-4 derandomization."""


class EdgeCountMismatch(LhcKitError):
    """Hypergraphs in a chain do not have the required edge counts."""


class ChainInconsistent(LhcKitError):
    """Composed edge maps do not align the decoder's two edges."""


class EpsilonTooLarge(LhcKitError):
    """Window width parameter makes the accept/reject windows collide."""


class Infeasible(LhcKitError):
    """Greedy codebook search exhausted before reaching the requested size."""


class DecompositionFailure(LhcKitError):
    """A certificate that the theory guarantees failed; carries the instance.

    Raised only when preconditions were verified and a conclusion still did
    not hold, so the payload is either a bug reproducer or a counterexample.
    """

    def __init__(self, message: str, instance: dict | None = None):
        super().__init__(message)
        self.instance = instance or {}
