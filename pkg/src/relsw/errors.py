"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the CLI: SchemaError -> 2, PreconditionError -> 3,
SolverError -> 4.
"""


class RelSWError(Exception):
    """Base class for all toolkit errors."""


class SchemaError(RelSWError):
    """Malformed or inconsistent input data (bad gram matrix, rank mismatch...)."""


class PreconditionError(RelSWError):
    """A formula or operation precondition is violated."""


class NonCharacteristicError(PreconditionError):
    """Dimension numerator not divisible by 4; signals bad c1 data upstream."""


class HypothesisError(PreconditionError):
    """A lemma hypothesis fails (e.g. (g-1) = 0 mod l in the reducible formula)."""


class SolverError(RelSWError):
    """Iterative solve failed to converge within its budget."""
