"""Exception hierarchy shared by all modules.

Every error carries a short ``kind`` string; the CLI prints it as the
``error:<kind>:`` prefix.
"""


class HProdSpecError(Exception):
    kind = "error"


class InvalidInput(HProdSpecError, ValueError):
    kind = "invalid_input"


class NonSymmetric(InvalidInput):
    kind = "non_symmetric"


class NonFinite(InvalidInput):
    kind = "non_finite"


class SizeMismatch(InvalidInput):
    kind = "size_mismatch"


class IndexOutOfRange(InvalidInput, IndexError):
    kind = "index_out_of_range"


class InvalidEdge(InvalidInput):
    kind = "invalid_edge"


class CycleTooSmall(InvalidInput):
    kind = "cycle_too_small"


class InvalidStep(InvalidInput):
    kind = "invalid_step"


class InvalidElement(InvalidInput):
    kind = "invalid_element"


class NotAPartition(InvalidInput):
    kind = "not_a_partition"


class MultiplicityMismatch(InvalidInput):
    kind = "multiplicity_mismatch"


class ParseError(HProdSpecError):
    """Malformed edge-list or job file. ``path`` and ``line`` locate the problem."""

    kind = "parse"

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)


class PreconditionError(HProdSpecError):
    """A hypothesis of the structured method does not hold for the given graphs."""

    kind = "precondition"


class NotCommuting(PreconditionError):
    kind = "not_commuting"

    def __init__(self, i, j, norm, bound):
        self.pair = (i, j)
        self.norm = norm
        self.bound = bound
        super().__init__(
            f"matrices {i} and {j} do not commute: "
            f"||AB-BA||_F = {norm:.6g} > {bound:.3g}"
        )


class SeedNotEigenvector(PreconditionError):
    kind = "seed_not_eigenvector"


class NotRegular(PreconditionError):
    kind = "not_regular"

    def __init__(self, index):
        self.index = index
        super().__init__(f"factor {index} is not regular")


class AlphaZero(PreconditionError):
    kind = "alpha_zero"


class OrderMismatch(PreconditionError):
    kind = "order_mismatch"


class FactorCountMismatch(PreconditionError):
    kind = "factor_count_mismatch"
