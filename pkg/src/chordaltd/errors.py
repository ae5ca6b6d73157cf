"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the CLI and tests
can match on failures without parsing prose messages.
"""

from __future__ import annotations


class Error(Exception):
    """Base class for all chordaltd errors."""

    code = "error"


class FieldMismatchError(Error):
    """Operands live in different coefficient fields."""

    code = "field-mismatch"


class ConstantHasNoInitialError(Error):
    """initial_and_tail was asked for the initial of a constant."""

    code = "constant-has-no-initial"


class DivisorFreeOfVariableError(Error):
    """Pseudo-division divisor does not involve the division variable."""

    code = "divisor-free-of-variable"


class UnboundVariableError(Error):
    """Evaluation point is missing an assignment for a support variable."""

    code = "unbound-variable"


class BadPrimeError(Error):
    """Coefficient denominator vanishes modulo the requested prime."""

    code = "bad-prime"


class ParseError(Error):
    """Syntax or semantic error in system text, with 1-based position."""

    code = "parse-error"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotAPermutationError(Error):
    """A vertex ordering is not a permutation of the graph's vertices."""

    code = "order-not-a-permutation"


class DegenerateGraphError(Error):
    """Sparsity is undefined on graphs with fewer than two vertices."""

    code = "degenerate-graph"


class TooLargeForExactError(Error):
    """Exact treewidth search is limited to small vertex counts."""

    code = "too-large-for-exact"


class RankUndefinedError(Error):
    """Rank comparison is undefined for the given pair of systems."""

    code = "rank-undefined"


class NothingToReduceError(Error):
    """Reduction was requested at a level with an empty stratum."""

    code = "nothing-to-reduce"


class InvalidReductionMapError(Error):
    """A reduction strategy violated its support or level conditions."""

    code = "invalid-reduction-map"


class SearchSpaceTooLargeError(Error):
    """Brute-force zero-set enumeration would exceed the point budget."""

    code = "search-space-too-large"
