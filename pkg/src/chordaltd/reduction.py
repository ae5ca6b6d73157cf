"""Top-down reduction machinery: strata, rank, and the reduction operators.

A system is stratified by leading variable: stratum ``i`` holds the
polynomials whose leading variable is ``x_i``, while nonzero constants live
in a separate bucket.  A reduction step at level ``i`` hands stratum ``i``
to a strategy that returns a single polynomial ``T`` with leading variable
``x_i`` plus side results ``R`` free of ``x_i`` (and of anything higher),
all supported inside the stratum's support; the stratum is replaced by
``{T}`` and the side results sink into lower strata.  Successive reduction
applies this from the top level downward.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .errors import (
    InvalidReductionMapError,
    NothingToReduceError,
    RankUndefinedError,
)
from .polynomials import Polynomial, monomial, pseudo_remainder, support
from .systems import PolySystem

# A reduction strategy: (stratum, level) -> (pivot T, side results R).
ReductionMap = Callable[[Sequence[Polynomial], int], tuple[Polynomial, list[Polynomial]]]


def _ordered_unique(polys) -> tuple[Polynomial, ...]:
    return tuple(dict.fromkeys(polys))


@dataclass(frozen=True)
class LeveledSystem:
    """A polynomial set stratified by leading variable.

    ``polys`` holds the non-constant members in a deterministic order
    (insertion order, duplicates dropped); ``constants`` collects nonzero
    constant members separately.
    """

    names: tuple[str, ...]
    polys: tuple[Polynomial, ...]
    constants: tuple[Polynomial, ...] = ()
    field: object = dc_field(default=None)

    @classmethod
    def from_system(cls, system: PolySystem) -> "LeveledSystem":
        members = _ordered_unique(p for p in system.polys if not p.is_zero)
        return cls(
            names=system.vars,
            polys=tuple(p for p in members if not p.is_constant),
            constants=tuple(p for p in members if p.is_constant),
            field=system.field,
        )

    @property
    def n(self) -> int:
        return len(self.names)

    def stratum(self, i: int) -> tuple[Polynomial, ...]:
        return tuple(p for p in self.polys if p.leading_variable() == i)

    def members(self) -> tuple[Polynomial, ...]:
        return self.polys + self.constants

    def to_system(self) -> PolySystem:
        return PolySystem(self.names, self.members(), self.field)

    def __repr__(self) -> str:
        return f"LeveledSystem({list(self.polys)}, constants={list(self.constants)})"


def level(system: LeveledSystem) -> int:
    """Smallest ``i`` with at most one polynomial in every stratum above it.

    A system whose strata all hold at most one element has level 0.
    """
    for i in range(system.n, 0, -1):
        if len(system.stratum(i)) > 1:
            return i
    return 0


def lower_rank(a: LeveledSystem, b: LeveledSystem) -> bool:
    """Well-founded order: by level, then by minimal degree at that level.

    Comparison at a shared level requires both strata to be nonempty (and
    the level to be positive); anything else is refused as undefined.
    """
    la, lb = level(a), level(b)
    if la != lb:
        return la < lb
    if la == 0:
        raise RankUndefinedError("both systems are fully reduced")
    sa, sb = a.stratum(la), b.stratum(la)
    if not sa or not sb:
        raise RankUndefinedError(f"empty stratum at shared level {la}")
    return min(p.degree(la) for p in sa) < min(p.degree(lb) for p in sb)


# -- pivot selection -----------------------------------------------------------


def _min_degree_candidates(stratum: Sequence[Polynomial], var: int) -> list[Polynomial]:
    dmin = min(p.degree(var) for p in stratum)
    return [p for p in stratum if p.degree(var) == dmin]


class PivotRule:
    """Tie-break rule choosing among minimal-degree stratum members.

    Kinds: ``first`` (input order), ``min-terms`` (fewest terms, then
    smallest support, then input order), ``min-support`` (smallest support,
    then fewest terms, then input order), and ``index:K[,K...]`` (explicit
    1-based positions in the node's polynomial list, consumed one per
    split, falling back to ``min-terms`` afterwards).
    """

    KINDS = ("first", "min-terms", "min-support", "index")

    def __init__(self, kind: str, indices: Sequence[int] = ()):
        if kind not in self.KINDS:
            raise ValueError(f"unknown pivot rule {kind!r}")
        self.kind = kind
        self._pending = list(indices)

    @classmethod
    def parse(cls, spec: str) -> "PivotRule":
        if spec in ("first", "min-terms", "min-support"):
            return cls(spec)
        if spec.startswith("index:"):
            try:
                indices = [int(tok) for tok in spec[len("index:"):].split(",")]
            except ValueError:
                raise ValueError(f"bad pivot spec {spec!r}")
            if not indices or any(k < 1 for k in indices):
                raise ValueError(f"bad pivot spec {spec!r}")
            return cls("index", indices)
        raise ValueError(f"unknown pivot rule {spec!r}")

    def select(
        self,
        stratum: Sequence[Polynomial],
        polys: Sequence[Polynomial],
        var: int,
    ) -> Polynomial:
        candidates = _min_degree_candidates(stratum, var)
        if len(candidates) == 1:
            if self.kind == "index" and self._pending:
                self._pending.pop(0)
            return candidates[0]
        kind = self.kind
        if kind == "index":
            if self._pending:
                k = self._pending.pop(0)
                if 1 <= k <= len(polys) and polys[k - 1] in candidates:
                    return polys[k - 1]
            kind = "min-terms"
        if kind == "first":
            return candidates[0]
        if kind == "min-terms":
            return min(candidates, key=lambda p: (len(p.terms), len(p.support())))
        return min(candidates, key=lambda p: (len(p.support()), len(p.terms)))


# -- reduction strategies ------------------------------------------------------


def prem_map(tie_break: str = "first") -> ReductionMap:
    """One-shot pseudo-remainder strategy.

    Picks a minimal-degree pivot and returns the pseudo-remainders of the
    other stratum members in one pass, zero remainders dropped.  When the
    pivot's degree exceeds 1 the remainders may still involve the level
    variable, which a reduction step will reject; use ``prem_chain_map``
    for a strategy that always conforms.
    """

    def reduce(stratum: Sequence[Polynomial], var: int):
        rule = PivotRule.parse(tie_break)
        pivot = rule.select(stratum, stratum, var)
        rest = []
        for p in stratum:
            if p == pivot:
                continue
            r, _, _ = pseudo_remainder(p, pivot, var)
            if not r.is_zero:
                rest.append(r)
        return pivot, list(_ordered_unique(rest))

    return reduce


def prem_chain_map(tie_break: str = "first") -> ReductionMap:
    """Iterated pseudo-remainder strategy.

    Repeats one-shot reduction on whatever still involves the level
    variable until a single polynomial survives; everything pushed out is
    free of that variable.  The pivot degree drops strictly each round, so
    the chain terminates.
    """

    def reduce(stratum: Sequence[Polynomial], var: int):
        working = list(_ordered_unique(stratum))
        out: list[Polynomial] = []
        while len(working) > 1:
            rule = PivotRule.parse(tie_break)
            pivot = rule.select(working, working, var)
            nxt = [pivot]
            for p in working:
                if p == pivot:
                    continue
                r, _, _ = pseudo_remainder(p, pivot, var)
                if r.is_zero:
                    continue
                if r.leading_variable() == var:
                    nxt.append(r)
                else:
                    out.append(r)
            working = list(_ordered_unique(nxt))
        return working[0], list(_ordered_unique(out))

    return reduce


def support_preserving_map() -> ReductionMap:
    """Strategy whose pivot support equals the whole stratum support.

    Each member is lifted into its own band of degrees in the level
    variable, so no cancellation can occur and the sum keeps every support
    variable; no side results are produced.
    """

    def reduce(stratum: Sequence[Polynomial], var: int):
        if len(stratum) == 1:
            return stratum[0], []
        span = max(p.degree(var) for p in stratum) + 1
        field = stratum[0].field
        total = stratum[0]
        for k, p in enumerate(stratum[1:], start=1):
            shift = Polynomial(field, {monomial({var: k * span}): field.one})
            total = total + p * shift
        return total, []

    return reduce


# -- reduction steps -----------------------------------------------------------


def _validate_map_output(
    stratum: Sequence[Polynomial], var: int, pivot: Polynomial, rest: Sequence[Polynomial]
) -> None:
    allowed = support(stratum)
    if pivot.leading_variable() != var:
        raise InvalidReductionMapError(
            f"pivot has leading variable {pivot.leading_variable()}, expected {var}"
        )
    if not pivot.support() <= allowed:
        raise InvalidReductionMapError("pivot support escapes the stratum support")
    for r in rest:
        lv = r.leading_variable()
        if lv is not None and lv >= var:
            raise InvalidReductionMapError(
                f"side result {r!r} still involves x{lv} at level {var}"
            )
        if not r.support() <= allowed:
            raise InvalidReductionMapError("side-result support escapes the stratum")


def reduce_level(system: LeveledSystem, i: int, strategy: ReductionMap) -> LeveledSystem:
    """One reduction step at level ``i``.

    Strata above ``i`` are untouched, stratum ``i`` collapses to the
    strategy's pivot, and the side results join the lower strata (nonzero
    constants go to the constants bucket).  The strategy's output is
    validated and a violation is a hard error.
    """
    stratum = system.stratum(i)
    if not stratum:
        raise NothingToReduceError(f"stratum {i} is empty")
    pivot, rest = strategy(stratum, i)
    rest = [r for r in rest if not r.is_zero]
    _validate_map_output(stratum, i, pivot, rest)

    new_polys: list[Polynomial] = []
    placed = False
    for p in system.polys:
        if p.leading_variable() == i:
            if not placed:
                new_polys.append(pivot)
                placed = True
        else:
            new_polys.append(p)
    new_constants = list(system.constants)
    for r in rest:
        if r.is_constant:
            if r not in new_constants:
                new_constants.append(r)
        elif r not in new_polys:
            new_polys.append(r)
    return LeveledSystem(
        names=system.names,
        polys=tuple(new_polys),
        constants=tuple(new_constants),
        field=system.field,
    )


def successive_reduction(
    system: LeveledSystem, to_level: int, strategy: ReductionMap | None = None
) -> LeveledSystem:
    """Apply reduction steps from the top level down to ``to_level``.

    Empty strata are skipped and singleton strata pass through unchanged;
    ``to_level = n+1`` is the identity.  The default strategy is the
    iterated pseudo-remainder chain.
    """
    if strategy is None:
        strategy = prem_chain_map()
    current = system
    for i in range(system.n, to_level - 1, -1):
        if len(current.stratum(i)) > 1:
            current = reduce_level(current, i, strategy)
    return current


def reduction_stages(
    system: LeveledSystem, strategy: ReductionMap | None = None
) -> list[tuple[int, LeveledSystem]]:
    """All successive-reduction snapshots ``(i, state after reducing to i)``.

    Stage ``i`` equals ``successive_reduction(system, i, strategy)``; the
    list runs from ``i = n`` down to ``i = 1``.
    """
    if strategy is None:
        strategy = prem_chain_map()
    stages = []
    current = system
    for i in range(system.n, 0, -1):
        if len(current.stratum(i)) > 1:
            current = reduce_level(current, i, strategy)
        stages.append((i, current))
    return stages
