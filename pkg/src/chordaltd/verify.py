"""Independent oracles: brute-force zero sets, theorem checkers, generators.

Zero sets over small prime fields are computed by exhaustive enumeration
with a local evaluator, so decomposition results can be checked against a
path that shares no code with the decomposition itself.  The theorem
checkers replay the subgraph statements (every reduction stage and every
tree node stays inside the input's associated graph) and report one named
check per fact, with a concrete witness on failure.

Checks made under an unmet premise (input not chordal, or the declared
ordering not a perfect elimination ordering) are still run but labelled
``observation:`` and excluded from the overall verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import FieldMismatchError, SearchSpaceTooLargeError
from .fields import GF, QQ, PrimeField
from .graphs import (
    VarGraph,
    associated_graph,
    check_peo,
    graph_of_polys,
    is_subgraph,
)
from .polynomials import Polynomial, monomial
from .reduction import (
    LeveledSystem,
    ReductionMap,
    prem_chain_map,
    reduction_stages,
)
from .systems import PolySystem, render_poly
from .wang import DecompTree

POINT_BUDGET = 10**6

OBSERVATION = "observation: "


@dataclass(frozen=True)
class ZeroSet:
    """Common zeros in F_p^n of a system, minus zeros of any inequation."""

    p: int
    n: int
    points: frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class CheckEntry:
    name: str
    passed: bool
    witness: str | None = None

    @property
    def observational(self) -> bool:
        return OBSERVATION in self.name


@dataclass
class CheckReport:
    """Named pass/fail results; failures always carry a witness."""

    checks: list[CheckEntry]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.observational)

    def to_json_dict(self) -> dict:
        return {
            "checks": [
                {"name": c.name, "pass": c.passed, "witness": c.witness}
                for c in self.checks
            ]
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            suffix = "" if c.witness is None else f"  [{c.witness}]"
            out.append(f"[{status}] {c.name}{suffix}")
        return out


def _entry(name: str, passed: bool, witness: str | None = None,
           observation: bool = False) -> CheckEntry:
    if observation:
        name = OBSERVATION + name
    if not passed and witness is None:
        witness = "unspecified"
    return CheckEntry(name, passed, None if passed else witness)


def _compiled(polys: Sequence[Polynomial]) -> list[list[tuple[int, tuple]]]:
    return [[(coef, mono) for mono, coef in p.terms.items()] for p in polys]


def _vanishes(compiled, point: tuple[int, ...], p: int) -> bool:
    total = 0
    for coef, mono in compiled:
        term = coef
        for v, e in mono:
            term = term * pow(point[v - 1], e, p) % p
        total = (total + term) % p
    return total == 0


def zero_set(system: PolySystem, ineqs: Sequence[Polynomial] = ()) -> ZeroSet:
    """Enumerate F_p^n and keep points where all equations vanish and no
    inequation does."""
    if not isinstance(system.field, PrimeField):
        raise FieldMismatchError("zero-set enumeration needs a prime field")
    p, n = system.field.p, system.n
    if p**n > POINT_BUDGET:
        raise SearchSpaceTooLargeError(f"{p}^{n} points exceed the budget")
    eqs = _compiled(system.polys)
    uneqs = _compiled(ineqs)
    points = []
    for point in product(range(p), repeat=n):
        if all(_vanishes(c, point, p) for c in eqs) and not any(
            _vanishes(c, point, p) for c in uneqs
        ):
            points.append(point)
    return ZeroSet(p, n, frozenset(points))


def check_decomposition(system: PolySystem, tree: DecompTree) -> CheckReport:
    """Zero-set equality between the input and the union of the outputs."""
    if tree.field != system.field:
        raise FieldMismatchError("tree and system live in different fields")
    lhs = zero_set(system).points
    rhs: set[tuple[int, ...]] = set()
    for sys in tree.systems:
        eq_system = PolySystem(system.vars, sys.equations, system.field)
        rhs |= zero_set(eq_system, sys.inequations).points
    diff = lhs ^ rhs
    witness = None
    if diff:
        pt = min(diff)
        side = "input only" if pt in lhs else "decomposition only"
        witness = f"point {pt} in {side}"
    return CheckReport([
        _entry(
            f"zero sets equal over F_{system.field.p} "
            f"({len(lhs)} vs {len(rhs)} points)",
            not diff,
            witness,
        )
    ])


def _premise(system: PolySystem) -> tuple[CheckEntry, VarGraph]:
    graph = associated_graph(system)
    order = sorted(graph.vertices)
    if len(graph.vertices) < 2:
        return _entry("premise: declared ordering is a PEO", True), graph
    result = check_peo(graph, order)
    witness = None
    if not result.ok:
        a, b = result.missing_edge
        witness = (f"x{result.failing_vertex} with earlier neighbours missing "
                   f"edge (x{a}, x{b})")
    return _entry("premise: declared ordering is a PEO", result.ok, witness), graph


def check_tree_chordality(system: PolySystem, tree: DecompTree) -> CheckReport:
    """Every node's P and every output's T stays inside the input graph."""
    premise, graph = _premise(system)
    observation = not premise.passed
    checks = [premise]
    for node in tree.nodes:
        sub = is_subgraph(graph_of_polys(node.polys), graph)
        checks.append(_entry(
            f"node {node.id}: graph inside input graph", sub.ok, sub.witness(),
            observation=observation,
        ))
    for idx, sys in enumerate(tree.systems):
        sub = is_subgraph(graph_of_polys(sys.equations), graph)
        checks.append(_entry(
            f"output {idx}: graph inside input graph", sub.ok, sub.witness(),
            observation=observation,
        ))
    return CheckReport(checks)


def check_reduction_chain(system: PolySystem,
                          strategy: ReductionMap | None = None) -> CheckReport:
    """Subgraph containment of every successive-reduction stage.

    Also records, as observations, whether each stage stays inside the
    previous one (that chain is not asserted and can genuinely fail), and
    asserts that a constant-free final stage is triangular.
    """
    premise, graph = _premise(system)
    observation = not premise.passed
    checks = [premise]
    if strategy is None:
        strategy = prem_chain_map()
    leveled = LeveledSystem.from_system(system)
    previous = leveled
    for i, stage in reduction_stages(leveled, strategy):
        sub = is_subgraph(graph_of_polys(stage.members()), graph)
        checks.append(_entry(
            f"stage {i}: graph inside input graph", sub.ok, sub.witness(),
            observation=observation,
        ))
        step = is_subgraph(graph_of_polys(stage.members()),
                           graph_of_polys(previous.members()))
        checks.append(_entry(
            f"stage {i}: graph inside previous stage", step.ok, step.witness(),
            observation=True,
        ))
        previous = stage
    final = previous
    if not final.constants:
        lvs = [p.leading_variable() for p in final.polys]
        checks.append(_entry(
            "full reduction is a triangular set",
            len(set(lvs)) == len(lvs),
            f"repeated leading variable among {sorted(lvs)}",
            observation=observation,
        ))
    return CheckReport(checks)


# -- random generation ---------------------------------------------------------


def _random_poly(rng: random.Random, target: Sequence[int], max_deg: int,
                 extra_terms: int, field) -> Polynomial:
    """Random polynomial with support exactly ``target``.

    The coefficient of the highest power of the top variable is kept to a
    single term (a constant or one lower variable), so pseudo-division
    cascades over these polynomials multiply by monomials and stay sparse;
    the subgraph statements under test do not depend on coefficient shape.
    """
    if isinstance(field, PrimeField):
        coef = lambda: rng.randrange(1, field.p)
    else:
        coef = lambda: rng.choice([c for c in range(-3, 4) if c])
    top = max(target)
    lower = [v for v in target if v != top]
    while True:
        items = []
        if lower and rng.random() < 0.5:
            # non-constant initials stay on degree-1 leading terms, which
            # keeps remainder degrees from compounding across levels
            e = 1
            items.append((monomial({top: e, rng.choice(lower): 1}), coef()))
        else:
            e = rng.randint(1, max_deg)
            items.append((monomial({top: e}), coef()))
        for v in lower:
            items.append((monomial({v: rng.randint(1, max_deg)}), coef()))
        for _ in range(rng.randint(0, extra_terms)):
            width = rng.randint(1, max(1, min(max_deg, len(target))))
            chosen = rng.sample(list(target), width)
            exps: dict[int, int] = {}
            for v in chosen:
                exps[v] = exps.get(v, 0) + 1
            if exps.get(top, 0) >= e:
                continue  # keep the initial a single term
            items.append((monomial(exps), coef()))
        if rng.random() < 0.5:
            items.append(((), coef()))
        poly = Polynomial.from_terms(field, items)
        if poly.support() == frozenset(target) and poly.degree(top) == e:
            return poly


def random_chordal_system(n: int, max_deg: int = 3, terms: int = 3,
                          field=None, seed: int = 0) -> PolySystem:
    """Seeded random system whose associated graph is chordal with
    ``x1 < ... < xn`` as a PEO.

    Random adjacency is filled so the index ordering eliminates perfectly,
    then each maximal clique receives one polynomial supported on the whole
    clique plus up to two more on subsets; the chordality of the result is
    re-verified before returning.
    """
    if n < 2:
        raise ValueError("need at least two variables")
    if field is None:
        field = QQ
    rng = random.Random(seed)
    density = rng.uniform(0.25, 0.75)
    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < density:
                adj[a].add(b)
                adj[b].add(a)
    # fill-in pass: make each vertex's earlier neighbourhood a clique
    for v in range(n, 0, -1):
        earlier = sorted(u for u in adj[v] if u < v)
        for i, a in enumerate(earlier):
            for b in earlier[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
    cliques = []
    for v in range(1, n + 1):
        clique = frozenset({v} | {u for u in adj[v] if u < v})
        cliques.append(clique)
    maximal = [c for c in cliques if not any(c < d for d in cliques)]
    maximal = sorted(set(maximal), key=sorted)

    polys = []
    for clique in maximal:
        members = sorted(clique)
        polys.append(_random_poly(rng, members, max_deg, terms, field))
        if rng.random() < 0.6:
            width = rng.randint(1, len(members))
            subset = sorted(rng.sample(members, width))
            polys.append(_random_poly(rng, subset, max_deg, terms, field))
    names = tuple(f"x{i}" for i in range(1, n + 1))
    system = PolySystem(names, tuple(polys), field)

    graph = associated_graph(system)
    if len(graph.vertices) >= 2:
        assert check_peo(graph, sorted(graph.vertices)).ok, "generator postcondition"
    return system


def brute_force_peo(graph: VarGraph) -> tuple[int, ...] | None:
    """Exhaustive search for a perfect elimination ordering.

    Backtracks over order prefixes; a vertex may extend a prefix only when
    its earlier neighbours (inside the prefix) form a clique, which is
    exactly the PEO condition and never changes once the vertex is placed.
    Returns the first ordering found, or None when the search exhausts.
    """
    vertices = sorted(graph.vertices)
    order: list[int] = []
    placed: set[int] = set()

    def extend() -> bool:
        if len(order) == len(vertices):
            return True
        for v in vertices:
            if v in placed:
                continue
            earlier = sorted(graph.neighbors(v) & placed)
            if all(graph.has_edge(a, b)
                   for i, a in enumerate(earlier) for b in earlier[i + 1:]):
                order.append(v)
                placed.add(v)
                if extend():
                    return True
                order.pop()
                placed.remove(v)
        return False

    return tuple(order) if extend() else None


def native_prime_runs(text_or_system, primes: Sequence[int] = (3, 5, 7),
                      pivot: str = "first", early_prune: bool = True
                      ) -> CheckReport:
    """Re-run the decomposition natively over each F_p and check zero sets.

    Running natively (rather than reducing a rational run mod p) keeps the
    method sound even when p divides an initial.
    """
    from .systems import parse_system, render_system
    from .wang import decompose

    if isinstance(text_or_system, PolySystem):
        text = render_system(text_or_system)
    else:
        text = text_or_system
    checks = []
    for p in primes:
        system = parse_system(text, GF(p))
        tree = decompose(system, pivot=pivot, early_prune=early_prune)
        checks.extend(check_decomposition(system, tree).checks)
    return CheckReport(checks)
