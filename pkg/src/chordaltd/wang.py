"""Top-down triangular decomposition with full decomposition-tree capture.

The decomposition works on worklist entries ``(P, Q, i)``: ``P`` is the
polynomial set still to be triangularized (every stratum above ``i``
already has at most one member), ``Q`` collects inequation constraints
(initials assumed nonzero), and ``i`` is the level under work.  While
stratum ``i`` has more than one member the entry splits in two: the left
child keeps a minimal-degree pivot ``T`` and replaces the other stratum
members by their pseudo-remainders (recording ``ini(T)`` in ``Q``); the
right child covers the complementary case ``ini(T) = 0`` by replacing
``T`` with its initial and tail.  A right child is omitted when the
initial is a nonzero constant, since it cannot vanish.

Every entry becomes a tree node: splits create ``left``/``right`` children
at the split level, and moving on to the next level adds a ``left`` child
with identical content one level down, so leaves reach level 0 with their
final content.  Emitted systems come from leaves whose content contains no
nonzero constant; with early pruning, branches showing a nonzero constant
are cut (and recorded) as soon as it appears.

Right children wait in a FIFO queue, so finished systems appear in the
order the branches were spawned.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import Error
from .fields import GF, QQ
from .polynomials import Polynomial, initial_and_tail, pseudo_remainder
from .reduction import PivotRule, _ordered_unique
from .systems import PolySystem, parse_poly, render_poly


@dataclass(frozen=True)
class TriangularSystem:
    """Equations with strictly increasing leading variables, plus inequations."""

    equations: tuple[Polynomial, ...]
    inequations: tuple[Polynomial, ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        lvs = [p.leading_variable() for p in self.equations]
        if None in lvs:
            raise ValueError("triangular set must not contain constants")
        if any(a >= b for a, b in zip(lvs, lvs[1:])):
            raise ValueError("leading variables must strictly increase")

    def __repr__(self) -> str:
        eqs = ", ".join(render_poly(p, self.names) for p in self.equations)
        ineqs = ", ".join(render_poly(p, self.names) for p in self.inequations)
        return f"TriangularSystem([{eqs}] / [{ineqs}])"


class DecompNode:
    """One worklist entry ``(P, Q, i)`` of the decomposition."""

    __slots__ = ("id", "parent", "branch", "polys", "ineqs", "level",
                 "leaf", "pruned", "pivot")

    def __init__(self, id, parent, branch, polys, ineqs, level):
        self.id = id
        self.parent = parent
        self.branch = branch
        self.polys = tuple(polys)
        self.ineqs = tuple(ineqs)
        self.level = level
        self.leaf = False
        self.pruned = False
        self.pivot = None  # set on nodes that split


class DecompTree:
    """All nodes of one decomposition run plus the surviving systems."""

    def __init__(self, names: Sequence[str], field, pivot: str, early_prune: bool):
        self.names = tuple(names)
        self.field = field
        self.pivot_spec = pivot
        self.early_prune = early_prune
        self.nodes: list[DecompNode] = []
        self.systems: list[TriangularSystem] = []
        self.output_node_ids: list[int] = []

    @property
    def root(self) -> DecompNode:
        return self.nodes[0]

    def node(self, id: int) -> DecompNode:
        return self.nodes[id]

    def add_node(self, parent: DecompNode | None, branch: str, polys, ineqs,
                 level: int) -> DecompNode:
        node = DecompNode(len(self.nodes), None if parent is None else parent.id,
                          branch, polys, ineqs, level)
        for j in range(level + 1, len(self.names) + 1):
            count = sum(1 for p in node.polys if p.leading_variable() == j)
            assert count <= 1, f"node {node.id}: stratum {j} not yet reduced"
        self.nodes.append(node)
        return node

    def to_json_dict(self) -> dict:
        field = "q" if self.field == QQ else f"p:{self.field.p}"
        return {
            "vars": list(self.names),
            "nodes": [
                {
                    "id": node.id,
                    "parent": node.parent,
                    "branch": node.branch,
                    "level": node.level,
                    "P": [render_poly(p, self.names) for p in node.polys],
                    "Q": [render_poly(p, self.names) for p in node.ineqs],
                    "leaf": node.leaf,
                }
                for node in self.nodes
            ],
            "systems": [
                {
                    "T": [render_poly(p, self.names) for p in sys.equations],
                    "U": [render_poly(p, self.names) for p in sys.inequations],
                }
                for sys in self.systems
            ],
            "meta": {
                "field": field,
                "pivot": self.pivot_spec,
                "early_prune": self.early_prune,
            },
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DecompTree":
        meta = doc.get("meta", {})
        spec = meta.get("field", "q")
        field = QQ if spec == "q" else GF(int(spec.split(":", 1)[1]))
        tree = cls(doc["vars"], field, meta.get("pivot", "first"),
                   meta.get("early_prune", True))
        names = tree.names
        for entry in doc["nodes"]:
            node = DecompNode(
                entry["id"], entry["parent"], entry["branch"],
                [parse_poly(s, names, field) for s in entry["P"]],
                [parse_poly(s, names, field) for s in entry["Q"]],
                entry["level"],
            )
            node.leaf = entry["leaf"]
            tree.nodes.append(node)
        for entry in doc["systems"]:
            tree.systems.append(TriangularSystem(
                tuple(parse_poly(s, names, field) for s in entry["T"]),
                tuple(parse_poly(s, names, field) for s in entry["U"]),
                names=names,
            ))
        return tree

    @classmethod
    def load(cls, path: str) -> "DecompTree":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_json_dict(json.load(handle))

    def __repr__(self) -> str:
        return (f"DecompTree({len(self.nodes)} nodes, "
                f"{len(self.systems)} systems)")


@dataclass(frozen=True)
class Split:
    pivot: Polynomial
    left_polys: tuple[Polynomial, ...]
    left_ineqs: tuple[Polynomial, ...]
    right_polys: tuple[Polynomial, ...] | None
    remainders: tuple[Polynomial, ...]


def _nonzero_constant(polys) -> Polynomial | None:
    for p in polys:
        if p.is_constant and not p.is_zero:
            return p
    return None


def _split(polys: Sequence[Polynomial], ineqs: Sequence[Polynomial], level: int,
           rule: PivotRule) -> Split:
    stratum = [p for p in polys if p.leading_variable() == level]
    if len(stratum) < 2:
        raise Error(f"cannot split: stratum {level} has {len(stratum)} member(s)")
    pivot = rule.select(stratum, polys, level)
    init, tail, _ = initial_and_tail(pivot)

    remainders = []
    for p in stratum:
        if p == pivot:
            continue
        r, _, _ = pseudo_remainder(p, pivot, level)
        if not r.is_zero:
            remainders.append(r)
    left_polys = _ordered_unique(
        [p for p in polys if p.leading_variable() != level] + [pivot] + remainders
    )

    if init.is_constant:
        right_polys = None
        left_ineqs = tuple(ineqs)
    else:
        right_polys = _ordered_unique(
            [p for p in polys if p != pivot]
            + [q for q in (init, tail) if not q.is_zero]
        )
        left_ineqs = tuple(ineqs) if init in ineqs else tuple(ineqs) + (init,)

    _check_split(polys, level, pivot, remainders, left_polys, right_polys, init, tail)
    return Split(pivot, left_polys, left_ineqs, right_polys, tuple(remainders))


def _check_split(polys, level, pivot, remainders, left_polys, right_polys,
                 init, tail) -> None:
    """Verify both children against their defining set equations."""
    base = set(polys)
    stratum = {p for p in polys if p.leading_variable() == level}
    want_left = (base - stratum) | {pivot} | set(remainders)
    assert set(left_polys) == want_left, "left child deviates from its construction"
    if right_polys is not None:
        want_right = (base - {pivot}) | {q for q in (init, tail) if not q.is_zero}
        assert set(right_polys) == want_right, "right child deviates from its construction"


def split_node(node: DecompNode, tie_break: str | PivotRule = "first"
               ) -> tuple[DecompNode, DecompNode | None, Polynomial]:
    """Split one node at its own level, returning detached child nodes.

    Requires stratum ``node.level`` to have at least two members.  The
    children are not attached to any tree; ids are unassigned.
    """
    rule = tie_break if isinstance(tie_break, PivotRule) else PivotRule.parse(tie_break)
    split = _split(node.polys, node.ineqs, node.level, rule)
    left = DecompNode(-1, node.id, "left", split.left_polys, split.left_ineqs,
                      node.level)
    right = None
    if split.right_polys is not None:
        right = DecompNode(-1, node.id, "right", split.right_polys, node.ineqs,
                           node.level)
    return left, right, split.pivot


def decompose(system: PolySystem, pivot: str = "first",
              early_prune: bool = True) -> DecompTree:
    """Run the decomposition and record the full tree.

    ``pivot`` selects the tie-break rule for minimal-degree pivots (see
    ``PivotRule``).  With ``early_prune`` (default) a branch is cut the
    moment a nonzero constant appears in it; without it, inconsistent
    branches run to level 0 and are filtered from the output there.
    """
    rule = PivotRule.parse(pivot)
    tree = DecompTree(system.vars, system.field, pivot, early_prune)
    root_polys = _ordered_unique(p for p in system.polys if not p.is_zero)
    root = tree.add_node(None, "root", root_polys, (), len(system.vars))
    queue: deque[DecompNode] = deque([root])
    while queue:
        _process(tree, queue.popleft(), queue, rule, early_prune)
    return tree


def _process(tree: DecompTree, node: DecompNode, queue: deque, rule: PivotRule,
             early_prune: bool) -> None:
    last_split_degree: int | None = None
    last_split_level: int | None = None
    while True:
        level = node.level
        constant = _nonzero_constant(node.polys)
        if constant is not None and early_prune:
            node.leaf = True
            node.pruned = True
            return
        if level == 0:
            node.leaf = True
            if constant is None:
                ordered = sorted(node.polys, key=lambda p: p.leading_variable())
                tree.systems.append(TriangularSystem(
                    tuple(ordered), node.ineqs, names=tree.names))
                tree.output_node_ids.append(node.id)
            else:
                node.pruned = True
            return
        stratum = [p for p in node.polys if p.leading_variable() == level]
        if len(stratum) > 1:
            split = _split(node.polys, node.ineqs, level, rule)
            node.pivot = split.pivot
            # progress guard: repeated splits at one level must lower the
            # pivot degree, which bounds the left spine
            degree = split.pivot.degree(level)
            if last_split_level == level:
                assert degree < last_split_degree, "no progress at level %d" % level
            last_split_level, last_split_degree = level, degree
            if split.right_polys is not None:
                right = tree.add_node(node, "right", split.right_polys,
                                      node.ineqs, level)
                queue.append(right)
            node = tree.add_node(node, "left", split.left_polys,
                                 split.left_ineqs, level)
        else:
            node = tree.add_node(node, "left", node.polys, node.ineqs, level - 1)


def emitted_systems(tree: DecompTree) -> list[TriangularSystem]:
    """Surviving triangular systems in emission order."""
    return list(tree.systems)
