"""Alpha-cut partitions of a fuzzy equivalence relation and the dendrogram
they induce."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import HierarchyError
from .relation import FuzzyRelation, fmt2

LEVEL_TOL = 1e-9


def _check_alpha(alpha):
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of point indices covering 0..n-1, in canonical order.

    Canonical order: members ascending, blocks by their smallest member.
    """

    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        members = [i for b in blocks for i in b]
        if any(not b for b in self.blocks) or sorted(members) != list(range(len(self.labels))):
            raise ValueError("blocks must be nonempty, disjoint and cover every point")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self):
        return len(self.blocks)

    def label_blocks(self) -> list[list[str]]:
        return [[self.labels[i] for i in b] for b in self.blocks]

    def as_sets(self) -> set[frozenset[str]]:
        return {frozenset(b) for b in self.label_blocks()}

    def refines(self, other: "Partition") -> bool:
        """True when every block here lies inside a block of ``other``."""
        owner = {i: j for j, b in enumerate(other.blocks) for i in b}
        return all(len({owner[i] for i in b}) == 1 for b in self.blocks)

    def to_text(self) -> str:
        return ", ".join("{" + ",".join(b) + "}" for b in self.label_blocks())


def alpha_cut(rt: FuzzyRelation, alpha: float) -> Partition:
    """Group i and k together when RT[i, k] >= alpha.

    ``rt`` must be a fuzzy equivalence relation (a closure); otherwise the
    thresholded relation is not an equivalence and ValueError is raised.
    """
    _check_alpha(alpha)
    linked = rt.values >= alpha
    n = rt.size
    assigned = np.zeros(n, dtype=bool)
    blocks = []
    for i in range(n):
        if assigned[i]:
            continue
        members = np.flatnonzero(linked[i])
        if i not in members:
            members = np.union1d(members, [i])
        inside = linked[np.ix_(members, members)] | np.eye(len(members), dtype=bool)
        if assigned[members].any() or not inside.all():
            raise ValueError("alpha-cut is not an equivalence; pass a transitive closure")
        assigned[members] = True
        blocks.append(tuple(int(m) for m in members))
    return Partition(tuple(blocks), rt.labels)


def connected_components_oracle(r: FuzzyRelation, alpha: float) -> Partition:
    """Connected components of the graph with an edge wherever R[i, k] >= alpha.

    Works on the original (pre-closure) relation; breadth-first search.
    """
    _check_alpha(alpha)
    n = r.size
    w = r.values.tolist()
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        comp, todo = [start], deque([start])
        while todo:
            u = todo.popleft()
            for v in range(n):
                if not seen[v] and w[u][v] >= alpha:
                    seen[v] = True
                    comp.append(v)
                    todo.append(v)
        blocks.append(tuple(comp))
    return Partition(tuple(blocks), r.labels)


@dataclass(frozen=True)
class ScheduleRow:
    lower: float
    upper: float
    lower_open: bool
    partition: Partition

    def interval_text(self) -> str:
        left = "(" if self.lower_open else "["
        return f"{left}{fmt2(self.lower)}, {fmt2(self.upper)}]"


@dataclass(frozen=True)
class AlphaCutSchedule:
    rows: tuple[ScheduleRow, ...]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    @property
    def labels(self) -> tuple[str, ...]:
        return self.rows[0].partition.labels

    def partitions(self) -> list[Partition]:
        return [row.partition for row in self.rows]

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "lower": row.lower,
                    "upper": row.upper,
                    "lower_open": row.lower_open,
                    "blocks": row.partition.label_blocks(),
                }
                for row in self.rows
            ]
        )

    def to_text(self) -> str:
        lines = ["Alpha cuts\tMembers"]
        lines += [f"{row.interval_text()}\t{row.partition.to_text()}" for row in self.rows]
        return "\n".join(lines) + "\n"


def partition_schedule(rt: FuzzyRelation) -> AlphaCutSchedule:
    """One row per distinct value of the closure, coarsest first.

    The row for level v_k covers the interval (v_{k-1}, v_k] (the first row
    starts at a closed 0) and holds the alpha-cut taken at v_k.
    """
    levels = rt.distinct_values(LEVEL_TOL)
    rows = []
    lower = 0.0
    for k, level in enumerate(levels):
        rows.append(ScheduleRow(lower, level, k > 0, alpha_cut(rt, level)))
        lower = level
    return AlphaCutSchedule(tuple(rows))


@dataclass(frozen=True)
class Leaf:
    index: int
    label: str
    height: float = 1.0

    def leaves(self) -> list[int]:
        return [self.index]


@dataclass(frozen=True)
class Node:
    height: float
    children: tuple["Tree", ...]

    def leaves(self) -> list[int]:
        return sorted(i for c in self.children for i in c.leaves())


Tree = Union[Leaf, Node]


@dataclass(frozen=True)
class Dendrogram:
    root: Tree
    labels: tuple[str, ...]

    def cut(self, alpha: float) -> Partition:
        """Blocks formed by subtrees whose merge height is >= alpha."""
        _check_alpha(alpha)
        blocks = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf) or node.height >= alpha:
                blocks.append(tuple(node.leaves()))
            else:
                stack.extend(node.children)
        return Partition(tuple(blocks), self.labels)

    def nodes(self) -> list[Node]:
        out, stack = [], [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Node):
                out.append(node)
                stack.extend(node.children)
        return out

    def to_dict(self, node: Tree | None = None) -> dict:
        node = self.root if node is None else node
        if isinstance(node, Leaf):
            return {"height": node.height, "leaf": node.label}
        return {"height": node.height, "children": [self.to_dict(c) for c in node.children]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        lines = []

        def emit(node, depth):
            pad = "  " * depth
            if isinstance(node, Leaf):
                lines.append(f"{pad}{node.label}")
            else:
                lines.append(f"{pad}+ {fmt2(node.height)}")
                for c in node.children:
                    emit(c, depth + 1)

        emit(self.root, 0)
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph dendrogram {", "  node [shape=box];"]
        counter = iter(range(10**9))

        def emit(node) -> str:
            name = f"n{next(counter)}"
            if isinstance(node, Leaf):
                lines.append(f'  {name} [label="{node.label}", shape=ellipse];')
            else:
                lines.append(f'  {name} [label="{fmt2(node.height)}"];')
                for c in node.children:
                    lines.append(f"  {name} -> {emit(c)};")
            return name

        emit(self.root)
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_dendrogram(schedule: AlphaCutSchedule) -> Dendrogram:
    """Turn a nested partition schedule into a merge tree.

    Walking from the finest row to the coarsest, every block that is the
    union of two or more finer blocks becomes a node at that row's level.
    Merges are not binarized: k blocks fusing at one level give a node with
    k children.
    """
    if not schedule.rows:
        raise ValueError("empty schedule")
    labels = schedule.labels
    finest = schedule.rows[-1]
    subtrees: dict[tuple[int, ...], Tree] = {}
    for block in finest.partition.blocks:
        leaves = tuple(Leaf(i, labels[i]) for i in block)
        subtrees[block] = leaves[0] if len(leaves) == 1 else Node(finest.upper, leaves)

    for row in reversed(schedule.rows[:-1]):
        owner = {i: b for b in row.partition.blocks for i in b}
        grouped: dict[tuple[int, ...], list[Tree]] = {b: [] for b in row.partition.blocks}
        for fine_block, tree in subtrees.items():
            parents = {owner[i] for i in fine_block}
            if len(parents) != 1:
                raise HierarchyError()
            grouped[parents.pop()].append(tree)
        subtrees = {}
        for block, kids in grouped.items():
            kids.sort(key=lambda t: t.leaves()[0])
            subtrees[block] = kids[0] if len(kids) == 1 else Node(row.upper, tuple(kids))

    roots = sorted(subtrees.values(), key=lambda t: t.leaves()[0])
    # a hand-built schedule may leave several blocks at its coarsest row;
    # everything is linked at alpha = 0, so join them there
    root = roots[0] if len(roots) == 1 else Node(0.0, tuple(roots))
    return Dendrogram(root, labels)
