"""Paths over formal inverses, maximal trees, and presentations of pi_1.

A finite preorder is a thin category.  Its localization is generated by the
comparabilities and their formal inverses, modulo composition and
cancellation.  Collapsing a maximal tree turns the localization into a
group, which is presented here with one generator per non-tree
comparability and one relator per composable pair of comparabilities.

Generator words are tuples of non-zero integers: ``k`` stands for the
generator at position ``k - 1`` and ``-k`` for its inverse.  Words are written
in composition order, so the rightmost letter is the one traversed first.
This matches the convention ``F(x<=z) = F(y<=z) * F(x<=y)`` for functors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .complex import HomologyGroup, smith_normal_form
from .space import FiniteSpace, Point, Relation, comparabilities, connected_components

Word = tuple[int, ...]


class UnionFind:
    def __init__(self, items: Iterable[Point]):
        self.parent = {x: x for x in items}

    def find(self, x: Point) -> Point:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Point, y: Point) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


@dataclass(frozen=True)
class Step:
    """One comparability, traversed upward (``inverse=False``) or downward."""

    relation: Relation
    inverse: bool = False

    @property
    def source(self) -> Point:
        return self.relation[1] if self.inverse else self.relation[0]

    @property
    def target(self) -> Point:
        return self.relation[0] if self.inverse else self.relation[1]

    def reversed(self) -> "Step":
        return Step(self.relation, not self.inverse)

    def __str__(self) -> str:
        x, y = self.relation
        return f"{y}>={x}" if self.inverse else f"{x}<={y}"


@dataclass(frozen=True)
class PathWord:
    start: Point
    steps: tuple[Step, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        at = self.start
        for k, s in enumerate(self.steps):
            if s.relation[0] == s.relation[1]:
                raise ValueError(f"step {k} uses a reflexive relation {s.relation}")
            if s.source != at:
                raise ValueError(f"step {k} ({s}) does not start at {at!r}")
            at = s.target

    @property
    def end(self) -> Point:
        return self.steps[-1].target if self.steps else self.start

    @property
    def is_loop(self) -> bool:
        return self.start == self.end

    def then(self, other: "PathWord") -> "PathWord":
        """Traverse ``self`` and afterwards ``other``."""
        if other.start != self.end:
            raise ValueError(f"cannot follow a path ending at {self.end!r} by one starting at {other.start!r}")
        return PathWord(self.start, self.steps + other.steps)

    def inverse(self) -> "PathWord":
        return PathWord(self.end, tuple(s.reversed() for s in reversed(self.steps)))

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return "(" + ", ".join(str(s) for s in self.steps) + ")" if self.steps else f"()_{self.start}"


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """Generating edges of a maximal tree (a spanning forest when disconnected)."""

    space: FiniteSpace
    edges: frozenset[Relation]

    def __post_init__(self) -> None:
        edges = frozenset(self.edges)
        object.__setattr__(self, "edges", edges)
        allowed = set(comparabilities(self.space))
        bad = [e for e in edges if e not in allowed]
        if bad:
            raise ValueError(f"tree edges are not comparabilities: {sorted(bad)}")
        uf = UnionFind(self.space.points)
        for e in self.sorted_edges():
            if not uf.union(*e):
                raise ValueError(f"tree edges contain a cycle through {e[0]}<{e[1]}")
        expected = len(self.space) - len(connected_components(self.space))
        if len(edges) != expected:
            raise ValueError(f"edges do not span the space: {len(edges)} edges, {expected} needed")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return self.space == other.space and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.space, self.edges))

    def sorted_edges(self) -> list[Relation]:
        idx = self.space.index
        return sorted(self.edges, key=lambda e: (idx(e[0]), idx(e[1])))

    def __contains__(self, e: object) -> bool:
        return e in self.edges

    @cached_property
    def _adjacency(self) -> dict[Point, list[Step]]:
        adj: dict[Point, list[Step]] = {x: [] for x in self.space.points}
        for e in self.sorted_edges():
            adj[e[0]].append(Step(e))
            adj[e[1]].append(Step(e, inverse=True))
        return adj

    def neighbours(self, x: Point) -> list[Step]:
        return self._adjacency[x]


def _acyclic_forest(X: FiniteSpace, forest: Iterable[Relation]) -> tuple[list[Relation], UnionFind]:
    allowed = set(comparabilities(X))
    uf = UnionFind(X.points)
    chosen = []
    idx = X.index
    for e in sorted(set(forest), key=lambda e: (idx(e[0]), idx(e[1]))):
        if e not in allowed:
            raise ValueError(f"{e[0]}<{e[1]} is not a comparability of the space")
        if not uf.union(*e):
            raise ValueError(f"forest contains a cycle through {e[0]}<{e[1]}")
        chosen.append(e)
    return chosen, uf


def extend_forest_to_tree(X: FiniteSpace, forest: Iterable[Relation] = ()) -> SpanningTree:
    """Grow ``forest`` into a maximal tree of each component.

    Comparabilities are scanned in lexicographic point order and kept when
    they join two different partial trees.
    """
    chosen, uf = _acyclic_forest(X, forest)
    for e in comparabilities(X):
        if uf.union(*e):
            chosen.append(e)
    return SpanningTree(X, frozenset(chosen))


def tree_path(T: SpanningTree, a: Point, b: Point) -> PathWord:
    """The unique reduced path from ``a`` to ``b`` along tree edges."""
    T.space.index(a)
    T.space.index(b)
    came_from: dict[Point, Step | None] = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for s in T.neighbours(x):
            if s.target not in came_from:
                came_from[s.target] = s
                queue.append(s.target)
    if b not in came_from:
        raise ValueError(f"{a!r} and {b!r} lie in different components")
    steps = []
    x = b
    while came_from[x] is not None:
        s = came_from[x]
        steps.append(s)
        x = s.source
    return PathWord(a, tuple(reversed(steps)))


def generators(T: SpanningTree) -> list[Relation]:
    """Non-tree comparabilities, in canonical order."""
    return [e for e in comparabilities(T.space) if e not in T.edges]


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-k for k in reversed(word))


def reduce_word(T: SpanningTree, w: PathWord) -> Word:
    """Generator word of a path: tree steps vanish, then free reduction.

    Triangle relators are not applied, so two paths giving different words
    may still represent the same element.
    """
    number = {e: k + 1 for k, e in enumerate(generators(T))}
    X = T.space
    letters = []
    for s in w.steps:
        x, y = s.relation
        if x not in X or y not in X or not X.leq(x, y):
            raise ValueError(f"step {s} is not a relation of the space")
        if s.relation in T.edges:
            continue
        k = number[s.relation]
        letters.append(-k if s.inverse else k)
    return free_reduce(reversed(letters))


def basepoint_transport(T: SpanningTree, a: Point, x0: Point, w: PathWord) -> PathWord:
    """Conjugate a loop at ``a`` by tree paths into a loop at ``x0``."""
    if w.start != a or not w.is_loop:
        raise ValueError(f"expected a loop at {a!r}")
    return tree_path(T, x0, a).then(w).then(tree_path(T, a, x0))


def generator_loop(T: SpanningTree, x0: Point, e: Relation) -> PathWord:
    """Tree path to the source of ``e``, ``e`` itself, tree path back to ``x0``."""
    return tree_path(T, x0, e[0]).then(PathWord(e[0], (Step(e),))).then(tree_path(T, e[1], x0))


def generator_name(e: Relation) -> str:
    return f"g[{e[0]}<{e[1]}]"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Relation, ...]
    relators: tuple[Word, ...]
    basepoint: Point

    def __post_init__(self) -> None:
        n = len(self.generators)
        for r in self.relators:
            if any(k == 0 or abs(k) > n for k in r):
                raise ValueError(f"relator {r} mentions an unknown generator")

    def letter(self, k: int) -> str:
        name = generator_name(self.generators[abs(k) - 1])
        return name if k > 0 else name + "^-1"

    def format_word(self, word: Sequence[int]) -> str:
        return "*".join(self.letter(k) for k in word) if word else "1"

    def __str__(self) -> str:
        gens = ", ".join(generator_name(g) for g in self.generators)
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"<{gens} | {rels}>"

    def to_dict(self) -> dict:
        return {
            "basepoint": self.basepoint,
            "generators": [generator_name(g) for g in self.generators],
            "relators": [list(r) for r in self.relators],
        }


def pi1_presentation(X: FiniteSpace, x0: Point, T: SpanningTree) -> Presentation:
    """Presentation of the fundamental group at ``x0`` relative to the tree ``T``.

    One relator ``g(x<=z)^-1 g(y<=z) g(x<=y)`` per composable pair
    ``x<=y``, ``y<=z``; tree and reflexive arrows contribute nothing, and
    relators that freely reduce to the empty word are dropped.
    """
    X.index(x0)
    if T.space != X:
        raise ValueError("tree belongs to a different space")
    if len(connected_components(X)) != 1:
        raise ValueError("space is disconnected; pass a single component")
    gens = generators(T)
    number = {e: k + 1 for k, e in enumerate(gens)}

    def letter(x: Point, y: Point) -> list[int]:
        return [number[(x, y)]] if (x, y) in number else []

    above: dict[Point, list[Point]] = {x: [] for x in X.points}
    for x, y in comparabilities(X):
        above[x].append(y)
    relators = []
    for x, y in comparabilities(X):
        for z in above[y]:
            word = [-k for k in letter(x, z)] if x != z else []
            word += letter(y, z) + letter(x, y)
            reduced = free_reduce(word)
            if reduced:
                relators.append(reduced)
    return Presentation(tuple(gens), tuple(relators), x0)


def exponent_matrix(P: Presentation) -> list[list[int]]:
    """Generators by relators; entry = exponent sum of the generator."""
    m = [[0] * len(P.relators) for _ in P.generators]
    for j, r in enumerate(P.relators):
        for k in r:
            m[abs(k) - 1][j] += 1 if k > 0 else -1
    return m


def abelianization(P: Presentation) -> HomologyGroup:
    factors, rank = smith_normal_form(exponent_matrix(P)) if P.relators else ([], 0)
    return HomologyGroup(len(P.generators) - rank, tuple(d for d in factors if d > 1))
