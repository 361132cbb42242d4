"""Finite Alexandroff spaces stored as finite preorders.

A point ``x`` lies below ``y`` (``leq(x, y)``) exactly when ``x`` belongs to
the minimal open set of ``y``.  Open sets are down-sets, closed sets are
up-sets, and continuous maps are the order-preserving ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

Point = str
Relation = tuple[Point, Point]


def _closure(matrix: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean matrix by repeated squaring."""
    m = matrix.copy()
    np.fill_diagonal(m, True)
    while True:
        nxt = (m.astype(np.int64) @ m.astype(np.int64)) > 0
        if np.array_equal(nxt, m):
            return m
        m = nxt


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """A finite preorder.

    ``points`` fixes a total order on the labels; every deterministic choice
    made downstream breaks ties by position in this tuple.  ``matrix[i, j]`` is
    true iff ``points[i] <= points[j]``.
    """

    points: tuple[Point, ...]
    matrix: np.ndarray
    _index: dict[Point, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        points = tuple(self.points)
        if not points:
            raise ValueError("a finite space needs at least one point")
        if len(set(points)) != len(points):
            dupes = sorted({p for p in points if points.count(p) > 1})
            raise ValueError(f"duplicate point labels: {dupes}")
        m = np.array(self.matrix, dtype=bool)
        n = len(points)
        if m.shape != (n, n):
            raise ValueError(f"relation matrix has shape {m.shape}, expected {(n, n)}")
        if not m.diagonal().all():
            raise ValueError("relation is not reflexive")
        mi = m.astype(np.int64)
        if ((mi @ mi > 0) & ~m).any():
            raise ValueError("relation is not transitive")
        m.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(points)})

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.points, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteSpace(points={list(self.points)}, relations={len(comparabilities(self))})"

    def index(self, x: Point) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ValueError(f"unknown point {x!r}") from None

    def leq(self, x: Point, y: Point) -> bool:
        return bool(self.matrix[self.index(x), self.index(y)])

    def equivalent(self, x: Point, y: Point) -> bool:
        return self.leq(x, y) and self.leq(y, x)

    def down(self, x: Point) -> frozenset[Point]:
        j = self.index(x)
        return frozenset(p for i, p in enumerate(self.points) if self.matrix[i, j])

    def up(self, x: Point) -> frozenset[Point]:
        i = self.index(x)
        return frozenset(p for j, p in enumerate(self.points) if self.matrix[i, j])

    @property
    def is_t0(self) -> bool:
        return not (self.matrix & self.matrix.T & ~np.eye(len(self), dtype=bool)).any()

    def sort(self, subset: Iterable[Point]) -> list[Point]:
        """Return ``subset`` in the space's point order."""
        return sorted(subset, key=self.index)

    def subspace(self, carrier: Iterable[Point]) -> "SubSpace":
        return SubSpace(self, frozenset(carrier))

    def induced(self, carrier: Iterable[Point]) -> "FiniteSpace":
        """The subspace topology on ``carrier``, as a space of its own."""
        chosen = set(carrier)
        for p in chosen:
            self.index(p)
        idx = [i for i, p in enumerate(self.points) if p in chosen]
        return FiniteSpace(tuple(self.points[i] for i in idx), self.matrix[np.ix_(idx, idx)])


@dataclass(frozen=True)
class PointMap:
    """A function between the point sets of two finite spaces."""

    source: FiniteSpace
    target: FiniteSpace
    assignment: Mapping[Point, Point]

    def __post_init__(self) -> None:
        missing = [x for x in self.source.points if x not in self.assignment]
        if missing:
            raise ValueError(f"map is not total; unassigned points: {missing}")
        for x in self.source.points:
            if self.assignment[x] not in self.target:
                raise ValueError(f"{x!r} is sent to {self.assignment[x]!r}, which is not a target point")

    def __call__(self, x: Point) -> Point:
        return self.assignment[x]

    def compose(self, inner: "PointMap") -> "PointMap":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        return PointMap(inner.source, self.target, {x: self(inner(x)) for x in inner.source.points})

    def is_bijective(self) -> bool:
        image = [self(x) for x in self.source.points]
        return len(set(image)) == len(image) == len(self.target)


@dataclass(frozen=True)
class SubSpace:
    """A non-empty subset of a space with the induced preorder."""

    parent: FiniteSpace
    carrier: frozenset[Point]

    def __post_init__(self) -> None:
        if not self.carrier:
            raise ValueError("subspace must be non-empty")
        unknown = [p for p in self.carrier if p not in self.parent]
        if unknown:
            raise ValueError(f"unknown points in subspace: {sorted(unknown)}")

    @property
    def space(self) -> FiniteSpace:
        return self.parent.induced(self.carrier)

    def __contains__(self, x: object) -> bool:
        return x in self.carrier

    def points(self) -> list[Point]:
        return self.parent.sort(self.carrier)

    def inclusion(self) -> PointMap:
        sub = self.space
        return PointMap(sub, self.parent, {x: x for x in sub.points})


def from_relations(points: Sequence[Point], pairs: Iterable[tuple[Point, Point]]) -> FiniteSpace:
    """Smallest preorder on ``points`` containing every pair ``(x, y)`` as ``x <= y``."""
    points = tuple(points)
    if len(set(points)) != len(points):
        dupes = sorted({p for p in points if points.count(p) > 1})
        raise ValueError(f"duplicate point labels: {dupes}")
    index = {p: i for i, p in enumerate(points)}
    m = np.zeros((len(points), len(points)), dtype=bool)
    for x, y in pairs:
        for p in (x, y):
            if p not in index:
                raise ValueError(f"unknown point {p!r} in relation {x} < {y}")
        m[index[x], index[y]] = True
    return FiniteSpace(points, _closure(m))


def minimal_open_set(X: FiniteSpace, x: Point) -> frozenset[Point]:
    """U_x, the down-set of ``x``."""
    return X.down(x)


def _check_subset(X: FiniteSpace, S: Iterable[Point]) -> frozenset[Point]:
    S = frozenset(S)
    for p in S:
        X.index(p)
    return S


def is_open(X: FiniteSpace, S: Iterable[Point]) -> bool:
    S = _check_subset(X, S)
    return all(X.down(x) <= S for x in S)


def is_closed(X: FiniteSpace, S: Iterable[Point]) -> bool:
    S = _check_subset(X, S)
    return all(X.up(x) <= S for x in S)


def is_continuous(f: PointMap) -> bool:
    X, Y = f.source, f.target
    for i, x in enumerate(X.points):
        for j, y in enumerate(X.points):
            if X.matrix[i, j] and not Y.leq(f(x), f(y)):
                return False
    return True


def is_order_isomorphism(f: PointMap) -> bool:
    """Bijective, continuous, with continuous inverse."""
    if not f.is_bijective():
        return False
    inverse = PointMap(f.target, f.source, {f(x): x for x in f.source.points})
    return is_continuous(f) and is_continuous(inverse)


class KolmogorovQuotient(NamedTuple):
    space: FiniteSpace
    quotient: PointMap
    section: PointMap


def kolmogorov_quotient(X: FiniteSpace) -> KolmogorovQuotient:
    """Identify points ``x``, ``y`` with ``x <= y <= x``.

    Each class is named after its first member in point order, and the
    section sends a class back to that member.
    """
    rep: dict[Point, Point] = {}
    reps: list[Point] = []
    for x in X.points:
        for r in reps:
            if X.equivalent(x, r):
                rep[x] = r
                break
        else:
            rep[x] = x
            reps.append(x)
    idx = [X.index(r) for r in reps]
    X0 = FiniteSpace(tuple(reps), X.matrix[np.ix_(idx, idx)])
    q = PointMap(X, X0, rep)
    s = PointMap(X0, X, {r: r for r in reps})
    return KolmogorovQuotient(X0, q, s)


def equivalence_classes(X: FiniteSpace) -> list[list[Point]]:
    """Classes of topologically indistinguishable points, in point order."""
    q = kolmogorov_quotient(X).quotient
    classes: dict[Point, list[Point]] = {}
    for x in X.points:
        classes.setdefault(q(x), []).append(x)
    return list(classes.values())


def connected_components(X: FiniteSpace) -> list[list[Point]]:
    """Components of the comparability graph, each sorted, ordered by first point."""
    n = len(X)
    sym = X.matrix | X.matrix.T
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in np.flatnonzero(sym[i]):
                if not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        parts.append([X.points[i] for i in sorted(comp)])
    return parts


def is_connected(X: FiniteSpace) -> bool:
    return len(connected_components(X)) == 1


def comparabilities(X: FiniteSpace) -> list[Relation]:
    """All non-reflexive relations ``(x, y)``, ``x <= y``, in lexicographic point order."""
    rows, cols = np.nonzero(X.matrix)
    return [(X.points[i], X.points[j]) for i, j in zip(rows.tolist(), cols.tolist()) if i != j]


def hasse_edges(X: FiniteSpace) -> list[Relation]:
    """Covering relations of the Kolmogorov quotient, named by class representatives."""
    X0 = kolmogorov_quotient(X).space
    m = X0.matrix
    strict = m & ~np.eye(len(X0), dtype=bool)
    si = strict.astype(np.int64)
    through = (si @ si) > 0
    rows, cols = np.nonzero(strict & ~through)
    return [(X0.points[i], X0.points[j]) for i, j in zip(rows.tolist(), cols.tolist())]


def heights(X: FiniteSpace) -> dict[Point, int]:
    """Length of the longest strict chain ending at each point (classes share a height)."""
    X0, q, _ = kolmogorov_quotient(X)
    height: dict[Point, int] = {}
    # a linear extension: fewer points below means earlier
    for r in sorted(X0.points, key=lambda p: (len(X0.down(p)), X0.index(p))):
        below = [height[b] for b in X0.down(r) if b != r]
        height[r] = 1 + max(below) if below else 0
    return {x: height[q(x)] for x in X.points}


def disjoint_union(*spaces: FiniteSpace, tags: Sequence[Hashable] | None = None) -> FiniteSpace:
    """Disjoint union; labels are prefixed by ``tag:`` when tags are given."""
    tags = list(tags) if tags is not None else [None] * len(spaces)
    points: list[Point] = []
    blocks = []
    for tag, S in zip(tags, spaces):
        points.extend(p if tag is None else f"{tag}:{p}" for p in S.points)
        blocks.append(S.matrix)
    n = len(points)
    m = np.zeros((n, n), dtype=bool)
    off = 0
    for b in blocks:
        k = b.shape[0]
        m[off:off + k, off:off + k] = b
        off += k
    return FiniteSpace(tuple(points), m)
