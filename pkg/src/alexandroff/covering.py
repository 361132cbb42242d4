"""Regular coverings of finite spaces built as comma spaces over group-valued functors.

A functor ``F: X -> G`` assigns a group element to every relation of ``X``
with ``F(x<=z) = F(y<=z) * F(x<=y)``.  The comma space ``F ↓ *`` has points
``(x, g)`` and order

    (x, g) <= (x', g')  iff  x <= x' and g = g' * F(x<=x'),

and its first projection is a regular covering whose deck group is ``G``
acting by left multiplication.

The identification of ``p_*(pi_1)`` with ``ker F_*`` is not checked directly
(that would need a word-problem solver).  What is checked: the covering
conditions at every point, sheet counts, ``pi_0`` against the coset count of
the image, freeness and transitivity of the deck action on fibres, and
homology of the cover components.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .group import FiniteGroup, GroupHom, coset_count
from .groupoid import (
    PathWord,
    SpanningTree,
    Step,
    basepoint_transport,
    extend_forest_to_tree,
    generator_loop,
    generators,
    reduce_word,
    tree_path,
)
from .space import (
    FiniteSpace,
    Point,
    PointMap,
    Relation,
    SubSpace,
    comparabilities,
    connected_components,
    is_continuous,
    is_order_isomorphism,
)


@dataclass(frozen=True, eq=False)
class GroupFunctor:
    space: FiniteSpace
    group: FiniteGroup
    values: Mapping[Relation, int]
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        values = dict(self.values)
        comps = comparabilities(self.space)
        missing = [e for e in comps if e not in values]
        if missing:
            raise ValueError(f"functor has no value on {missing}")
        extra = [e for e in values if e not in set(comps)]
        if extra:
            raise ValueError(f"functor assigns values to non-relations {extra}")
        for v in values.values():
            self.group.check(v)
        object.__setattr__(self, "values", values)
        if validate:
            bad = functoriality_violations(self)
            if bad:
                x, y, z = bad[0]
                raise ValueError(f"not a functor: F({x}<={z}) != F({y}<={z}) * F({x}<={y})")

    def __call__(self, x: Point, y: Point) -> int:
        if x == y:
            return self.group.identity
        try:
            return self.values[(x, y)]
        except KeyError:
            raise ValueError(f"{x} <= {y} is not a relation") from None

    def step_value(self, s: Step) -> int:
        v = self(*s.relation)
        return self.group.inv(v) if s.inverse else v

    def evaluate(self, path: PathWord) -> int:
        """Image of a path in the localization; later steps multiply on the left."""
        G = self.group
        out = G.identity
        for s in path.steps:
            out = G.mul(self.step_value(s), out)
        return out

    def is_constant_identity(self) -> bool:
        e = self.group.identity
        return all(v == e for v in self.values.values())


def functoriality_violations(F: GroupFunctor) -> list[tuple[Point, Point, Point]]:
    """Composable triples ``x<=y<=z`` (with ``x != y != z``) where functoriality fails."""
    X, G = F.space, F.group
    above: dict[Point, list[Point]] = {x: [] for x in X.points}
    for x, y in comparabilities(X):
        above[x].append(y)
    bad = []
    for x, y in comparabilities(X):
        for z in above[y]:
            if F(x, z) != G.mul(F(y, z), F(x, y)):
                bad.append((x, y, z))
    return bad


def constant_functor(X: FiniteSpace, G: FiniteGroup) -> GroupFunctor:
    return GroupFunctor(X, G, {e: G.identity for e in comparabilities(X)})


def functor_from_tree_hom(T: SpanningTree, h: GroupHom) -> GroupFunctor:
    """Tree edges go to the identity, every other relation to the image of its generator."""
    gens = generators(T)
    if list(h.domain.generators) != gens:
        raise ValueError("homomorphism was not built from a presentation for this tree")
    G = h.codomain
    values = {e: G.identity for e in T.edges}
    values.update({e: h.images[k] for k, e in enumerate(gens)})
    try:
        return GroupFunctor(T.space, G, values)
    except ValueError as err:
        raise AssertionError(f"validated homomorphism produced a non-functor: {err}") from err


def _subspace(X: FiniteSpace, A: SubSpace | Iterable[Point]) -> SubSpace:
    return A if isinstance(A, SubSpace) else X.subspace(A)


def is_trivial_on(F: GroupFunctor, A: SubSpace | Iterable[Point]) -> bool:
    A = _subspace(F.space, A)
    e = F.group.identity
    return all(v == e for (x, y), v in F.values.items() if x in A and y in A)


def _restricted_tree(T: SpanningTree, component: list[Point]) -> SpanningTree:
    sub = T.space.induced(component)
    inside = frozenset(e for e in T.edges if e[0] in sub and e[1] in sub)
    try:
        return SpanningTree(sub, inside)
    except ValueError as err:
        raise ValueError(f"tree does not restrict to a maximal tree of component {component}: {err}") from None


def triviality_criterion(T: SpanningTree, h: GroupHom, A: SubSpace | Iterable[Point]) -> bool:
    """Decide triviality of the tree functor on ``A`` through loops of ``A``.

    For one basepoint ``a`` per component of ``A``, every generator loop of
    the component is carried into the ambient space, moved to the
    presentation's basepoint along the tree, and evaluated through ``h``.
    Requires the tree to restrict to a maximal tree of each component.
    """
    X = T.space
    A = _subspace(X, A)
    x0 = h.domain.basepoint
    G = h.codomain
    trees = [_restricted_tree(T, comp) for comp in connected_components(A.space)]
    for TA in trees:
        a = TA.space.points[0]
        for e in generators(TA):
            loop = basepoint_transport(T, a, x0, generator_loop(TA, a, e))
            if h.evaluate(reduce_word(T, loop)) != G.identity:
                return False
    return True


def regauge(F: GroupFunctor, T: SpanningTree, x0: Point) -> GroupFunctor:
    """The tree functor for ``T`` of the homomorphism that ``F`` induces at ``x0``.

    With ``k(x) = F(tree path x0 -> x)`` the new value on ``x<=y`` is
    ``k(y)^-1 * F(x<=y) * k(x)``; tree edges go to the identity.
    """
    if T.space != F.space:
        raise ValueError("tree belongs to a different space")
    if len(connected_components(F.space)) != 1:
        raise ValueError("base space must be connected")
    G = F.group
    k = {x: F.evaluate(tree_path(T, x0, x)) for x in F.space.points}
    values = {(x, y): G.mul(G.inv(k[y]), G.mul(v, k[x])) for (x, y), v in F.values.items()}
    return GroupFunctor(F.space, G, values)


def trivializing_tree(F: GroupFunctor, A: SubSpace | Iterable[Point], x0: Point | None = None) -> SpanningTree | None:
    """A maximal tree whose tree functor is trivial on ``A``, or None if none exists.

    Extends a maximal tree of each component of ``A``.  If any tree works then
    every loop in ``A`` evaluates to the identity, and then this one works too,
    so a None answer is exact.
    """
    X = F.space
    A = _subspace(X, A)
    x0 = X.points[0] if x0 is None else x0
    forest: list[Relation] = []
    for comp in connected_components(A.space):
        forest.extend(extend_forest_to_tree(X.induced(comp)).edges)
    T = extend_forest_to_tree(X, forest)
    return T if is_trivial_on(regauge(F, T, x0), A) else None


def cover_label(x: Point, g: str) -> str:
    return f"({x},{g})"


@dataclass(frozen=True, eq=False)
class Covering:
    total: FiniteSpace
    base: FiniteSpace
    functor: GroupFunctor
    projection: PointMap
    coordinates: Mapping[Point, tuple[Point, int]] = field(repr=False)

    @property
    def group(self) -> FiniteGroup:
        return self.functor.group

    def point(self, x: Point, g: int) -> Point:
        return cover_label(x, self.group.labels[g])

    def fiber(self, x: Point) -> list[Point]:
        return [self.point(x, g) for g in self.group]

    def lift(self, x0: Point) -> Point:
        """The basepoint ``(x0, e)``."""
        return self.point(x0, self.group.identity)


def comma_cover(F: GroupFunctor) -> Covering:
    X, G = F.space, F.group
    coords = [(x, g) for x in X.points for g in G]
    labels = tuple(cover_label(x, G.labels[g]) for x, g in coords)
    n = len(coords)
    m = np.zeros((n, n), dtype=bool)
    for i, (x, g) in enumerate(coords):
        for j, (y, h) in enumerate(coords):
            if X.leq(x, y) and g == G.mul(h, F(x, y)):
                m[i, j] = True
    mi = m.astype(np.int64)
    if ((mi @ mi > 0) & ~m).any():
        raise ValueError("comma order is not transitive; the functor is corrupted")
    total = FiniteSpace(labels, m)
    coordinates = dict(zip(labels, coords))
    p = PointMap(total, X, {lab: x for lab, (x, _) in coordinates.items()})
    return Covering(total, X, F, p, coordinates)


@dataclass
class CoveringReport:
    """Violations of the three local covering conditions, keyed by base point."""

    base_points: list[Point]
    union: list[str] = field(default_factory=list)
    disjoint: list[str] = field(default_factory=list)
    homeomorphic: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.union or self.disjoint or self.homeomorphic)

    def lines(self) -> list[str]:
        out = []
        for name, problems in (("(1) preimage is the union of the sheets", self.union),
                               ("(2) sheets are mutually disjoint", self.disjoint),
                               ("(3) each sheet maps homeomorphically", self.homeomorphic)):
            out.append(f"{name}: {'PASS' if not problems else 'FAIL'}")
            out.extend(f"  {p}" for p in problems)
        return out


def verify_covering(C: Covering) -> CoveringReport:
    E, X, F, G = C.total, C.base, C.functor, C.group
    report = CoveringReport(list(X.points))
    for x in X.points:
        Ux = X.down(x)
        preimage = frozenset(y for y in E.points if C.projection(y) in Ux)
        sheets = {g: E.down(C.point(x, g)) for g in G}
        union = frozenset().union(*sheets.values())
        if union != preimage:
            extra = sorted(preimage ^ union, key=E.index)
            report.union.append(f"x={x}: preimage and union of sheets differ at {extra}")
        for g in G:
            for h in G:
                if g < h and sheets[g] & sheets[h]:
                    common = sorted(sheets[g] & sheets[h], key=E.index)
                    report.disjoint.append(
                        f"x={x}: sheets {C.point(x, g)} and {C.point(x, h)} share {common}")
        Ux_space = X.induced(Ux)
        for g in G:
            sheet = sheets[g]
            name = C.point(x, g)
            if len(sheet) != len(Ux) or {C.projection(y) for y in sheet} != Ux:
                report.homeomorphic.append(f"{name}: projection is not a bijection onto U_{x}")
                continue
            phi = {y: C.point(y, G.mul(g, F(y, x))) for y in Ux}
            if set(phi.values()) != sheet or any(C.projection(phi[y]) != y for y in Ux):
                report.homeomorphic.append(f"{name}: x' -> (x', g F(x'<=x)) does not invert the projection")
                continue
            lifted = PointMap(Ux_space, E.induced(sheet), phi)
            if not is_order_isomorphism(lifted):
                report.homeomorphic.append(f"{name}: sheet is not order-isomorphic to U_{x}")
    return report


def deck_transformation(C: Covering, g: int) -> PointMap:
    """``(x, h) -> (x, g h)``."""
    G = C.group
    G.check(g)
    assignment = {lab: C.point(x, G.mul(g, h)) for lab, (x, h) in C.coordinates.items()}
    return PointMap(C.total, C.total, assignment)


def deck_action_is_regular(C: Covering) -> bool:
    """Deck maps are order automorphisms over the base, compose like ``G``, and act
    freely and transitively on every fibre."""
    G = C.group
    maps = {g: deck_transformation(C, g) for g in G}
    for g, d in maps.items():
        if not is_order_isomorphism(d):
            return False
        if any(C.projection(d(y)) != C.projection(y) for y in C.total.points):
            return False
        for h in G:
            composed = d.compose(maps[h])
            if composed.assignment != maps[G.mul(g, h)].assignment:
                return False
    for x in C.base.points:
        fib = C.fiber(x)
        for y in fib:
            orbit = [maps[g](y) for g in G]
            if sorted(orbit) != sorted(fib) or len(set(orbit)) != len(G):
                return False
    return True


def pi0_cover(C: Covering, h: GroupHom) -> int:
    """Number of components of the total space; equals the index of ``im h``."""
    if len(connected_components(C.base)) != 1:
        raise ValueError("base space must be connected")
    count = len(connected_components(C.total))
    expected = coset_count(C.group, h.image())
    if count != expected:
        raise AssertionError(f"total space has {count} components but [G : im] = {expected}")
    return count


def opposite_comma_iso(C: Covering) -> PointMap:
    """``(x, g) -> (x, g^-1)`` onto ``* ↓ F``, where ``(x,g) <= (x',g')`` iff
    ``x <= x'`` and ``g' = F(x<=x') g``."""
    X, F, G = C.base, C.functor, C.group
    coords = [(x, g) for x in X.points for g in G]
    labels = tuple(cover_label(x, G.labels[g]) for x, g in coords)
    n = len(coords)
    m = np.zeros((n, n), dtype=bool)
    for i, (x, g) in enumerate(coords):
        for j, (y, h) in enumerate(coords):
            if X.leq(x, y) and h == G.mul(F(x, y), g):
                m[i, j] = True
    opposite = FiniteSpace(labels, m)
    return PointMap(C.total, opposite,
                    {lab: cover_label(x, G.labels[G.inv(g)]) for lab, (x, g) in C.coordinates.items()})


def restriction_is_product(C: Covering, A: SubSpace | Iterable[Point]) -> bool:
    """Whether ``p^-1(A)`` is literally ``A x G`` with the product order.

    Computed twice, from the functor and from the total space, and the two
    answers must agree.
    """
    A = _subspace(C.base, A)
    by_functor = is_trivial_on(C.functor, A)
    E = C.total
    inside = [(lab, xg) for lab, xg in C.coordinates.items() if xg[0] in A]
    decoupled = all(
        E.leq(u, v) == (C.base.leq(x, y) and g == h)
        for u, (x, g) in inside
        for v, (y, h) in inside
    )
    if by_functor != decoupled:
        raise AssertionError("functor triviality and product decoupling disagree")
    return decoupled


def projection_is_continuous(C: Covering) -> bool:
    return is_continuous(C.projection)
