"""Finite groups given by Cayley tables, and homomorphisms out of presentations.

Elements are addressed by their index in ``FiniteGroup.labels``; labels are
only used for input and output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .groupoid import Presentation, Word, generator_name
from .space import Relation

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 64
SAMPLED_TRIPLES = 10_000


class RelatorViolation(ValueError):
    """A relator does not evaluate to the identity under the proposed images."""

    def __init__(self, relator: Word, value: int, message: str):
        super().__init__(message)
        self.relator = relator
        self.value = value


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = field(init=False)
    inverses: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise ValueError("a group has at least one element")
        if len(set(self.labels)) != n:
            raise ValueError("duplicate element labels")
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"composition table must be {n}x{n}")
        if any(not 0 <= v < n for row in table for v in row):
            raise ValueError("composition table refers to unknown elements")
        object.__setattr__(self, "table", table)
        ident = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
        if not ident:
            raise ValueError("no identity element")
        e = ident[0]
        object.__setattr__(self, "identity", e)
        inv = []
        for x in range(n):
            cands = [y for y in range(n) if table[x][y] == e == table[y][x]]
            if not cands:
                raise ValueError(f"element {self.labels[x]!r} has no inverse")
            inv.append(cands[0])
        object.__setattr__(self, "inverses", tuple(inv))
        bad = self._associativity_failure()
        if bad is not None:
            x, y, z = (self.labels[i] for i in bad)
            raise ValueError(f"composition is not associative: ({x}{y}){z} != {x}({y}{z})")

    def _associativity_failure(self) -> tuple[int, int, int] | None:
        n = len(self)
        t = self.table
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
            triples: Iterable[tuple[int, int, int]] = product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(SAMPLED_TRIPLES))
        for x, y, z in triples:
            if t[t[x][y]][z] != t[x][t[y][z]]:
                return x, y, z
        return None

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={len(self)})"

    def element(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown group element {label!r}") from None

    def check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < len(self):
            raise ValueError(f"unknown group element {x!r}")
        return x

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def product(self, xs: Iterable[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def noncommuting_pair(self) -> tuple[int, int] | None:
        """A witness ``(x, y)`` with ``xy != yx``, or None for abelian groups."""
        for x in range(len(self)):
            for y in range(x + 1, len(self)):
                if self.table[x][y] != self.table[y][x]:
                    return x, y
        return None

    def is_abelian(self) -> bool:
        return self.noncommuting_pair() is None


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup(tuple(str(k) for k in range(n)),
                       tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def from_table(labels: Sequence[str], table: Sequence[Sequence[str]]) -> FiniteGroup:
    """Group from a table of labels; ``table[i][j]`` is ``labels[i] * labels[j]``."""
    labels = tuple(labels)
    lookup = {x: i for i, x in enumerate(labels)}
    rows = []
    for row in table:
        try:
            rows.append(tuple(lookup[v] for v in row))
        except KeyError as err:
            raise ValueError(f"table entry {err.args[0]!r} is not a listed element") from None
    return FiniteGroup(labels, tuple(rows))


def _elements(G: FiniteGroup, S: Iterable[int]) -> set[int]:
    return {G.check(x) for x in S}


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> frozenset[int]:
    gens = _elements(G, S)
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (G.mul(x, g), G.mul(x, G.inv(g))):
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return frozenset(seen)


def is_subgroup(G: FiniteGroup, H: Iterable[int]) -> bool:
    H = _elements(G, H)
    return (G.identity in H
            and all(G.mul(x, y) in H for x in H for y in H)
            and all(G.inv(x) in H for x in H))


def left_cosets(G: FiniteGroup, H: Iterable[int]) -> list[frozenset[int]]:
    """Cosets ``gH`` in order of their least element."""
    H = frozenset(_elements(G, H))
    if not is_subgroup(G, H):
        raise ValueError("not a subgroup")
    cosets: list[frozenset[int]] = []
    covered: set[int] = set()
    for g in G:
        if g not in covered:
            c = frozenset(G.mul(g, h) for h in H)
            cosets.append(c)
            covered |= c
    return cosets


def coset_count(G: FiniteGroup, H: Iterable[int]) -> int:
    H = frozenset(_elements(G, H))
    if not is_subgroup(G, H):
        raise ValueError("not a subgroup")
    return len(G) // len(H)


def coset_representatives(G: FiniteGroup, H: Iterable[int]) -> list[int]:
    return [min(c) for c in left_cosets(G, H)]


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism from a presented group into a finite group.

    ``images[k]`` is the image of generator ``k + 1``.
    """

    domain: Presentation
    codomain: FiniteGroup
    images: tuple[int, ...]

    def evaluate(self, word: Sequence[int]) -> int:
        G = self.codomain
        out = G.identity
        for k in word:
            g = self.images[abs(k) - 1]
            out = G.mul(out, g if k > 0 else G.inv(g))
        return out

    def image(self) -> frozenset[int]:
        return subgroup_generated(self.codomain, self.images)

    def is_trivial(self) -> bool:
        return all(g == self.codomain.identity for g in self.images)

    def is_onto(self) -> bool:
        return len(self.image()) == len(self.codomain)


def hom_from_presentation(P: Presentation, G: FiniteGroup,
                          images: Mapping[Relation | str | int, int]) -> GroupHom:
    """Validate generator images against every relator.

    Keys may be generator relations ``(x, y)``, names like ``"g[x<y]"``, or
    1-based generator numbers.
    """
    slots: list[int | None] = [None] * len(P.generators)
    position = {g: k for k, g in enumerate(P.generators)}
    position.update({generator_name(g): k for k, g in enumerate(P.generators)})
    for key, value in images.items():
        if isinstance(key, int) and not isinstance(key, bool):
            if not 1 <= key <= len(P.generators):
                raise ValueError(f"no generator number {key}")
            k = key - 1
        elif key in position:
            k = position[key]
        else:
            raise ValueError(f"{key!r} is not a generator of the presentation")
        slots[k] = G.check(value)
    missing = [generator_name(P.generators[k]) for k, v in enumerate(slots) if v is None]
    if missing:
        raise ValueError(f"no image given for generators: {', '.join(missing)}")
    h = GroupHom(P, G, tuple(slots))  # type: ignore[arg-type]
    for r in P.relators:
        v = h.evaluate(r)
        if v != G.identity:
            raise RelatorViolation(
                r, v, f"relator {P.format_word(r)} evaluates to {G.labels[v]}, not the identity {G.labels[G.identity]}")
    return h
