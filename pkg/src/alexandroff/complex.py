"""Order complexes and exact integral homology.

The order complex of a finite poset has the points as vertices and the
non-empty chains as simplices.  Its integral homology is computed through
Smith normal forms of the simplicial boundary matrices, with Python integers
throughout so that torsion is never lost to overflow.

Spaces that are not T0 are handled through their Kolmogorov quotient, which
is homotopy equivalent to the original space.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Sequence

from .space import FiniteSpace, Point, kolmogorov_quotient

DEFAULT_MAX_DIM = 3

Simplex = tuple[Point, ...]
Matrix = list[list[int]]


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[Point, ...]
    simplices: frozenset[Simplex]

    def __post_init__(self) -> None:
        order = {v: i for i, v in enumerate(self.vertices)}
        for s in self.simplices:
            if not s:
                raise ValueError("simplices must be non-empty")
            if any(v not in order for v in s):
                raise ValueError(f"simplex {s} uses an unknown vertex")
            if list(s) != sorted(s, key=order.__getitem__):
                raise ValueError(f"simplex {s} is not listed in vertex order")
        for v in self.vertices:
            if (v,) not in self.simplices:
                raise ValueError(f"vertex {v!r} is missing its 0-simplex")
        for s in self.simplices:
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    if face not in self.simplices:
                        raise ValueError(f"face {face} of {s} is missing")

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def simplices_of_dim(self, n: int) -> list[Simplex]:
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted((s for s in self.simplices if len(s) == n + 1),
                      key=lambda s: [order[v] for v in s])

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)


@dataclass(frozen=True)
class ChainComplex:
    """Simplicial chains; ``boundaries[n]`` maps n-chains to (n-1)-chains.

    ``boundaries[0]`` is the zero map to the zero group, stored as a matrix
    with no rows.
    """

    bases: tuple[tuple[Simplex, ...], ...]
    boundaries: tuple[Matrix, ...]

    def boundary(self, n: int) -> Matrix:
        if n < len(self.boundaries):
            return self.boundaries[n]
        rows = len(self.bases[n - 1]) if n - 1 < len(self.bases) else 0
        return [[] for _ in range(rows)]

    def rank(self, n: int) -> int:
        return len(self.bases[n]) if n < len(self.bases) else 0


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.betti < 0:
            raise ValueError("betti number must be non-negative")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} violates the divisibility chain")

    def __str__(self) -> str:
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


def order_complex(X: FiniteSpace, max_dim: int | None = None) -> SimplicialComplex:
    """Chains of a T0 space as simplices, optionally truncated above ``max_dim``."""
    if not X.is_t0:
        raise ValueError("order complex needs a T0 space; pass kolmogorov_quotient(X).space")
    n = len(X)
    limit = n if max_dim is None else max_dim + 1
    # strict successors in point order keep every chain listed in vertex order
    above = {i: [j for j in range(i + 1, n) if X.matrix[i, j] or X.matrix[j, i]] for i in range(n)}
    simplices: set[Simplex] = set()

    def grow(chain: list[int]) -> None:
        simplices.add(tuple(X.points[i] for i in chain))
        if len(chain) == limit:
            return
        for j in above[chain[-1]]:
            if all(X.matrix[i, j] or X.matrix[j, i] for i in chain):
                chain.append(j)
                grow(chain)
                chain.pop()

    for i in range(n):
        grow([i])
    return SimplicialComplex(X.points, frozenset(simplices))


def chain_complex(K: SimplicialComplex) -> ChainComplex:
    bases = tuple(tuple(K.simplices_of_dim(d)) for d in range(K.dimension + 1))
    boundaries: list[Matrix] = [[]]
    for d in range(1, len(bases)):
        row_of = {s: i for i, s in enumerate(bases[d - 1])}
        m = [[0] * len(bases[d]) for _ in bases[d - 1]]
        for j, s in enumerate(bases[d]):
            for k in range(len(s)):
                m[row_of[s[:k] + s[k + 1:]]][j] = (-1) ** k
        boundaries.append(m)
    for d in range(2, len(bases)):
        prod = _matmul(boundaries[d - 1], boundaries[d])
        if any(any(row) for row in prod):
            raise AssertionError(f"boundary of boundary is non-zero in dimension {d}")
    return ChainComplex(bases, tuple(boundaries))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in a]
    for i, row in enumerate(a):
        for k, v in enumerate(row):
            if v:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        out[i][j] += v * bk[j]
    return out


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | ...`` (all positive) and the rank of ``M``.

    Elimination pivots on the entry of least absolute value; the resulting
    diagonal is then brought into divisibility order by gcd/lcm exchanges.
    """
    a = [[int(v) for v in row] for row in M]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    r0 = 0
    while True:
        live_rows = [i for i in range(r0, rows) if any(a[i][j] for j in range(r0, cols))]
        if not live_rows:
            break
        pi, pj = min(((i, j) for i in live_rows for j in range(r0, cols) if a[i][j]),
                     key=lambda ij: abs(a[ij[0]][ij[1]]))
        a[r0], a[pi] = a[pi], a[r0]
        for row in a:
            row[r0], row[pj] = row[pj], row[r0]
        while True:
            p = a[r0][r0]
            dirty = False
            for i in range(r0 + 1, rows):
                if a[i][r0]:
                    q = a[i][r0] // p
                    if q:
                        ri, rp = a[i], a[r0]
                        for j in range(r0, cols):
                            ri[j] -= q * rp[j]
                    if a[i][r0]:
                        dirty = True
            for j in range(r0 + 1, cols):
                if a[r0][j]:
                    q = a[r0][j] // p
                    if q:
                        for i in range(r0, rows):
                            a[i][j] -= q * a[i][r0]
                    if a[r0][j]:
                        dirty = True
            if not dirty:
                break
            # a remainder smaller than the pivot survived; move it into pivot position
            cands = [(abs(a[i][r0]), i, r0) for i in range(r0 + 1, rows) if a[i][r0]]
            cands += [(abs(a[r0][j]), r0, j) for j in range(r0 + 1, cols) if a[r0][j]]
            _, i, j = min(cands)
            if i != r0:
                a[r0], a[i] = a[i], a[r0]
            else:
                for row in a:
                    row[r0], row[j] = row[j], row[r0]
        diag.append(abs(a[r0][r0]))
        r0 += 1
    # diag(x, y) is equivalent to diag(gcd, lcm)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            x, y = diag[i], diag[j]
            g = gcd(x, y)
            diag[i], diag[j] = g, x * y // g
    return diag, len(diag)


def homology(K: SimplicialComplex, n: int, max_dim: int = DEFAULT_MAX_DIM) -> HomologyGroup:
    if n < 0:
        raise ValueError("homology dimension must be non-negative")
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds the cap max_dim={max_dim}; raise the cap explicitly")
    C = chain_complex(K)
    return _homology_from_chains(C, n)


def _homology_from_chains(C: ChainComplex, n: int) -> HomologyGroup:
    chains = C.rank(n)
    if chains == 0:
        return HomologyGroup(0)
    rank_out = smith_normal_form(C.boundary(n))[1] if n > 0 else 0
    factors, rank_in = smith_normal_form(C.boundary(n + 1)) if C.rank(n + 1) else ([], 0)
    return HomologyGroup(chains - rank_out - rank_in, tuple(d for d in factors if d > 1))


def homology_all(K: SimplicialComplex, max_dim: int = DEFAULT_MAX_DIM) -> list[HomologyGroup]:
    """H_0 .. H_min(dim K, max_dim)."""
    C = chain_complex(K)
    return [_homology_from_chains(C, n) for n in range(min(K.dimension, max_dim) + 1)]


def space_homology(X: FiniteSpace, n: int, max_dim: int = DEFAULT_MAX_DIM) -> HomologyGroup:
    """Homology of any finite space, computed on its Kolmogorov quotient."""
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds the cap max_dim={max_dim}; raise the cap explicitly")
    X0 = kolmogorov_quotient(X).space
    return homology(order_complex(X0, max_dim=n + 1), n, max_dim=max_dim)
