"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL (...)`` line to the
terminal, even under output capture.  Run the file directly for the same
lines without pytest.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from alexandroff.complex import HomologyGroup, homology, order_complex, space_homology
from alexandroff.covering import (
    comma_cover,
    deck_action_is_regular,
    functor_from_tree_hom,
    functoriality_violations,
    is_trivial_on,
    opposite_comma_iso,
    pi0_cover,
    restriction_is_product,
    triviality_criterion,
    trivializing_tree,
    verify_covering,
)
from alexandroff.group import cyclic, hom_from_presentation
from alexandroff.groupoid import SpanningTree, abelianization, extend_forest_to_tree, pi1_presentation
from alexandroff.space import connected_components, is_order_isomorphism, kolmogorov_quotient

from posets import EXAMPLE_TREE, circle, random_connected_poset, random_hom, random_non_t0, random_tree

SWEEP_SEED = 20240601
SWEEP_SIZE = 200


def _report(n: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    if capsys is None:
        print(line)
        return
    with capsys.disabled():
        sys.stdout.write("\n" + line + "\n")


def criterion_1() -> list[str]:
    failures = []
    X = circle()
    T = SpanningTree(X, frozenset(EXAMPLE_TREE))
    P = pi1_presentation(X, "a", T)
    if P.generators != (("a", "d"),) or P.relators != ():
        failures.append(f"presentation {P}")
    h = hom_from_presentation(P, cyclic(6), {"g[a<d]": 2})
    F = functor_from_tree_hom(T, h)
    C = comma_cover(F)
    comps = connected_components(C.total)
    if len(C.total) != 24:
        failures.append(f"{len(C.total)} points")
    if sorted(map(len, comps)) != [12, 12] or pi0_cover(C, h) != 2:
        failures.append(f"component sizes {sorted(map(len, comps))}")
    if not verify_covering(C).ok:
        failures.append("covering conditions")
    if not restriction_is_product(C, {"a", "b", "c"}):
        failures.append("preimage of {a,b,c} is not the product")
    if restriction_is_product(C, {"a", "b", "d"}):
        failures.append("preimage of {a,b,d} is the product")
    if trivializing_tree(F, {"a", "b", "d"}, "a") is None:
        failures.append("no trivializing tree on {a,b,d}")
    if trivializing_tree(F, X.points, "a") is not None:
        failures.append("a tree trivializes F on X")
    return failures


def criterion_2() -> list[str]:
    X = circle()
    for T in (SpanningTree(X, frozenset(EXAMPLE_TREE)), extend_forest_to_tree(X)):
        ab = abelianization(pi1_presentation(X, "a", T))
        if ab != HomologyGroup(1) or ab != homology(order_complex(X), 1):
            return [f"abelianization {ab}"]
    return []


def sweep(seed: int = SWEEP_SEED, size: int = SWEEP_SIZE):
    """Criteria 3 and 5 share this sweep; returns (failures, counters)."""
    rng = random.Random(seed)
    failures: list[str] = []
    counts = {"posets": 0, "covers": 0, "criterion checks": 0, "nontrivial homs": 0, "nonzero H1": 0}
    for k in range(size):
        X = random_connected_poset(rng, 3, 8)
        counts["posets"] += 1
        H1 = homology(order_complex(X), 1)
        counts["nonzero H1"] += H1 != HomologyGroup(0)
        for _ in range(3):
            T = random_tree(rng, X)
            for x0 in rng.sample(X.points, 2):
                ab = abelianization(pi1_presentation(X, x0, T))
                if ab != H1:
                    failures.append(f"poset {k}: abelianization {ab} vs H1 {H1}")
            P = pi1_presentation(X, rng.choice(X.points), T)
            n = rng.randint(1, 6)
            G = cyclic(n)
            h = random_hom(rng, P, G)
            F = functor_from_tree_hom(T, h)
            counts["covers"] += 1
            trivial_images = all(g == G.identity for g in h.images)
            counts["nontrivial homs"] += not trivial_images
            if F.is_constant_identity() != trivial_images:
                failures.append(f"poset {k}: constant functor vs zero hom disagree (criterion 5)")
            if functoriality_violations(F):
                failures.append(f"poset {k}: functoriality")
            C = comma_cover(F)
            if not verify_covering(C).ok:
                failures.append(f"poset {k}: covering conditions")
            if len(C.total) != len(X) * n:
                failures.append(f"poset {k}: size {len(C.total)}")
            expected = n // len(h.image())
            if pi0_cover(C, h) != expected or len(connected_components(C.total)) != expected:
                failures.append(f"poset {k}: components")
            if not deck_action_is_regular(C):
                failures.append(f"poset {k}: deck action")
            iso = opposite_comma_iso(C)
            over = all(C.coordinates[p][0] == C.coordinates[iso(p)][0] for p in C.total.points)
            if not (is_order_isomorphism(iso) and over):
                failures.append(f"poset {k}: opposite comma iso")
            for _ in range(3):
                A = rng.sample(X.points, rng.randint(1, len(X)))
                try:
                    crit = triviality_criterion(T, h, A)
                except ValueError:
                    continue
                counts["criterion checks"] += 1
                if crit != is_trivial_on(F, A):
                    failures.append(f"poset {k}: triviality criterion on {sorted(A)}")
    return failures, counts


def criterion_4() -> list[str]:
    failures = []
    X = circle()
    T = SpanningTree(X, frozenset(EXAMPLE_TREE))
    P = pi1_presentation(X, "a", T)
    for n in range(2, 7):
        h = hom_from_presentation(P, cyclic(n), {1: 1})
        C = comma_cover(functor_from_tree_hom(T, h))
        comps = connected_components(C.total)
        if len(C.total) != 4 * n or len(comps) != 1:
            failures.append(f"n={n}: {len(C.total)} points, {len(comps)} components")
        elif homology(order_complex(C.total), 1) != HomologyGroup(1):
            failures.append(f"n={n}: H1 of the cover")
    return failures


def criterion_6(seed: int = 31, size: int = 50) -> list[str]:
    rng = random.Random(seed)
    failures = []
    for k in range(size):
        X = random_non_t0(rng)
        q = kolmogorov_quotient(X)
        X0 = q.space
        if X0.is_t0 is False or len(X0) >= len(X):
            failures.append(f"preorder {k}: quotient did not merge a class")
        a = abelianization(pi1_presentation(X, X.points[0], extend_forest_to_tree(X)))
        b = abelianization(pi1_presentation(X0, q.quotient(X.points[0]), extend_forest_to_tree(X0)))
        if a != b:
            failures.append(f"preorder {k}: {a} on X vs {b} on the quotient")
        if kolmogorov_quotient(X0).space != X0:
            failures.append(f"preorder {k}: re-quotienting changed the space")
        for n in (0, 1):
            if space_homology(X, n) != space_homology(X0, n):
                failures.append(f"preorder {k}: H{n}")
        if homology(order_complex(X0), 1) != a:
            failures.append(f"preorder {k}: H1 vs abelianization")
    return failures


def _timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def test_criterion_1_example_end_to_end(capsys):
    failures, elapsed = _timed(criterion_1)
    ok = not failures and elapsed < 1.0
    _report(1, ok, f"{elapsed:.3f}s, limit 1s" + (f"; {failures}" if failures else ""), capsys)
    assert not failures
    assert elapsed < 1.0


def test_criterion_2_circle_abelianization(capsys):
    failures = criterion_2()
    _report(2, not failures, "H1 = Z from the presentation and from the order complex", capsys)
    assert not failures


@pytest.fixture(scope="module")
def sweep_result():
    (failures, counts), elapsed = _timed(sweep)
    return failures, counts, elapsed


def test_criterion_3_property_sweep(sweep_result, capsys):
    failures, counts, elapsed = sweep_result
    rest = [f for f in failures if "criterion 5" not in f]
    # the sweep must exercise non-trivial loops and homomorphisms
    exercised = (counts["nonzero H1"] >= SWEEP_SIZE // 4 and counts["nontrivial homs"] >= SWEEP_SIZE // 4
                 and counts["criterion checks"] >= SWEEP_SIZE)
    ok = not rest and elapsed < 60.0 and exercised
    detail = f"{elapsed:.1f}s, limit 60s; " + ", ".join(f"{v} {k}" for k, v in counts.items())
    _report(3, ok, detail + (f"; first failure: {rest[0]}" if rest else ""), capsys)
    assert not rest
    assert elapsed < 60.0
    assert exercised, counts


def test_criterion_4_circle_covers(capsys):
    failures, elapsed = _timed(criterion_4)
    ok = not failures and elapsed < 5.0
    _report(4, ok, f"n = 2..6, {elapsed:.3f}s, limit 5s" + (f"; {failures}" if failures else ""), capsys)
    assert not failures
    assert elapsed < 5.0


def test_criterion_5_constant_functor_iff_zero_hom(sweep_result, capsys):
    failures, counts, _ = sweep_result
    mine = [f for f in failures if "criterion 5" in f]
    detail = f"{counts['covers']} functors, {counts['nontrivial homs']} from non-trivial homs"
    _report(5, not mine, detail, capsys)
    assert not mine


def test_criterion_6_non_t0_coherence(capsys):
    failures = criterion_6()
    detail = "50 preorders with non-trivial classes" + (f"; {failures[:2]}" if failures else "")
    _report(6, not failures, detail, capsys)
    assert not failures


if __name__ == "__main__":
    for n, fn in ((1, criterion_1), (2, criterion_2), (4, criterion_4), (6, criterion_6)):
        fails, secs = _timed(fn)
        _report(n, not fails, f"{secs:.3f}s")
    (fails, counts), secs = _timed(sweep)
    _report(3, not [f for f in fails if "criterion 5" not in f], f"{secs:.1f}s, {counts}")
    _report(5, not [f for f in fails if "criterion 5" in f], "shared sweep")
