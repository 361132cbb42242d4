"""Command-line front end.

Exit status: 0 on success, 1 when the input violates a precondition, 2 when
arguments or input files cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .complex import DEFAULT_MAX_DIM, homology_all, order_complex
from .covering import (
    comma_cover,
    deck_action_is_regular,
    functor_from_tree_hom,
    is_trivial_on,
    opposite_comma_iso,
    pi0_cover,
    restriction_is_product,
    triviality_criterion,
    trivializing_tree,
    verify_covering,
)
from .formats import (
    FormatError,
    emit_dot,
    format_poset,
    parse_group_spec,
    parse_hom_spec,
    parse_relation_list,
    read_poset,
)
from .group import coset_representatives, hom_from_presentation
from .groupoid import SpanningTree, abelianization, extend_forest_to_tree, pi1_presentation
from .space import (
    FiniteSpace,
    comparabilities,
    connected_components,
    equivalence_classes,
    hasse_edges,
    is_order_isomorphism,
    kolmogorov_quotient,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102
        self.print_usage(sys.stderr)
        raise FormatError(message)


def _edges(edges) -> str:
    return ",".join(f"{x}<{y}" for x, y in edges)


def _tree(X: FiniteSpace, args) -> SpanningTree:
    forest = parse_relation_list(args.forest) if getattr(args, "forest", None) else []
    spec = getattr(args, "tree", "auto") or "auto"
    if spec == "auto":
        return extend_forest_to_tree(X, forest)
    if forest:
        raise ValueError("--forest only applies with --tree auto")
    return SpanningTree(X, frozenset(parse_relation_list(spec)))


def _basepoint(X: FiniteSpace, args) -> str:
    x0 = getattr(args, "basepoint", None) or X.points[0]
    X.index(x0)
    return x0


def _read_spec(value: str) -> str:
    path = Path(value)
    if value.startswith("@"):
        return Path(value[1:]).read_text(encoding="utf-8")
    if path.is_file():
        return path.read_text(encoding="utf-8")
    return value


def _require_connected(X: FiniteSpace) -> None:
    comps = connected_components(X)
    if len(comps) != 1:
        raise ValueError(f"space has {len(comps)} components; pass a connected space")


def _build_cover(args):
    X = read_poset(args.poset)
    _require_connected(X)
    T = _tree(X, args)
    P = pi1_presentation(X, _basepoint(X, args), T)
    G = parse_group_spec(args.group, Path(args.poset).parent)
    labels = parse_hom_spec(_read_spec(args.hom)) if args.hom else {}
    h = hom_from_presentation(P, G, {name: G.element(lab) for name, lab in labels.items()})
    F = functor_from_tree_hom(T, h)
    return X, T, P, h, F, comma_cover(F)


def cmd_info(args, out) -> None:
    X = read_poset(args.poset)
    comps = connected_components(X)
    minimal = [x for x in X.points if all(X.leq(x, y) for y in X.down(x))]
    maximal = [x for x in X.points if all(X.leq(y, x) for y in X.up(x))]
    print(f"points: {len(X)}", file=out)
    print(f"relations: {len(comparabilities(X))}", file=out)
    print(f"hasse edges: {len(hasse_edges(X))}", file=out)
    print(f"T0: {'yes' if X.is_t0 else 'no'}", file=out)
    nontrivial = [c for c in equivalence_classes(X) if len(c) > 1]
    for c in nontrivial:
        print(f"class: {' '.join(c)}", file=out)
    print(f"components: {len(comps)}", file=out)
    for c in comps:
        print(f"  {' '.join(c)}", file=out)
    print(f"minimal: {' '.join(minimal)}", file=out)
    print(f"maximal: {' '.join(maximal)}", file=out)


def cmd_pi1(args, out) -> None:
    X = read_poset(args.poset)
    T = _tree(X, args)
    P = pi1_presentation(X, _basepoint(X, args), T)
    ab = abelianization(P)
    if args.json:
        data = P.to_dict() | {"tree": [f"{x}<{y}" for x, y in T.sorted_edges()], "H1": ab.to_dict()}
        print(json.dumps(data, indent=2), file=out)
        return
    print(str(P), file=out)
    print(f"H1 = {ab}", file=out)


def cmd_homology(args, out) -> None:
    X = read_poset(args.poset)
    X0 = kolmogorov_quotient(X).space
    groups = homology_all(order_complex(X0, max_dim=args.max_dim + 1), max_dim=args.max_dim)
    if args.json:
        print(json.dumps({f"H{n}": g.to_dict() for n, g in enumerate(groups)}, indent=2), file=out)
        return
    for n, g in enumerate(groups):
        print(f"H{n} = {g}", file=out)


def cmd_tree(args, out) -> None:
    X = read_poset(args.poset)
    T = _tree(X, args)
    for x, y in T.sorted_edges():
        print(f"{x}<{y}", file=out)


def cmd_quotient(args, out) -> None:
    X = read_poset(args.poset)
    for c in equivalence_classes(X):
        if len(c) > 1:
            print(f"# {' = '.join(c)}", file=out)
    out.write(format_poset(kolmogorov_quotient(X).space))


def cmd_dot(args, out) -> None:
    if args.group:
        *_, C = _build_cover(args)
        out.write(emit_dot(C, name="cover"))
    else:
        out.write(emit_dot(read_poset(args.poset)))


def cmd_cover(args, out) -> int:
    X, T, P, h, F, C = _build_cover(args)
    G = C.group
    print(f"tree: {_edges(T.sorted_edges())}", file=out)
    print(f"points: {len(C.total)}", file=out)
    print(f"sheets: {len(G)}", file=out)
    print(f"image: {{{', '.join(G.labels[g] for g in sorted(h.image()))}}}", file=out)
    print(f"components: {pi0_cover(C, h)}", file=out)
    status = 0
    if args.verify:
        report = verify_covering(C)
        print(f"covering conditions: {'PASS' if report.ok else 'FAIL'}", file=out)
        if not report.ok:
            for line in report.lines():
                print(f"  {line}", file=out)
            status = 1
    if args.output:
        Path(args.output).write_text(format_poset(C.total), encoding="utf-8")
    if args.dot:
        Path(args.dot).write_text(emit_dot(C, name="cover"), encoding="utf-8")
    return status


def cmd_verify(args, out) -> int:
    X, T, P, h, F, C = _build_cover(args)
    G = C.group
    report = verify_covering(C)
    for line in report.lines():
        print(line, file=out)
    regular = deck_action_is_regular(C)
    print(f"deck action free and transitive on fibres: {'PASS' if regular else 'FAIL'}", file=out)
    opposite = is_order_isomorphism(opposite_comma_iso(C))
    print(f"(x,g) -> (x,g^-1) is an isomorphism onto the opposite comma space: {'PASS' if opposite else 'FAIL'}",
          file=out)
    reps = ", ".join(G.labels[g] for g in coset_representatives(G, h.image()))
    print(f"components: {pi0_cover(C, h)} (coset representatives: {reps})", file=out)
    ok = report.ok and regular and opposite
    if args.subspace:
        A = X.subspace(p.strip() for p in args.subspace.split(","))
        label = "{" + ",".join(A.points()) + "}"
        print(f"functor trivial on {label}: {'yes' if is_trivial_on(F, A) else 'no'}", file=out)
        try:
            crit = triviality_criterion(T, h, A)
            print(f"loop criterion on {label}: {'yes' if crit else 'no'}", file=out)
        except ValueError as err:
            print(f"loop criterion on {label}: not applicable ({err})", file=out)
        print(f"preimage of {label} is the product: {'yes' if restriction_is_product(C, A) else 'no'}", file=out)
        witness = trivializing_tree(F, A, P.basepoint)
        print(f"trivializing tree for {label}: {_edges(witness.sorted_edges()) if witness else 'none'}",
              file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="alexandroff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def with_poset(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("poset", help="poset file")
        return p

    def with_tree(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tree", default="auto", help="'auto' or comma-separated edges like 'a<c,b<c'")
        p.add_argument("--forest", help="edges to keep when growing the tree with --tree auto")
        p.add_argument("--basepoint", help="basepoint (default: first point)")

    def with_cover(p: argparse.ArgumentParser, required: bool) -> None:
        with_tree(p)
        p.add_argument("--group", required=required, help="Zn or table:<path>")
        p.add_argument("--hom", help="generator images, e.g. 'g[a<d]->2', or a file of such lines")

    with_poset("info", "summary of a finite space")
    p = with_poset("pi1", "presentation of the fundamental group")
    with_tree(p)
    p.add_argument("--json", action="store_true")
    p = with_poset("homology", "integral homology of the order complex")
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    p.add_argument("--json", action="store_true")
    p = with_poset("tree", "maximal tree edges")
    with_tree(p)
    p = with_poset("cover", "regular covering from a homomorphism into a finite group")
    with_cover(p, required=True)
    p.add_argument("--verify", action="store_true", help="check the covering conditions")
    p.add_argument("--output", help="write the total space as a poset file")
    p.add_argument("--dot", help="write the covering as DOT")
    p = with_poset("verify", "full verification report for a covering")
    with_cover(p, required=True)
    p.add_argument("--subspace", help="comma-separated points to test for triviality")
    with_poset("quotient", "Kolmogorov (T0) quotient")
    p = with_poset("dot", "Hasse diagram as DOT (a covering when --group is given)")
    with_cover(p, required=False)
    return parser


COMMANDS = {
    "info": cmd_info,
    "pi1": cmd_pi1,
    "homology": cmd_homology,
    "tree": cmd_tree,
    "cover": cmd_cover,
    "verify": cmd_verify,
    "quotient": cmd_quotient,
    "dot": cmd_dot,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        status = COMMANDS[args.verb](args, out)
    except FormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return status or 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
