"""Text formats: poset files, group tables, tree and hom specs, Graphviz DOT.

Poset file::

    points: a b c d
    a < c        # one relation per line
    b < c

Group table file (``table:<path>`` on the command line)::

    elements: e r s t
    e: e r s t
    r: r e t s
    ...

Each row ``x: y1 y2 ...`` lists ``x*e1, x*e2, ...`` for the listed elements;
the ``x:`` prefix is optional when rows appear in element order.

Hom spec: ``g[a<d] -> 2``, one per line or separated by commas/semicolons.
"""

from __future__ import annotations

import re
from pathlib import Path

from .covering import Covering
from .group import FiniteGroup, cyclic, from_table
from .space import FiniteSpace, Relation, equivalence_classes, from_relations, hasse_edges, heights


class FormatError(ValueError):
    """Malformed input text (as opposed to well-formed input violating a precondition)."""


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((number, line))
    return out


def parse_poset(text: str) -> FiniteSpace:
    lines = _content_lines(text)
    if not lines or not lines[0][1].startswith("points:"):
        raise FormatError("first line must be 'points: <labels>'")
    points = lines[0][1][len("points:"):].split()
    pairs = []
    for number, line in lines[1:]:
        parts = [p.strip() for p in line.split("<")]
        if len(parts) < 2 or not all(parts) or any(len(p.split()) != 1 for p in parts):
            raise FormatError(f"line {number}: expected 'x < y', got {line!r}")
        # chains like 'a < b < c' are accepted as consecutive pairs
        pairs.extend(zip(parts, parts[1:]))
    return from_relations(points, pairs)


def read_poset(path: str | Path) -> FiniteSpace:
    return parse_poset(Path(path).read_text(encoding="utf-8"))


def format_poset(X: FiniteSpace) -> str:
    """Poset file text; relations are the Hasse edges plus a cycle through each class."""
    lines = ["points: " + " ".join(X.points)]
    for cls in equivalence_classes(X):
        if len(cls) > 1:
            lines.extend(f"{u} < {v}" for u, v in zip(cls, cls[1:] + cls[:1]))
    lines.extend(f"{u} < {v}" for u, v in hasse_edges(X))
    return "\n".join(lines) + "\n"


def parse_relation_list(text: str) -> list[Relation]:
    """``"a<c, b<c"`` -> ``[("a", "c"), ("b", "c")]``."""
    out = []
    for item in re.split(r"[,;\n]", text):
        item = item.strip()
        if not item:
            continue
        parts = [p.strip() for p in item.split("<")]
        if len(parts) != 2 or not all(parts):
            raise FormatError(f"expected an edge 'x<y', got {item!r}")
        out.append((parts[0], parts[1]))
    return out


def parse_group_table(text: str) -> FiniteGroup:
    lines = _content_lines(text)
    if not lines or not lines[0][1].startswith("elements:"):
        raise FormatError("group table must start with 'elements: <labels>'")
    labels = lines[0][1][len("elements:"):].split()
    rows: dict[str, list[str]] = {}
    for k, (number, line) in enumerate(lines[1:]):
        if ":" in line:
            head, body = line.split(":", 1)
            head = head.strip()
        else:
            if k >= len(labels):
                raise FormatError(f"line {number}: more rows than elements")
            head, body = labels[k], line
        entries = body.split()
        if len(entries) != len(labels):
            raise FormatError(f"line {number}: expected {len(labels)} entries, got {len(entries)}")
        if head in rows:
            raise FormatError(f"line {number}: duplicate row for {head!r}")
        rows[head] = entries
    missing = [x for x in labels if x not in rows]
    if missing or len(rows) != len(labels):
        raise FormatError(f"table rows missing or unknown: {missing or sorted(set(rows) - set(labels))}")
    return from_table(labels, [rows[x] for x in labels])


def parse_group_spec(spec: str, base_dir: Path | None = None) -> FiniteGroup:
    """``Z6`` for a cyclic group or ``table:<path>`` for a Cayley table file."""
    spec = spec.strip()
    m = re.fullmatch(r"Z(\d+)", spec)
    if m:
        return cyclic(int(m.group(1)))
    if spec.startswith("table:"):
        path = Path(spec[len("table:"):])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return parse_group_table(path.read_text(encoding="utf-8"))
    raise FormatError(f"unrecognised group spec {spec!r}; use Zn or table:<path>")


def parse_hom_spec(text: str) -> dict[str, str]:
    """Generator name -> element label."""
    out: dict[str, str] = {}
    stripped = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    for item in re.split(r"[;\n]|,(?![^\[]*\])", stripped):
        item = item.strip()
        if not item:
            continue
        m = re.fullmatch(r"(g\[[^\]]+\])\s*->\s*(\S+)", item)
        if not m:
            raise FormatError(f"expected 'g[x<y] -> element', got {item!r}")
        name = re.sub(r"\s+", "", m.group(1))
        if name in out:
            raise FormatError(f"generator {name} assigned twice")
        out[name] = m.group(2)
    return out


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_graph(X: FiniteSpace) -> tuple[list[str], list[Relation]]:
    """Node ids (class representatives) and Hasse edges, as drawn by :func:`emit_dot`."""
    reps = [cls[0] for cls in equivalence_classes(X)]
    return reps, hasse_edges(X)


def emit_dot(obj: FiniteSpace | Covering, name: str = "X") -> str:
    """Hasse diagram in DOT, minimal points at the bottom.

    For a covering, total-space nodes over base points of equal height share
    a rank, and within a rank nodes are ordered by base point then group
    element, so fibres line up over the base.
    """
    if isinstance(obj, Covering):
        X = obj.total
        base_height = heights(obj.base)
        rank_of = {p: base_height[obj.coordinates[p][0]] for p in X.points}
    else:
        X = obj
        rank_of = heights(X)
    classes = {cls[0]: cls for cls in equivalence_classes(X)}
    reps, edges = dot_graph(X)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for r in reps:
        lines.append(f"  {_quote(r)} [label={_quote('='.join(classes[r]))}];")
    by_rank: dict[int, list[str]] = {}
    for r in reps:
        by_rank.setdefault(rank_of[r], []).append(r)
    for level in sorted(by_rank):
        members = " ".join(_quote(r) + ";" for r in by_rank[level])
        lines.append(f"  {{ rank=same; {members} }}")
    for u, v in edges:
        lines.append(f"  {_quote(u)} -> {_quote(v)} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
