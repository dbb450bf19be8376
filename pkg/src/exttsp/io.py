"""Text formats for instances, layouts and discount tables.

Instance file, one record per line::

    c free-form comment
    p exttsp <n> <m> <directed|undirected>
    e <u> <v> <w>

Vertex ids are positive integers. When every id lies in ``1..n`` they are used
as is; otherwise the distinct ids are sorted and renumbered ``1..n`` (padding
with fresh ids for isolated vertices) and the original labels are kept for
output. Directed instances are merged into undirected ones on load.

Layout file: one line of ``n`` space-separated vertex ids in position order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .model import Graph, InputError, Layout, make_discount, merge_directed


@dataclass(frozen=True)
class Instance:
    graph: Graph
    labels: tuple[int, ...]
    directed: bool = False
    comments: tuple[str, ...] = field(default=(), compare=False)

    def label(self, v: int) -> int:
        return self.labels[v - 1]

    def meta(self, key: str) -> str | None:
        """Value of a ``c <key> <value>`` comment, if present."""
        for c in self.comments:
            parts = c.split(None, 1)
            if parts and parts[0] == key:
                return parts[1].strip() if len(parts) > 1 else ""
        return None


def format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() and abs(w) < 2**53 else repr(float(w))


def parse_instance(text: str) -> Instance:
    header = None
    comments: list[str] = []
    raw: list[tuple[int, int, float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        tag = parts[0]
        try:
            if tag == "c":
                comments.append(line.strip()[1:].strip())
            elif tag == "p":
                if header is not None:
                    raise InputError("second problem line")
                if len(parts) != 5 or parts[1] != "exttsp" or parts[4] not in ("directed", "undirected"):
                    raise InputError("expected 'p exttsp <n> <m> <directed|undirected>'")
                n, m = int(parts[2]), int(parts[3])
                if n < 0 or m < 0:
                    raise InputError("n and m must be non-negative")
                header = (n, m, parts[4] == "directed")
            elif tag == "e":
                if header is None:
                    raise InputError("edge before problem line")
                if len(parts) != 4:
                    raise InputError("expected 'e <u> <v> <w>'")
                u, v, w = int(parts[1]), int(parts[2]), float(parts[3])
                if u < 1 or v < 1:
                    raise InputError("vertex ids must be positive")
                raw.append((u, v, w))
            else:
                raise InputError(f"unknown record type {tag!r}")
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    if header is None:
        raise InputError("missing problem line")
    n, m, directed = header
    if len(raw) != m:
        raise InputError(f"header announces {m} edges, found {len(raw)}")
    ids = {x for u, v, _ in raw for x in (u, v)}
    if all(x <= n for x in ids):
        labels = tuple(range(1, n + 1))
        edges = raw
    else:
        if len(ids) > n:
            raise InputError(f"{len(ids)} distinct vertex ids but n={n}")
        ordered = sorted(ids)
        nxt = ordered[-1] + 1
        labels = tuple(ordered + list(range(nxt, nxt + n - len(ordered))))
        index = {x: i for i, x in enumerate(labels, start=1)}
        edges = [(index[u], index[v], w) for u, v, w in raw]
    graph = merge_directed(n, edges) if directed else Graph.from_edges(n, edges)
    return Instance(graph, labels, directed, tuple(comments))


def format_instance(g: Graph, comments=(), labels=None) -> str:
    labels = labels or tuple(range(1, g.n + 1))
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p exttsp {g.n} {g.m} undirected")
    for u, v, w in g.edges:
        lines.append(f"e {labels[u - 1]} {labels[v - 1]} {format_weight(w)}")
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())


def write_instance(path, g: Graph, comments=(), labels=None) -> None:
    Path(path).write_text(format_instance(g, comments, labels))


def parse_layout(text: str, instance: Instance) -> Layout:
    try:
        ids = [int(x) for x in text.split()]
    except ValueError as exc:
        raise InputError(f"layout: {exc}") from None
    index = {x: i for i, x in enumerate(instance.labels, start=1)}
    if len(ids) != len(index) or set(ids) != set(index):
        raise InputError("layout is not a permutation of the instance's vertices")
    return Layout(tuple(index[x] for x in ids))


def format_layout(layout: Layout, instance: Instance | None = None) -> str:
    if instance is None:
        return " ".join(str(v) for v in layout.order) + "\n"
    return " ".join(str(instance.label(v)) for v in layout.order) + "\n"


def read_discount(spec: str, k: int | None):
    """``step``, ``linear`` or ``table:<file>`` (``k`` inferred from the table)."""
    if spec.startswith("table:"):
        path = Path(spec[len("table:"):])
        try:
            values = [float(x) for x in path.read_text().split()]
        except OSError as exc:
            raise InputError(f"cannot read discount table: {exc}") from None
        except ValueError as exc:
            raise InputError(f"discount table: {exc}") from None
        return make_discount("table", k, values)
    if spec not in ("step", "linear"):
        raise InputError(f"unknown discount {spec!r}")
    if k is None:
        raise InputError(f"--k is required with --discount {spec}")
    return make_discount(spec, k)
