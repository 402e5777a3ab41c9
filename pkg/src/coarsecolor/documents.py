"""JSON graph documents and DOT export."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .graph import Graph, GraphError, build_graph

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed graph or coloring document."""


@dataclass
class GraphDocument:
    n: int
    edges: list[tuple[int, int]]
    labels: list[str] | None = None
    coloring: list[int | None] | None = None

    def __post_init__(self):
        self.edges = sorted((min(u, v), max(u, v)) for u, v in self.edges)
        if self.labels is not None and len(self.labels) != self.n:
            raise DocumentError(f"{len(self.labels)} labels for {self.n} vertices")
        if self.coloring is not None:
            check_coloring(self.coloring, self.n)

    @classmethod
    def from_graph(cls, g: Graph, coloring: Sequence[int | None] | None = None) -> GraphDocument:
        return cls(g.n, g.edges(), list(g.labels) if g.labels else None, None if coloring is None else list(coloring))

    def graph(self) -> Graph:
        try:
            return build_graph(self.n, self.edges, self.labels)
        except GraphError as e:
            raise DocumentError(str(e)) from e

    def to_dict(self) -> dict:
        d: dict = {"version": FORMAT_VERSION, "n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.coloring is not None:
            d["coloring"] = list(self.coloring)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def check_coloring(coloring: Sequence, n: int) -> None:
    if len(coloring) != n:
        raise DocumentError(f"coloring has {len(coloring)} entries for {n} vertices")
    for c in coloring:
        if c not in (0, 1, None) or isinstance(c, bool):
            raise DocumentError(f"coloring values must be 0, 1 or null, got {c!r}")


def parse_document(data: dict) -> GraphDocument:
    if not isinstance(data, dict):
        raise DocumentError("graph document must be a JSON object")
    if data.get("version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported document version {data.get('version')!r}")
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"bad graph document: {e}") from e
    return GraphDocument(n, edges, data.get("labels"), data.get("coloring"))


def loads(text: str) -> GraphDocument:
    try:
        return parse_document(json.loads(text))
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from e


def load(path: str | Path) -> GraphDocument:
    return loads(Path(path).read_text())


def load_coloring(path: str | Path) -> list[int | None]:
    """A coloring from a graph document's ``coloring`` field or a bare JSON array."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from e
    if isinstance(data, list):
        return data
    doc = parse_document(data)
    if doc.coloring is None:
        raise DocumentError(f"{path} has no coloring")
    return doc.coloring


_FILL = {0: "black", 1: "white", None: "gray"}


def to_dot(g: Graph, coloring: Sequence[int | None] | None = None, name: str = "G") -> str:
    """DOT text; color 0 is black, 1 white, undefined gray, no coloring unfilled."""
    if coloring is not None:
        check_coloring(coloring, g.n)
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        if coloring is None:
            lines.append(f'  {v} [label="{v}"];')
        else:
            fill = _FILL[coloring[v]]
            font = "white" if fill == "black" else "black"
            lines.append(f'  {v} [label="{v}", style=filled, fillcolor={fill}, fontcolor={font}];')
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
