"""File formats: edge lists, ColorGraph JSON, group JSON."""
from __future__ import annotations

import json
from pathlib import Path

from .ccstruct import ColorGraph


class FormatError(ValueError):
    pass


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    """``n m`` header followed by ``u v`` lines; blank lines and ``#`` comments ignored."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise FormatError("empty edge list")
    try:
        head = [int(t) for t in rows[0]]
        if len(head) == 1:
            head.append(len(rows) - 1)
        n, m = head
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return n, edges


def format_edge_list(n: int, edges) -> str:
    lines = [f"{n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> tuple[int, list[tuple[int, int]]]:
    return parse_edge_list(Path(path).read_text())


def read_color_graph(path) -> ColorGraph:
    with open(path) as fh:
        return ColorGraph.from_json(json.load(fh))
