"""Export of the delta = 0 remainder graph as DOT or JSON."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from ..polyz.core import IntPoly
from ..roots import profile_for
from .digits import DigitSet
from .engine import SearchOptions, _step_tuple, _tail
from .rem import RemChecker


@dataclass
class GraphExport:
    poly: IntPoly
    digits: DigitSet
    vertices: list = field(default_factory=list)  # coefficient tuples
    edges: list = field(default_factory=list)  # (from, to, digit)
    starts: list = field(default_factory=list)
    zero_reached: bool = False
    truncated: bool = False
    max_depth: int = 0

    @property
    def stats(self) -> dict:
        return {"nodes": len(self.vertices), "edges": len(self.edges), "max_depth": self.max_depth}

    def to_json(self) -> dict:
        return {
            "poly": str(self.poly),
            "digits": list(self.digits),
            "vertices": [label(v) for v in self.vertices],
            "edges": [{"from": label(a), "to": label(b), "digit": d} for a, b, d in self.edges],
            "starts": [label(v) for v in self.starts],
            "zero_reached": self.zero_reached,
            "truncated": self.truncated,
            "stats": self.stats,
        }

    def to_dot(self) -> str:
        lines = ["digraph remainders {"]
        ids = {v: i for i, v in enumerate(self.vertices)}
        for v, i in ids.items():
            attrs = [f'label="{label(v)}"']
            if not any(v):
                attrs.append("shape=doublecircle")
                if not self.zero_reached:
                    attrs.append("style=dashed")
            elif v in self.starts:
                attrs.append("shape=box")
            lines.append(f"  n{i} [{', '.join(attrs)}];")
        for a, b, d in self.edges:
            lines.append(f'  n{ids[a]} -> n{ids[b]} [label="{d}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def label(state) -> str:
    return ",".join(str(c) for c in state)


def export_graph(P: IntPoly, D: DigitSet, opts: Optional[SearchOptions] = None) -> GraphExport:
    """Every vertex reachable from a nonzero leading digit in the delta = 0 graph.

    The zero vertex is always listed so the target is visible even when it is
    unreachable. Exceeding ``opts.node_cap`` returns a truncated graph.
    """
    opts = opts or SearchOptions()
    tail = _tail(P)
    if tail[0] == 0:
        raise ValueError("P(0) must be nonzero")
    n = len(tail)
    checker = RemChecker(profile_for(P), D, 0, n, opts.exclude_unimodular)
    zero = (0,) * n
    out = GraphExport(P, D)
    depth = {}
    queue = deque()
    for a in D.nonzero:
        s = (a,) + (0,) * (n - 1)
        if s not in depth and checker(s):
            depth[s] = 0
            out.starts.append(s)
            queue.append(s)
    out.vertices.extend(out.starts)
    rejected = set()
    while queue:
        state = queue.popleft()
        for d in D:
            child = _step_tuple(state, d, tail)
            if child == zero:
                out.zero_reached = True
                out.edges.append((state, child, d))
                continue
            if child in rejected:
                continue
            if child not in depth:
                if not checker(child):
                    rejected.add(child)
                    continue
                if len(depth) >= opts.node_cap:
                    out.truncated = True
                    continue
                depth[child] = depth[state] + 1
                out.max_depth = max(out.max_depth, depth[child])
                out.vertices.append(child)
                queue.append(child)
            out.edges.append((state, child, d))
    out.vertices.append(zero)
    return out


def dumps_json(graph: GraphExport) -> str:
    return json.dumps(graph.to_json(), indent=1)
