"""Colored weighted digraphs of matrix products.

Each factor of a product ``A_1 ... A_m`` contributes one layer (color) of
edges.  Entry ``(i, j)`` of the product is the best weight over properly
colored paths, i.e. paths using exactly one edge of each color in order.
This module recomputes products that way, as an oracle independent of
:func:`tropid.tropical.mat_mul`.  Vertices are 0-based here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .tropical import BOTTOM, ONE, TropMatrix, TropValue, tadd, tmul
from .words import Variable, Word


class PathOverflow(RuntimeError):
    """Raised when path enumeration exceeds its cap."""


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: TropValue
    color: int

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class ColoredDigraph:
    n: int
    layers: tuple  # layers[k] is a tuple of Edge, all with color k

    def out_edges(self, k: int, v: int) -> list:
        return [e for e in self.layers[k] if e.src == v]

    def is_acyclic(self) -> bool:
        """True when every non-loop edge goes the same way (triangular factors)."""
        fwd = any(e.src < e.dst for layer in self.layers for e in layer)
        back = any(e.src > e.dst for layer in self.layers for e in layer)
        return not (fwd and back)


@dataclass(frozen=True)
class ProperPath:
    start: int
    edges: tuple = field(default=())

    @property
    def end(self) -> int:
        return self.edges[-1].dst if self.edges else self.start

    def __len__(self) -> int:
        return len(self.edges)

    def weight(self) -> TropValue:
        w = ONE
        for e in self.edges:
            w = tmul(w, e.weight)
        return w

    def loops(self) -> int:
        return sum(e.is_loop for e in self.edges)


def from_product(factors: Sequence[TropMatrix]) -> ColoredDigraph:
    if not factors:
        raise ValueError("need at least one factor")
    n = factors[0].n
    layers = []
    for k, a in enumerate(factors):
        if a.n != n:
            raise ValueError(f"factor {k} has dimension {a.n}, expected {n}")
        layers.append(tuple(Edge(i, j, a.entry(i, j), k)
                            for i in range(n) for j in range(n)
                            if not a.entry(i, j).is_bottom))
    return ColoredDigraph(n, tuple(layers))


def max_weight_entry(g: ColoredDigraph, i: int, j: int) -> TropValue:
    """Best proper-path weight from ``i`` to ``j`` by forward propagation."""
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise IndexError("vertex out of range")
    best = [BOTTOM] * g.n
    best[i] = ONE
    for layer in g.layers:
        nxt = [BOTTOM] * g.n
        for e in layer:
            if not best[e.src].is_bottom:
                nxt[e.dst] = tadd(nxt[e.dst], tmul(best[e.src], e.weight))
        best = nxt
    return best[j]


def product_via_paths(g: ColoredDigraph) -> TropMatrix:
    return TropMatrix.from_values([[max_weight_entry(g, i, j) for j in range(g.n)]
                                   for i in range(g.n)])


def enumerate_proper_paths(g: ColoredDigraph, i: int, j: int, cap: int = 10**6) -> list:
    """All properly colored ``i -> j`` paths; :class:`PathOverflow` past ``cap``."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    m = len(g.layers)
    out: list = []
    stack: list = []

    def dfs(v: int, k: int):
        if k == m:
            if v == j:
                if len(out) >= cap:
                    raise PathOverflow(f"more than {cap} paths from {i} to {j}")
                out.append(ProperPath(i, tuple(stack)))
            return
        for e in g.out_edges(k, v):
            stack.append(e)
            dfs(e.dst, k + 1)
            stack.pop()

    dfs(i, 0)
    return out


def simple_subpath(p: ProperPath) -> ProperPath:
    """Drop the loops of ``p``; what remains must be a simple path."""
    kept = tuple(e for e in p.edges if not e.is_loop)
    seen = {p.start}
    for e in kept:
        if e.dst in seen:
            raise ValueError("path revisits a vertex through a non-loop edge")
        seen.add(e.dst)
    return ProperPath(p.start, kept)


def word_of_path(p: ProperPath, concatenation: Sequence[Variable]) -> Word:
    """Spell the colors of ``p`` through the variable labels of the factors.

    A full path has one edge per label; subpaths are accepted as long as
    every color indexes into ``concatenation``.
    """
    if len(p) > len(concatenation):
        raise ValueError("path is longer than the factor sequence")
    try:
        return Word.from_letters(concatenation[e.color] for e in p.edges)
    except IndexError:
        raise ValueError("edge color outside the factor sequence") from None


def to_dot(g: ColoredDigraph, labels: Sequence[str] | None = None) -> str:
    lines = ["digraph G {"]
    for v in range(g.n):
        lines.append(f'  {v + 1} [label="{v + 1}"];')
    for k, layer in enumerate(g.layers):
        tag = labels[k] if labels else f"c{k + 1}"
        for e in layer:
            lines.append(f'  {e.src + 1} -> {e.dst + 1} [label="{tag}:{e.weight}", colorscheme=set19, color={k % 9 + 1}];')
    lines.append("}")
    return "\n".join(lines)
