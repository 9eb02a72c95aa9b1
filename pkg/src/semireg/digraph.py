"""Finite digraphs, orbital closures, Cayley digraphs and an exact
automorphism-group search used as a brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .abelian import AbelianGroup, ElemLike
from .errors import CapExceeded, ValidationError
from .perm import Perm, PermGroup, orbit

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class Digraph:
    """Vertices ``0..n-1`` and a set of arcs ``(u, v)``; loops allowed."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __init__(self, n: int, arcs: Iterable[Sequence[int]]):
        arcset = set()
        for a in arcs:
            u, v = (int(x) for x in a)
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"arc {(u, v)} outside {n} vertices")
            arcset.add((u, v))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", frozenset(arcset))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Digraph":
        """Undirected graph: each edge contributes both arcs."""
        arcs = []
        for u, v in edges:
            arcs += [(u, v), (v, u)]
        return cls(n, arcs)

    def out_neighbors(self) -> list[list[int]]:
        out = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return [sorted(x) for x in out]

    def in_neighbors(self) -> list[list[int]]:
        inn = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            inn[v].append(u)
        return [sorted(x) for x in inn]

    def is_graph(self) -> bool:
        return all((v, u) in self.arcs for u, v in self.arcs)

    def edges(self) -> set[frozenset[int]]:
        return {frozenset(a) for a in self.arcs}

    def preserved_by(self, p: Perm) -> bool:
        im = p.images
        return all((im[u], im[v]) in self.arcs for u, v in self.arcs)

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in sorted(self.arcs)]}

    @classmethod
    def from_json(cls, obj: dict) -> "Digraph":
        return cls(int(obj["n"]), obj["arcs"])


def orbital_closure(g: PermGroup, seeds: Iterable[Sequence[int]]) -> Digraph:
    """Union of the ``g``-orbits of the seed pairs."""
    gens = [p.images for p in g.generators]
    arcs: set[tuple[int, int]] = set()
    for s in seeds:
        u, v = (int(x) for x in s)
        if not (0 <= u < g.degree and 0 <= v < g.degree):
            raise ValidationError(f"seed {(u, v)} outside degree {g.degree}")
        if (u, v) in arcs:
            continue
        arcs.add((u, v))
        todo = [(u, v)]
        while todo:
            a, b = todo.pop()
            for im in gens:
                pair = (im[a], im[b])
                if pair not in arcs:
                    arcs.add(pair)
                    todo.append(pair)
    return Digraph(g.degree, arcs)


def cayley_digraph(h: AbelianGroup, s: Iterable[ElemLike]) -> Digraph:
    """Arc ``x -> y`` iff ``y - x`` lies in ``s``; vertices in ``h``'s lexicographic order."""
    conn = h.subset(s)
    elems = h.elements()
    arcs = [(h.index(x), h.index(h.add(x, c))) for x in elems for c in conn]
    return Digraph(h.order, arcs)


# --- automorphism search -------------------------------------------------


class _Search:
    """Individualisation-refinement backtracking over ordered partitions."""

    def __init__(self, d: Digraph, budget: int):
        self.d = d
        self.n = d.n
        self.out = d.out_neighbors()
        self.inn = d.in_neighbors()
        self.budget = budget
        self.nodes = 0

    def refine(self, cells: list[list[int]]):
        """Equitable refinement; returns the new cells and a trace of every round."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise CapExceeded(f"automorphism search exceeded {self.budget} nodes")
        out, inn = self.out, self.inn
        trace = []
        while True:
            cell_of = [0] * self.n
            for k, c in enumerate(cells):
                for v in c:
                    cell_of[v] = k
            new_cells = []
            step = []
            for c in cells:
                if len(c) == 1:
                    new_cells.append(c)
                    continue
                groups: dict[tuple, list[int]] = {}
                for v in c:
                    sig = (
                        tuple(sorted(cell_of[u] for u in out[v])),
                        tuple(sorted(cell_of[u] for u in inn[v])),
                    )
                    groups.setdefault(sig, []).append(v)
                keys = sorted(groups)
                step.append(tuple((k, len(groups[k])) for k in keys))
                new_cells.extend(groups[k] for k in keys)
            trace.append(tuple(step))
            if len(new_cells) == len(cells):
                return new_cells, tuple(trace)
            cells = new_cells

    def initial(self) -> list[list[int]]:
        loops = {u for u, v in self.d.arcs if u == v}
        groups: dict[tuple, list[int]] = {}
        for v in range(self.n):
            groups.setdefault((v in loops, len(self.out[v]), len(self.inn[v])), []).append(v)
        return [groups[k] for k in sorted(groups)]

    @staticmethod
    def individualize(cells: list[list[int]], k: int, v: int) -> list[list[int]]:
        rest = [x for x in cells[k] if x != v]
        return cells[:k] + [[v], rest] + cells[k + 1:]

    @staticmethod
    def first_nonsingleton(cells: list[list[int]]) -> int:
        for k, c in enumerate(cells):
            if len(c) > 1:
                return k
        return -1


def automorphism_group_oracle(d: Digraph, cap: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """The full automorphism group of ``d`` with its exact order.

    Builds a base by repeatedly individualising the first vertex of the first
    non-singleton cell.  Then, deepest level first, it looks for one
    automorphism per new image of each base point while fixing the earlier
    base points; the results form a strong generating set, so the order is
    the product of the basic orbit lengths.  ``cap`` is a node budget.
    """
    s = _Search(d, cap)
    n = d.n
    if n == 0:
        return PermGroup(0, (), order=1)

    # path[i] = (cells before individualising, cell index, base point, trace after)
    cells, trace = s.refine(s.initial())
    path = []
    while True:
        k = s.first_nonsingleton(cells)
        if k < 0:
            break
        b = cells[k][0]
        path.append((cells, k, b))
        cells, trace = s.refine(s.individualize(cells, k, b))
        path[-1] = path[-1] + (trace,)
    leaf = cells
    depth = len(path)
    arcs = d.arcs

    def leaf_perm(q: list[list[int]]) -> Perm | None:
        images = [0] * n
        for a, b in zip(leaf, q):
            images[a[0]] = b[0]
        for u, v in arcs:
            if (images[u], images[v]) not in arcs:
                return None
        return Perm._trusted(tuple(images))

    def dfs(level: int, q: list[list[int]]) -> Perm | None:
        if level == depth:
            return leaf_perm(q)
        _, k, _, want = path[level]
        for c in list(q[k]):
            q2, tr = s.refine(s.individualize(q, k, c))
            if tr != want:
                continue
            found = dfs(level + 1, q2)
            if found is not None:
                return found
        return None

    gens: list[Perm] = []
    order = 1
    for level in range(depth - 1, -1, -1):
        cells_i, k, b, want = path[level]
        orb = orbit(gens, b, n) if gens else frozenset([b])
        for c in cells_i[k]:
            if c in orb:
                continue
            q2, tr = s.refine(s.individualize(cells_i, k, c))
            if tr != want:
                continue
            g = dfs(level + 1, q2)
            if g is not None:
                gens.append(g)
                orb = orbit(gens, b, n)
        order *= len(orb)
    return PermGroup(n, tuple(gens), order=order)


def is_edge_transitive_oracle(d: Digraph, cap: int = DEFAULT_NODE_BUDGET) -> bool:
    """Whether ``Aut(d)`` is transitive on undirected edges of the graph ``d``."""
    if not d.is_graph():
        raise ValidationError("edge-transitivity is defined here for graphs only")
    edges = d.edges()
    if not edges:
        return True
    aut = automorphism_group_oracle(d, cap)
    gens = [p.images for p in aut.generators]
    start = min(edges, key=lambda e: sorted(e))
    seen = {start}
    todo = [start]
    while todo:
        e = todo.pop()
        for im in gens:
            f = frozenset(im[x] for x in e)
            if f not in seen:
                seen.add(f)
                todo.append(f)
    return len(seen) == len(edges)


def is_vertex_transitive_oracle(d: Digraph, cap: int = DEFAULT_NODE_BUDGET) -> bool:
    aut = automorphism_group_oracle(d, cap)
    return len(orbit(aut.generators, 0, d.n)) == d.n
