"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from semireg.abelian import AbelianGroup
from semireg.digraph import Digraph, orbital_closure
from semireg.perm import Perm, PermGroup
from semireg.symbol import Symbol, canonical_frame

# criterion number -> (passed, description); filled by test_acceptance
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}

# abelian groups of order <= 10, several as products to exercise rank > 1
SMALL_FACTORS = [[2], [3], [4], [5], [6], [7], [8], [9], [10], [2, 2], [2, 4], [3, 3], [2, 2, 2], [2, 3], [2, 5]]


def random_group(rng: random.Random, max_order: int = 10) -> AbelianGroup:
    choices = [f for f in SMALL_FACTORS if np.prod(f) <= max_order]
    return AbelianGroup(rng.choice(choices))


def random_symbol(rng: random.Random, group: AbelianGroup, m: int, density: float | None = None) -> Symbol:
    density = rng.uniform(0.1, 0.6) if density is None else density
    elems = group.elements()
    entries = [[[h for h in elems if rng.random() < density] for _ in range(m)] for _ in range(m)]
    return Symbol(group, entries)


def cyclic_shift_sigma(group: AbelianGroup, m: int, unit: int, offsets: list[tuple], step: int = 1) -> Perm:
    """``(i, a) -> (i + step mod m, unit * a + t_i)`` on the canonical frame."""
    n = group.order
    images = [0] * (m * n)
    for i in range(m):
        for a in group.elements():
            b = group.add(group.mul(unit, a), offsets[i])
            images[i * n + group.index(a)] = ((i + step) % m) * n + group.index(b)
    return Perm(images)


def random_invariant_instance(rng: random.Random, group: AbelianGroup, m: int):
    """A transitive ``G`` containing the translations of ``H`` and a ``G``-invariant digraph.

    ``G = <H, sigma>`` with ``sigma`` normalizing ``H`` and cycling the orbits;
    the digraph is the orbital closure of a few random seed arcs.
    """
    f = canonical_frame(group, m)
    exp = group.exponent
    units = [u for u in range(1, max(exp, 2)) if np.gcd(u, exp) == 1] or [1]
    elems = group.elements()
    gens = list(f.h.generators)
    gens.append(cyclic_shift_sigma(group, m, rng.choice(units), [rng.choice(elems) for _ in range(m)]))
    if rng.random() < 0.5:
        gens.append(cyclic_shift_sigma(group, m, rng.choice(units), [rng.choice(elems) for _ in range(m)], step=0))
    g = PermGroup(m * group.order, tuple(gens))
    npts = m * group.order
    seeds = [(rng.randrange(npts), rng.randrange(npts)) for _ in range(rng.randint(1, 3))]
    d = orbital_closure(g, seeds)
    return g, d, f


def to_networkx(d: Digraph) -> nx.DiGraph:
    out = nx.DiGraph()
    out.add_nodes_from(range(d.n))
    out.add_edges_from(d.arcs)
    return out


def vf2_automorphism_count(d: Digraph) -> int:
    """Independent count of digraph automorphisms via networkx VF2."""
    g = to_networkx(d)
    return sum(1 for _ in DiGraphMatcher(g, g).isomorphisms_iter())


def nx_isomorphic(a: Digraph, b: Digraph) -> bool:
    return nx.is_isomorphic(to_networkx(a), to_networkx(b))


def linkage_groups(values, radius: float) -> list[list[complex]]:
    """Single-linkage groups of complex numbers at the given radius."""
    vals = list(values)
    parent = list(range(len(vals)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if abs(vals[i] - vals[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i, v in enumerate(vals):
        groups.setdefault(find(i), []).append(v)
    return list(groups.values())


def multisets_agree(ours, dense, tol: float, radius: float) -> bool:
    """Compare eigenvalue multisets by group sizes and group means.

    A dense solver spreads a k-fold defective eigenvalue over a ring of
    radius about eps^(1/k); the ring's mean stays accurate, so groups are
    matched by mean.
    """
    ga = sorted(linkage_groups(ours, radius), key=lambda g: (len(g), np.mean(g).real, np.mean(g).imag))
    gb = linkage_groups(dense, radius)
    if len(ga) != len(gb):
        return False
    for grp in ga:
        mean = complex(np.mean(grp))
        hits = [k for k, other in enumerate(gb) if len(other) == len(grp) and abs(np.mean(other) - mean) <= tol]
        if not hits:
            return False
        gb.pop(hits[0])
    return True


def bfs_distances(d: Digraph, src: int) -> list[int]:
    dist = [-1] * d.n
    dist[src] = 0
    queue = [src]
    out = d.out_neighbors()
    for x in queue:
        for y in out[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist
