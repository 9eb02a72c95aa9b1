"""Edge-transitive generalized Petersen graphs.

The classification runs in two steps.  A character filter decides whether
``K_{S,1}`` can contain a non-principal character, which a mixer requires;
when it can, ``GP(n, s)`` would be a cyclic cover of the cube or of the
Petersen graph.  The second step enumerates the cyclic covers of those two
graphs along which a fixed mixer lifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .abelian import AbelianGroup
from .bicayley import canonical_s, check_gp_parameters, gp_graph, gp_iso_canonical
from .digraph import DEFAULT_NODE_BUDGET, Digraph, is_edge_transitive_oracle
from .errors import OracleDisagreement, ValidationError
from .perm import Perm
from .spectral import DEFAULT_TOL, spectrum
from .symbol import Symbol

Affine = tuple[int, int]  # c0 + c1 * a


@dataclass(frozen=True)
class VoltageBase:
    """A base graph with a spanning tree and voltages affine in a parameter ``a``.

    ``cotree`` maps each oriented cotree arc to its voltage ``(c0, c1)``,
    meaning ``c0 + c1 * a``; tree arcs carry voltage 0.  ``outer`` and
    ``inner`` list the rims in cyclic order and ``spoke`` joins them.
    """

    name: str
    n: int
    edges: frozenset[frozenset[int]]
    tree: tuple[tuple[int, int], ...]
    cotree: tuple[tuple[tuple[int, int], Affine], ...]
    alpha: Perm
    outer: tuple[int, ...]
    inner: tuple[int, ...]

    def voltage(self, u: int, v: int) -> Affine:
        for (x, y), c in self.cotree:
            if (x, y) == (u, v):
                return c
            if (x, y) == (v, u):
                return (-c[0], -c[1])
        if frozenset((u, v)) not in self.edges:
            raise ValidationError(f"{u}{v} is not an edge of the {self.name}")
        return (0, 0)

    def tree_path(self, u: int, v: int) -> list[int]:
        adj: dict[int, list[int]] = {x: [] for x in range(self.n)}
        for x, y in self.tree:
            adj[x].append(y)
            adj[y].append(x)
        prev = {u: None}
        todo = [u]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    todo.append(y)
        path = [v]
        while path[-1] != u:
            path.append(prev[path[-1]])
        return path[::-1]

    def cycles(self) -> list[list[int]]:
        """Fundamental cycles: each cotree arc ``u -> v`` closed by the tree path ``v -> u``."""
        return [[u] + self.tree_path(v, u) for (u, v), _ in self.cotree]

    def walk_voltage(self, walk: list[int]) -> Affine:
        c0 = c1 = 0
        for u, v in zip(walk, walk[1:]):
            d0, d1 = self.voltage(u, v)
            c0 += d0
            c1 += d1
        return (c0, c1)

    def equations(self) -> list[tuple[Affine, Affine]]:
        """Pairs ``(zeta(C), zeta(C^alpha))``; lifting needs ``lam * zeta(C) = zeta(C^alpha)``."""
        out = []
        for cyc in self.cycles():
            image = [self.alpha(x) for x in cyc]
            out.append((self.walk_voltage(cyc), self.walk_voltage(image)))
        return out

    def graph(self) -> Digraph:
        return Digraph.from_edges(self.n, [tuple(e) for e in self.edges])


def _rim_base(name: str, k: int, inner_step: int, tree, cotree, alpha_cycles) -> VoltageBase:
    outer = tuple(range(k))
    inner_order = [k + (i * inner_step) % k for i in range(k)]
    edges = {frozenset((i, (i + 1) % k)) for i in range(k)}
    edges |= {frozenset((i, k + i)) for i in range(k)}
    edges |= {frozenset((inner_order[i], inner_order[(i + 1) % k])) for i in range(k)}
    return VoltageBase(
        name, 2 * k, frozenset(edges), tuple(tree), tuple(cotree),
        Perm.from_cycles(2 * k, alpha_cycles), outer, tuple(range(k, 2 * k)),
    )


def cube_base() -> VoltageBase:
    return _rim_base(
        "cube", 4, 1,
        tree=[(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)],
        cotree=[((3, 0), (1, 0)), ((4, 5), (0, 1)), ((5, 6), (0, 1)), ((6, 7), (0, 1)), ((7, 4), (1, 1))],
        alpha_cycles=[(1, 3, 4), (5, 2, 7)],
    )


def petersen_base() -> VoltageBase:
    return _rim_base(
        "petersen", 5, 2,
        tree=[(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)],
        cotree=[
            ((4, 0), (1, 0)), ((5, 7), (0, 1)), ((6, 8), (0, 1)),
            ((7, 9), (0, 1)), ((8, 5), (1, 1)), ((9, 6), (1, 1)),
        ],
        alpha_cycles=[(1, 5, 4), (2, 8, 9), (3, 6, 7)],
    )


BASES = {"cube": cube_base, "petersen": petersen_base}


def get_base(name: str) -> VoltageBase:
    try:
        return BASES[name]()
    except KeyError:
        raise ValidationError(f"unknown voltage base {name!r}; use 'cube' or 'petersen'") from None


def _ev(c: Affine, a: int, m: int) -> int:
    return (c[0] + c[1] * a) % m


def derived_graph(base: VoltageBase, m: int, a: int) -> Digraph:
    """The ``Z_m`` cover: vertex ``(v, t)`` is ``v * m + t``."""
    arcs = []
    for e in base.edges:
        u, v = tuple(e)
        z = _ev(base.voltage(u, v), a, m)
        for t in range(m):
            arcs.append((u * m + t, v * m + (t + z) % m))
            arcs.append((v * m + (t + z) % m, u * m + t))
    return Digraph(base.n * m, arcs)


def cover_gp_label(base: VoltageBase, m: int, a: int) -> tuple[int, int]:
    """``(n, s)`` with the derived cover equal to ``GP(n, s)``, checked edge by edge.

    The lift of the outer rim through ``(0, 0)`` is the outer cycle of the
    cover; spokes fix the inner labels and the inner rim gives ``s``.
    """
    cover = derived_graph(base, m, a)
    adj = cover.out_neighbors()
    k = len(base.outer)
    n = k * m
    outer = [0]
    t = 0
    for step in range(n - 1):
        u, v = base.outer[step % k], base.outer[(step + 1) % k]
        t = (t + _ev(base.voltage(u, v), a, m)) % m
        outer.append(v * m + t)
    if len(set(outer)) != n or outer[0] not in adj[outer[-1]]:
        raise ValidationError("outer rim does not lift to a single cycle")
    outer_set = set(outer)
    inner = [next(y for y in adj[x] if y not in outer_set) for x in outer]
    pos = {x: i for i, x in enumerate(inner)}
    nbrs = [pos[y] for y in adj[inner[0]] if y in pos]
    s = canonical_s(n, nbrs[0])
    label = {x: i for i, x in enumerate(outer)}
    label.update({x: n + i for i, x in enumerate(inner)})
    relabelled = Digraph(2 * n, [(label[u], label[v]) for u, v in cover.arcs])
    if relabelled.arcs != gp_graph(n, s)[0].arcs:
        raise ValidationError(f"cover is not GP({n}, {s}) under the rim labelling")
    return n, s


@dataclass(frozen=True)
class LiftSolution:
    lam: int
    a: int
    n: int
    s: int

    @property
    def canonical(self) -> tuple[int, int]:
        return self.n, gp_iso_canonical(self.n, self.s)


def lift_solutions(base: VoltageBase, m: int) -> Iterator[tuple[int, int]]:
    """All ``(lam, a)`` with ``lam`` a unit of ``Z_m`` solving every cycle equation."""
    eqs = base.equations()
    for lam in range(m):
        if math.gcd(lam, m) != 1:
            continue
        for a in range(m):
            if all((lam * _ev(lhs, a, m) - _ev(rhs, a, m)) % m == 0 for lhs, rhs in eqs):
                yield lam, a


def gp_cover_lift(base: str | VoltageBase, m: int) -> list[LiftSolution]:
    if m < 1:
        raise ValidationError("m must be >= 1")
    vb = get_base(base) if isinstance(base, str) else base
    out = []
    for lam, a in lift_solutions(vb, m):
        n, s = cover_gp_label(vb, m, a)
        out.append(LiftSolution(lam % m if m > 1 else 1, a, n, s))
    return out


# --- character filter ----------------------------------------------------


@dataclass(frozen=True)
class FilterReport:
    n: int
    s: int
    cube: bool
    petersen: bool
    numeric_agrees: bool | None = None

    @property
    def positive(self) -> bool:
        return self.cube or self.petersen

    @property
    def quotients(self) -> list[str]:
        return [q for q, ok in (("cube", self.cube), ("petersen", self.petersen)) if ok]

    def to_json(self) -> dict:
        return {
            "n": self.n, "s": self.s, "positive": self.positive,
            "quotients": self.quotients, "numeric_agrees": self.numeric_agrees,
        }


def nonprincipal_in_k1(n: int, s: int, tol: float = DEFAULT_TOL) -> bool:
    """Numerically: is 1 an eigenvalue of ``chi(S)`` for some non-principal ``chi``?"""
    sym = Symbol(AbelianGroup([n]), [[[1, -1], [0]], [[0], [s, -s]]])
    for e in spectrum(sym, tol=tol):
        if abs(e.value - 1) <= tol * 3:
            return any(not c.is_principal() for c in e.characters)
    return False


def gp_character_filter(n: int, s: int, numeric: bool = True) -> FilterReport:
    """Exact test for non-principal characters in ``K_{S,1}`` of ``GP(n, s)``."""
    s = check_gp_parameters(n, s)
    cube = n % 4 == 0 and s % 4 in (1, 3)
    petersen = n % 5 == 0 and s % 5 in (2, 3)
    agrees = None
    if numeric:
        agrees = nonprincipal_in_k1(n, s) == (cube or petersen)
    return FilterReport(n, s, cube, petersen, agrees)


# --- classification --------------------------------------------------------


@dataclass
class ClassifyRow:
    n: int
    s: int
    filter: FilterReport
    candidate: bool
    oracle: bool | None

    def to_json(self) -> dict:
        return {
            "n": self.n, "s": self.s, "filter": self.filter.positive,
            "quotients": self.filter.quotients, "candidate": self.candidate, "oracle": self.oracle,
        }


@dataclass
class ClassifyReport:
    n_max: int
    pairs: list[tuple[int, int]]
    rows: list[ClassifyRow] = field(repr=False)
    lifts: dict[tuple[str, int], list[LiftSolution]] = field(repr=False)
    both_quotients_empty: bool = True

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "pairs": [list(p) for p in self.pairs],
            "both_quotients_empty": self.both_quotients_empty,
            "rows": [r.to_json() for r in self.rows],
        }


ORACLE_MAX_VERTICES = 64


def gp_pairs(n_max: int) -> Iterator[tuple[int, int]]:
    for n in range(3, n_max + 1):
        for s in range(1, (n + 1) // 2):
            if (2 * s) % n:
                yield n, s


def gp_classify(
    n_max: int,
    oracle: bool = True,
    budget: int = DEFAULT_NODE_BUDGET,
) -> ClassifyReport:
    """Edge-transitive ``GP(n, s)`` with ``n <= n_max``, in canonical form.

    With ``oracle`` set, every pair on at most 64 vertices is also decided by
    the automorphism search; any disagreement raises
    :class:`OracleDisagreement`.
    """
    if n_max < 3:
        raise ValidationError("n_max must be >= 3")
    lifts: dict[tuple[str, int], list[LiftSolution]] = {}

    def lift_labels(name: str, m: int) -> set[tuple[int, int]]:
        if (name, m) not in lifts:
            lifts[name, m] = gp_cover_lift(name, m)
        return {sol.canonical for sol in lifts[name, m]}

    rows = []
    found = set()
    both_empty = True
    for n, s in gp_pairs(n_max):
        rep = gp_character_filter(n, s, numeric=oracle)
        if rep.numeric_agrees is False:
            raise OracleDisagreement(f"character filter disagrees with the spectrum for GP({n},{s})")
        key = (n, gp_iso_canonical(n, s))
        cand = False
        if rep.cube and key in lift_labels("cube", n // 4):
            cand = True
        if rep.petersen and key in lift_labels("petersen", n // 5):
            cand = True
        if rep.cube and rep.petersen and cand:
            both_empty = False
        et = None
        if oracle and 2 * n <= ORACLE_MAX_VERTICES:
            et = is_edge_transitive_oracle(gp_graph(n, s)[0], budget)
            if et != cand:
                raise OracleDisagreement(f"GP({n},{s}): pipeline says {cand}, oracle says {et}")
        if cand:
            found.add(key)
        rows.append(ClassifyRow(n, s, rep, cand, et))
    return ClassifyReport(n_max, sorted(found), rows, lifts, both_empty)
