"""Semiregular frames and symbols of H-invariant digraphs.

A frame fixes every ordering once: the abelian group's elements in
lexicographic order of exponent tuples, the H-orbits by minimal point, and a
base vector with one point per orbit.  The induced vertex order lists
``x_1^{h_1}, ..., x_1^{h_n}, x_2^{h_1}, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .abelian import AbelianGroup, Elem, ElemLike
from .digraph import Digraph
from .errors import (
    BadBaseChoice,
    NotAbelian,
    NotInvariantUnderH,
    NotSemiregular,
    ValidationError,
)
from .perm import DEFAULT_CAP, Perm, PermGroup, enumerate_group


def abelian_structure(h: PermGroup, cap: int = DEFAULT_CAP) -> tuple[AbelianGroup, dict[Elem, Perm]]:
    """Decompose an abelian permutation group as ``Z_d1 x ... x Z_dr``.

    Greedy peeling: repeatedly take the first element (in enumeration order)
    of maximal order modulo the part already split off whose order equals
    that quotient order.  Returns the abstract group and the map from exponent
    tuples to permutations.
    """
    if not h.is_abelian():
        raise NotAbelian("generators do not commute")
    elems = enumerate_group(h, cap)
    ident = Perm.identity(h.degree)
    current = {ident}
    gens: list[Perm] = []
    orders: list[int] = []
    while len(current) < len(elems):
        best = None
        for y in elems:
            k, p = 1, y
            while p not in current:
                p = p * y
                k += 1
            if best is None or k > best[0]:
                if (y ** k) == ident:
                    best = (k, y)
        if best is None or best[0] == 1:
            raise NotAbelian("could not split off a cyclic factor")
        k, y = best
        powers = [y ** e for e in range(k)]
        current = {c * p for c in current for p in powers}
        gens.append(y)
        orders.append(k)
    if not gens:
        group = AbelianGroup([1])
        return group, {(0,): ident}
    group = AbelianGroup(orders)
    table: dict[Elem, Perm] = {}
    for e in group.elements():
        p = ident
        for g, x in zip(gens, e):
            p = p * g ** x
        table[e] = p
    if len(set(table.values())) != len(elems):
        raise NotAbelian("cyclic decomposition is not a bijection")
    return group, table


@dataclass(frozen=True, eq=False)
class SemiregularFrame:
    h: PermGroup
    group: AbelianGroup
    elem_perm: dict
    orbits: tuple[frozenset[int], ...]
    base: tuple[int, ...]

    def __post_init__(self):
        n = self.group.order
        pts = [self.elem_perm[e](x) for x in self.base for e in self.group.elements()]
        if sorted(pts) != list(range(self.h.degree)):
            raise ValidationError("frame does not biject orbit x group onto the points")
        locate = {}
        for i, x in enumerate(self.base):
            for e in self.group.elements():
                locate[self.elem_perm[e](x)] = (i, e)
        object.__setattr__(self, "_order", tuple(pts))
        object.__setattr__(self, "_locate", locate)
        object.__setattr__(self, "_position", {p: k for k, p in enumerate(pts)})
        object.__setattr__(self, "_n", n)

    @property
    def m(self) -> int:
        return len(self.orbits)

    @property
    def degree(self) -> int:
        return self.h.degree

    def point(self, i: int, h: ElemLike) -> int:
        """The point ``x_i^h``."""
        return self.elem_perm[self.group.elem(h)](self.base[i])

    def locate(self, x: int) -> tuple[int, Elem]:
        """``(i, h)`` with ``x == x_i^h``."""
        return self._locate[x]

    def orbit_index(self, x: int) -> int:
        return self._locate[x][0]

    @property
    def vertex_order(self) -> tuple[int, ...]:
        return self._order

    def position(self, x: int) -> int:
        return self._position[x]

    def vector_action(self, p: Perm) -> np.ndarray:
        """Index array ``idx`` with ``v^p == v[idx]`` in frame coordinates.

        The linear action is ``(v^p)_x = v_{x^p}``.
        """
        pos = self._position
        return np.array([pos[p.images[x]] for x in self._order], dtype=np.intp)

    def with_base(self, base: Sequence[int]) -> "SemiregularFrame":
        return build_frame(self.h, base, _structure=(self.group, self.elem_perm))


def build_frame(
    h: PermGroup,
    base_choice: Sequence[int] | None = None,
    cap: int = DEFAULT_CAP,
    _structure: tuple[AbelianGroup, dict] | None = None,
) -> SemiregularFrame:
    """Orbits by minimal point, default base = minimal point of each orbit."""
    if not h.is_abelian():
        raise NotAbelian("generators do not commute")
    group, table = _structure if _structure is not None else abelian_structure(h, cap)
    orbs = h.orbits()
    if any(len(o) != group.order for o in orbs):
        raise NotSemiregular("orbit sizes differ from the group order")
    if base_choice is None:
        base = tuple(min(o) for o in orbs)
    else:
        base_choice = [int(x) for x in base_choice]
        hits = [[x for x in base_choice if x in o] for o in orbs]
        if len(base_choice) != len(orbs) or any(len(hh) != 1 for hh in hits):
            raise BadBaseChoice("base vector must pick exactly one point per H-orbit")
        base = tuple(hh[0] for hh in hits)
    return SemiregularFrame(h, group, dict(table), tuple(orbs), base)


@dataclass(frozen=True)
class Symbol:
    """An ``m x m`` array of subsets of an abelian group."""

    group: AbelianGroup
    entries: tuple[tuple[frozenset[Elem], ...], ...]

    def __init__(self, group: AbelianGroup, entries: Iterable[Iterable[Iterable[ElemLike]]]):
        rows = tuple(tuple(group.subset(e) for e in row) for row in entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValidationError("symbol must be square")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "entries", rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.group == other.group and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.group, self.entries))

    @property
    def m(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> frozenset[Elem]:
        i, j = ij
        return self.entries[i][j]

    def row_valency(self, i: int) -> int:
        return sum(len(e) for e in self.entries[i])

    def valency(self) -> int:
        return self.row_valency(0)

    def to_json(self) -> dict:
        return {
            "factors": list(self.group.factors),
            "m": self.m,
            "entries": [[[list(h) for h in sorted(e)] for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict, group: AbelianGroup | None = None) -> "Symbol":
        if group is None:
            group = AbelianGroup(obj["factors"])
        sym = cls(group, obj["entries"])
        if "m" in obj and int(obj["m"]) != sym.m:
            raise ValidationError(f"symbol declares m={obj['m']} but has {sym.m} rows")
        return sym

    def __repr__(self) -> str:
        def fmt(e):
            items = sorted(h[0] if len(h) == 1 else h for h in e)
            return "{" + ",".join(map(str, items)) + "}" if items else "{}"

        return "Symbol[" + "; ".join(" ".join(fmt(e) for e in row) for row in self.entries) + "]"


def extract_symbol(d: Digraph, f: SemiregularFrame) -> Symbol:
    """``S_ij = {h : x_i -> x_j^h}``; checks that H preserves the arcs first."""
    if d.n != f.degree:
        raise ValidationError("digraph and frame have different point sets")
    for p in f.h.generators:
        if not d.preserved_by(p):
            raise NotInvariantUnderH("an H generator does not preserve the arcs")
    elems = f.group.elements()
    entries = [
        [[h for h in elems if (f.base[i], f.point(j, h)) in d.arcs] for j in range(f.m)]
        for i in range(f.m)
    ]
    return Symbol(f.group, entries)


def cayley_block(group: AbelianGroup, s: Iterable[Elem]) -> np.ndarray:
    """Adjacency of ``Cay(H, S)``: entry ``(a, b)`` is 1 iff ``b - a`` is in ``S``."""
    n = group.order
    a = np.zeros((n, n), dtype=np.int64)
    for x in group.elements():
        for c in s:
            a[group.index(x), group.index(group.add(x, c))] = 1
    return a


def assemble_adjacency(s: Symbol, f: SemiregularFrame | AbelianGroup | None = None) -> np.ndarray:
    """The block matrix whose ``(i, j)`` block is the Cayley adjacency of ``S_ij``."""
    group = s.group
    if isinstance(f, SemiregularFrame) and f.group != group:
        raise ValidationError("symbol and frame use different abelian groups")
    n = group.order
    m = s.m
    a = np.zeros((m * n, m * n), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            a[i * n:(i + 1) * n, j * n:(j + 1) * n] = cayley_block(group, s.entries[i][j])
    return a


def translation_group(group: AbelianGroup, m: int) -> tuple[PermGroup, dict[Elem, Perm]]:
    """``H`` acting on ``m`` copies of itself by translation (vertex ``i*n + idx(h)``)."""
    n = group.order
    elems = group.elements()

    def shift(t: Elem) -> Perm:
        images = [0] * (m * n)
        for i in range(m):
            for x in elems:
                images[i * n + group.index(x)] = i * n + group.index(group.add(x, t))
        return Perm._trusted(tuple(images))

    table = {t: shift(t) for t in elems}
    unit_gens = []
    for k, d in enumerate(group.factors):
        if d > 1:
            e = [0] * group.rank
            e[k] = 1
            unit_gens.append(table[tuple(e)])
    return PermGroup(m * n, tuple(unit_gens)), table


def canonical_frame(group: AbelianGroup, m: int) -> SemiregularFrame:
    h, table = translation_group(group, m)
    n = group.order
    orbs = tuple(frozenset(range(i * n, (i + 1) * n)) for i in range(m))
    return SemiregularFrame(h, group, table, orbs, tuple(i * n for i in range(m)))


def digraph_from_symbol(s: Symbol, group: AbelianGroup | None = None) -> tuple[Digraph, SemiregularFrame]:
    """The digraph on ``m |H|`` vertices whose symbol in the canonical frame is ``s``."""
    group = group or s.group
    if group != s.group:
        raise ValidationError("symbol is over a different group")
    f = canonical_frame(group, s.m)
    n = group.order
    arcs = []
    for i in range(s.m):
        for j in range(s.m):
            for a in group.elements():
                for c in s.entries[i][j]:
                    arcs.append((i * n + group.index(a), j * n + group.index(group.add(a, c))))
    return Digraph(s.m * n, arcs), f
