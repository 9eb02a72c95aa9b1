"""Permutations, permutation groups and block-system machinery.

Points are ``0 .. n-1``.  Permutations act on the right, as in ``x^g``:
``(g * h)(x) == h(g(x))``, i.e. apply ``g`` first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapExceeded, NotInvariant, NotTransitive, ValidationError

DEFAULT_CAP = 2_000_000


class Perm:
    """An immutable permutation of ``{0, ..., n-1}`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValidationError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        """Build from disjoint cycles, e.g. ``Perm.from_cycles(4, [(0, 1, 2, 3)])``."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if a in seen or not 0 <= a < n:
                    raise ValidationError(f"bad cycle {cyc!r} for degree {n}")
                seen.add(a)
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        o = other.images
        return Perm._trusted(tuple(o[i] for i in self.images))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        from math import lcm

        k = 1
        for cyc in self.cycles():
            k = lcm(k, len(cyc))
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its minimal point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm({cyc or '()'}, n={self.degree})"


@dataclass(frozen=True)
class PermGroup:
    """A group given by generators.

    ``elements`` and ``order`` are optional facts known at construction time
    (for instance a kernel computed by filtering an enumeration, or the order
    of an automorphism group delivered by a stabiliser-chain search).
    """

    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...] | None = field(default=None, compare=False, repr=False)
    order: int | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.degree != self.degree:
                raise ValidationError(
                    f"generator of degree {g.degree} in a group of degree {self.degree}"
                )
        object.__setattr__(self, "generators", gens)
        if self.elements is not None and self.order is None:
            object.__setattr__(self, "order", len(self.elements))

    @classmethod
    def from_generators(cls, gens: Sequence[Perm], degree: int | None = None) -> "PermGroup":
        if degree is None:
            if not gens:
                raise ValidationError("degree required for a group without generators")
            degree = gens[0].degree
        return cls(degree, tuple(gens))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def orbits(self) -> list[frozenset[int]]:
        return orbits(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return len(orbit(self.generators, 0, self.degree)) == self.degree


def _check_degrees(gens: Sequence[Perm]) -> int | None:
    degrees = {g.degree for g in gens}
    if len(degrees) > 1:
        raise ValidationError(f"generators have mismatched degrees {sorted(degrees)}")
    return degrees.pop() if degrees else None


def orbit(gens: Sequence[Perm], seed: int, degree: int | None = None) -> frozenset[int]:
    """The orbit of ``seed`` under the group generated by ``gens``."""
    d = _check_degrees(gens)
    n = d if d is not None else degree
    if n is not None and not 0 <= seed < n:
        raise ValidationError(f"seed {seed} outside degree {n}")
    seen = {seed}
    todo = [seed]
    imgs = [g.images for g in gens]
    while todo:
        x = todo.pop()
        for im in imgs:
            y = im[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def orbits(gens: Sequence[Perm], degree: int) -> list[frozenset[int]]:
    """All orbits, in order of their minimal point."""
    done: set[int] = set()
    out = []
    for x in range(degree):
        if x not in done:
            o = orbit(gens, x, degree)
            done |= o
            out.append(o)
    return out


def enumerate_group(g: PermGroup, cap: int = DEFAULT_CAP) -> list[Perm]:
    """All elements of ``g``, breadth-first over words in the generators.

    Generators are tried in their given order, so the listing is
    deterministic.  Raises :class:`CapExceeded` once more than ``cap``
    elements have been found.
    """
    if cap < 1:
        raise ValidationError("cap must be >= 1")
    if g.elements is not None:
        if len(g.elements) > cap:
            raise CapExceeded(f"group order {len(g.elements)} exceeds cap {cap}")
        return list(g.elements)
    if g.order is not None and g.order > cap:
        raise CapExceeded(f"group order {g.order} exceeds cap {cap}")
    ident = tuple(range(g.degree))
    seen = {ident}
    out = [ident]
    gens = [p.images for p in g.generators]
    i = 0
    while i < len(out):
        x = out[i]
        i += 1
        for gi in gens:
            y = tuple(gi[j] for j in x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > cap:
                    raise CapExceeded(f"group has more than {cap} elements")
    return [Perm._trusted(x) for x in out]


def is_semiregular(h: PermGroup, cap: int = DEFAULT_CAP) -> tuple[bool, list[frozenset[int]]]:
    """Whether every orbit of ``h`` has size ``|h|``; also returns the orbits."""
    orbs = h.orbits()
    order = len(enumerate_group(h, cap))
    return all(len(o) == order for o in orbs), orbs


@dataclass(frozen=True)
class Partition:
    """A set partition of ``{0, ..., n-1}``, compared as a set of cells."""

    n: int
    cells: tuple[frozenset[int], ...]

    def __init__(self, n: int, cells: Iterable[Iterable[int]]):
        cs = [frozenset(c) for c in cells]
        if any(not c for c in cs):
            raise ValidationError("empty cell in partition")
        total = sum(len(c) for c in cs)
        union = frozenset().union(*cs) if cs else frozenset()
        if total != n or union != frozenset(range(n)):
            raise ValidationError(f"cells do not partition range({n})")
        cs.sort(key=min)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "cells", tuple(cs))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(n, [[i] for i in range(n)])

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls(n, [range(n)])

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(len(labels), groups.values())

    def cell_index(self) -> list[int]:
        idx = [0] * self.n
        for k, c in enumerate(self.cells):
            for x in c:
                idx[x] = k
        return idx

    def cell_of(self, x: int) -> frozenset[int]:
        for c in self.cells:
            if x in c:
                return c
        raise ValidationError(f"point {x} outside partition")

    def is_uniform(self) -> bool:
        return len({len(c) for c in self.cells}) <= 1

    def is_trivial(self) -> bool:
        return len(self.cells) == self.n

    def is_universal(self) -> bool:
        return len(self.cells) == 1

    def refines(self, other: "Partition") -> bool:
        """True iff every cell of ``self`` lies inside a cell of ``other``."""
        if self.n != other.n:
            raise ValidationError("partitions of different ground sets")
        idx = other.cell_index()
        return all(len({idx[x] for x in c}) == 1 for c in self.cells)

    def as_lists(self) -> list[list[int]]:
        return [sorted(c) for c in self.cells]

    def __len__(self) -> int:
        return len(self.cells)

    def __repr__(self) -> str:
        return f"Partition({self.as_lists()})"


def check_refinement(fine: Partition, coarse: Partition) -> bool:
    return fine.refines(coarse)


def is_invariant_partition(g: PermGroup, b: Partition) -> bool:
    """True iff each generator maps every cell onto a cell."""
    cellset = set(b.cells)
    for p in g.generators:
        im = p.images
        for c in b.cells:
            if frozenset(im[x] for x in c) not in cellset:
                return False
    return True


def kernel_of_partition_action(g: PermGroup, b: Partition, cap: int = DEFAULT_CAP) -> PermGroup:
    """The subgroup fixing every cell of ``b`` setwise, with its element list."""
    if not is_invariant_partition(g, b):
        raise NotInvariant("partition is not invariant under the group")
    idx = b.cell_index()
    keep = tuple(
        p for p in enumerate_group(g, cap)
        if all(idx[p.images[x]] == idx[x] for x in range(g.degree))
    )
    return PermGroup(g.degree, small_generating_set(keep, g.degree), elements=keep)


def small_generating_set(elements: Sequence[Perm], degree: int) -> tuple[Perm, ...]:
    """A generating set for the group formed by ``elements``.

    Raises :class:`CapExceeded` if ``elements`` generate more than
    ``len(elements)`` permutations, i.e. the set is not closed.
    """
    cap = max(len(elements), 1)
    gens: list[Perm] = []
    span = {Perm.identity(degree)}
    for p in elements:
        if p not in span:
            gens.append(p)
            span = set(enumerate_group(PermGroup(degree, tuple(gens)), cap))
    return tuple(gens)


def is_closed_subset(elements: Sequence[Perm], degree: int) -> bool:
    """Whether a finite set of permutations is a subgroup."""
    s = set(elements)
    if Perm.identity(degree) not in s:
        return False
    try:
        gens = small_generating_set(list(s), degree)
        span = enumerate_group(PermGroup(degree, gens), len(s))
    except CapExceeded:
        return False
    return set(span) == s


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            ra, rb = rb, ra
        self.parent[ra] = rb
        return True

    def labels(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]


def _require_transitive(g: PermGroup) -> None:
    if not g.is_transitive():
        raise NotTransitive("group is not transitive")


def minimal_block_of_set(g: PermGroup, points: Iterable[int]) -> Partition:
    """Finest invariant partition having all of ``points`` in one cell."""
    _require_transitive(g)
    pts = list(points)
    uf = _UnionFind(g.degree)
    queue = deque()
    for a in pts[1:]:
        if uf.union(pts[0], a):
            queue.append((pts[0], a))
    gens = [p.images for p in g.generators]
    while queue:
        a, b = queue.popleft()
        for im in gens:
            x, y = im[a], im[b]
            rx, ry = uf.find(x), uf.find(y)
            if rx != ry:
                uf.union(rx, ry)
                queue.append((rx, ry))
    return Partition.from_labels(uf.labels())


def minimal_block(g: PermGroup, pair: tuple[int, int]) -> Partition:
    """Finest ``g``-invariant partition in which ``pair`` shares a cell."""
    return minimal_block_of_set(g, pair)


def is_primitive(g: PermGroup) -> bool:
    _require_transitive(g)
    return all(minimal_block(g, (0, x)).is_universal() for x in range(1, g.degree))


def all_block_systems_oracle(g: PermGroup) -> list[Partition]:
    """Every ``g``-invariant partition, by closing minimal blocks under joins.

    Each block containing 0 is the join of the minimal blocks of the pairs
    ``(0, x)`` it contains, so pairwise joins reach all of them.
    """
    _require_transitive(g)
    n = g.degree
    found: dict[frozenset, Partition] = {}
    for x in range(1, n):
        p = minimal_block(g, (0, x))
        found.setdefault(p.cell_of(0), p)
    frontier = list(found)
    while frontier:
        new = []
        blocks = list(found)
        for a in frontier:
            for b in blocks:
                if a <= b or b <= a:
                    continue
                p = minimal_block_of_set(g, a | b)
                key = p.cell_of(0)
                if key not in found:
                    found[key] = p
                    new.append(key)
        frontier = new
    systems = {Partition.singletons(n), Partition.universal(n), *found.values()}
    return sorted(systems, key=lambda p: (-len(p.cells), p.as_lists()))
