"""Invariant partitions described by G-triples, and the spectral block systems.

A G-triple ``(x, Delta, K)`` consists of a base vector (one point per
H-orbit), a partition ``Delta`` of the orbit indices, and a subgroup ``K`` of
``H``.  It describes the partition whose cells are ``U_{i in T} x_i^{hK}``
for ``T`` in ``Delta`` and ``h`` in ``H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import AbelianGroup, Character, Elem, generates_dual, make_subgroup, perp_of_characters
from .digraph import Digraph
from .errors import (
    BaseVectorMismatch,
    NotInvariant,
    NotPrimitive,
    NotTransitive,
    OracleDisagreement,
    SolverFailure,
    ValidationError,
)
from .perm import (
    DEFAULT_CAP,
    Partition,
    Perm,
    PermGroup,
    _UnionFind,
    enumerate_group,
    is_closed_subset,
    is_invariant_partition,
    is_primitive,
    orbits,
    small_generating_set,
)
from .spectral import DEFAULT_TOL, EigenData, eigen_data, eigenspace_V, find_eigenvalue, spectrum
from .symbol import SemiregularFrame, Symbol


@dataclass(frozen=True)
class GTriple:
    base: tuple[int, ...]
    delta: Partition
    k: frozenset[Elem]

    def to_json(self) -> dict:
        return {
            "base": list(self.base),
            "delta": self.delta.as_lists(),
            "k": [list(h) for h in sorted(self.k)],
        }

    @classmethod
    def from_json(cls, obj: dict, group: AbelianGroup | None = None) -> "GTriple":
        base = tuple(int(x) for x in obj["base"])
        delta = Partition(len(base), obj["delta"])
        k = frozenset(tuple(int(x) for x in h) for h in obj["k"])
        if group is not None:
            k = group.subset(k)
        return cls(base, delta, k)


def _check_triple(t: GTriple, f: SemiregularFrame) -> frozenset[Elem]:
    if len(t.base) != f.m or t.delta.n != f.m:
        raise BaseVectorMismatch(f"triple has {len(t.base)} base points, frame has {f.m} orbits")
    for i, x in enumerate(t.base):
        if not 0 <= x < f.degree or f.orbit_index(x) != i:
            raise BaseVectorMismatch(f"base point {x} does not lie in orbit {i}")
    return make_subgroup(f.group, t.k).elements


def build_partition(t: GTriple, f: SemiregularFrame) -> Partition:
    k = _check_triple(t, f)
    group = f.group
    cells = []
    seen: set[Elem] = set()
    for h in group.elements():
        if h in seen:
            continue
        coset = {group.add(h, c) for c in k}
        seen |= coset
        for cell in t.delta.cells:
            cells.append({f.elem_perm[a](t.base[i]) for i in cell for a in coset})
    return Partition(f.degree, cells)


def _shift(f: SemiregularFrame, x: int, y: int) -> Elem:
    """The ``h`` in ``H`` with ``x^h == y`` (same orbit required)."""
    i, a = f.locate(x)
    j, b = f.locate(y)
    if i != j:
        raise ValidationError(f"points {x} and {y} lie in different orbits")
    return f.group.sub(b, a)


def rebase(t: GTriple, f: SemiregularFrame, x: int) -> GTriple:
    """An equivalent triple whose base vector contains ``x``."""
    _check_triple(t, f)
    j = f.orbit_index(x)
    h = _shift(f, t.base[j], x)
    move = f.elem_perm[h]
    cell = t.delta.cell_of(j)
    base = tuple(move(y) if i in cell else y for i, y in enumerate(t.base))
    return GTriple(base, t.delta, t.k)


def h_kernel(b: Partition, f: SemiregularFrame) -> frozenset[Elem]:
    """Elements of ``H`` fixing every cell of ``b`` setwise."""
    idx = b.cell_index()
    return frozenset(
        h for h, p in f.elem_perm.items()
        if all(idx[p.images[x]] == idx[x] for x in range(f.degree))
    )


def recover_g_triple(b: Partition, g: PermGroup, f: SemiregularFrame, anchor: int = 0) -> GTriple:
    """A G-triple describing the ``g``-invariant partition ``b``.

    ``K`` is computed by filtering ``H`` rather than intersecting with the
    kernel of ``g``; the two agree because ``H`` lies in ``g``.
    """
    if b.n != f.degree or g.degree != f.degree:
        raise ValidationError("partition, group and frame have different degrees")
    if not g.is_transitive():
        raise NotTransitive("group is not transitive")
    if not is_invariant_partition(g, b):
        raise NotInvariant("partition is not invariant under the group")
    uf = _UnionFind(f.m)
    for cell in b.cells:
        idx = sorted({f.orbit_index(x) for x in cell})
        for i in idx[1:]:
            uf.union(idx[0], i)
    delta = Partition.from_labels(uf.labels())
    if not delta.is_uniform():
        raise NotInvariant("induced index partition is not uniform")
    k = h_kernel(b, f)
    base = [None] * f.m
    anchor_cls = delta.cell_of(f.orbit_index(anchor))
    for cls in delta.cells:
        if cls == anchor_cls:
            block = b.cell_of(anchor)
        else:
            i0 = min(cls)
            block = b.cell_of(f.base[i0])
        for i in cls:
            pts = sorted(x for x in block if f.orbit_index(x) == i)
            if not pts:
                raise NotInvariant("a block misses an orbit of its index class")
            base[i] = pts[0]
    j = f.orbit_index(anchor)
    base[j] = anchor
    triple = GTriple(tuple(base), delta, k)
    if build_partition(triple, f) != b:
        raise NotInvariant("partition is not of the form described by a G-triple")
    return triple


# --- spectral block systems ----------------------------------------------


def symbol_digraph_on_frame(s: Symbol, f: SemiregularFrame) -> Digraph:
    """The digraph with symbol ``s`` written on the frame's points."""
    if f.group != s.group or f.m != s.m:
        raise ValidationError("frame does not match the symbol")
    group = s.group
    arcs = []
    for i in range(s.m):
        for j in range(s.m):
            for a in group.elements():
                for c in s.entries[i][j]:
                    arcs.append((f.point(i, a), f.point(j, group.add(a, c))))
    return Digraph(f.degree, arcs)


@dataclass(frozen=True, eq=False)
class BlockSystem:
    value: complex
    partition: Partition
    triple: GTriple
    kernel: PermGroup = field(repr=False)
    eigen: EigenData = field(repr=False)

    @property
    def h_kernel(self) -> frozenset[Elem]:
        return self.triple.k


def _fixes(idx: np.ndarray, basis: list[np.ndarray], tol: float) -> bool:
    for w in basis:
        scale = float(np.max(np.abs(w)))
        if np.max(np.abs(w[idx] - w)) > tol * scale:
            return False
    return True


def _check_group(g: PermGroup, s: Symbol, f: SemiregularFrame) -> None:
    if g.degree != f.degree:
        raise ValidationError("group and frame have different degrees")
    d = symbol_digraph_on_frame(s, f)
    if not all(d.preserved_by(p) for p in g.generators):
        raise NotInvariant("group does not preserve the symbol digraph")


def spectral_block_system(
    g: PermGroup,
    s: Symbol,
    f: SemiregularFrame,
    lam: complex,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CAP,
    *,
    elements: list[Perm] | None = None,
    entries=None,
    anchor: int = 0,
) -> BlockSystem:
    """The block system formed by the orbits of the kernel of ``g`` on ``W_lam``."""
    _check_group(g, s, f)
    data = eigen_data(s, lam, tol, entries)
    elems = elements if elements is not None else enumerate_group(g, cap)
    kern = [p for p in elems if _fixes(f.vector_action(p), data.W, tol)]
    if not is_closed_subset(kern, g.degree):
        raise SolverFailure("eigenspace kernel is not closed; tolerance too loose")
    kgroup = PermGroup(g.degree, small_generating_set(kern, g.degree), elements=tuple(kern))
    b = Partition(g.degree, orbits(kgroup.generators, g.degree))
    triple = recover_g_triple(b, g, f, anchor)
    return BlockSystem(data.value, b, triple, kgroup, data)


def delta_lambda_chi(
    s: Symbol,
    h: AbelianGroup | None,
    lam: complex,
    chi: Character,
    tol: float = DEFAULT_TOL,
    basis: list[np.ndarray] | None = None,
) -> Partition:
    """``i ~ j`` iff row ``i`` of the eigenspace basis is ``chi(h)`` times row ``j``."""
    if h is not None and h != s.group:
        raise ValidationError("symbol is over a different group")
    if basis is None:
        basis = eigenspace_V(chi, s, lam, tol)
    u = np.column_stack(basis)
    scale = max(1.0, float(np.max(np.abs(u))))
    scalars = {complex(chi(x)) for x in s.group.elements()}
    uf = _UnionFind(s.m)
    for i in range(s.m):
        for j in range(i + 1, s.m):
            if any(np.max(np.abs(u[i] - c * u[j])) <= tol * scale for c in scalars):
                uf.union(i, j)
    return Partition.from_labels(uf.labels())


# --- extremal cases --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExtremeReport:
    value: complex
    case: str  # "i", "ii" or "none"
    blocks: BlockSystem = field(repr=False)
    kernel_trivial: bool
    delta: Partition
    meets_orbits_at_most_once: bool
    meets_orbits_exactly_once: bool
    unions_of_orbits: bool
    orbits_form_blocks: bool | None

    def to_json(self) -> dict:
        return {
            "lambda": [self.value.real, self.value.imag],
            "case": self.case,
            "kernel_trivial": self.kernel_trivial,
            "delta": self.delta.as_lists(),
            "blocks": self.blocks.partition.as_lists(),
        }


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def classify_extreme(
    s: Symbol,
    g: PermGroup,
    f: SemiregularFrame,
    lam: complex,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_CAP,
    *,
    elements: list[Perm] | None = None,
    entries=None,
) -> ExtremeReport:
    """Decide which extremal case applies at ``lam`` and check its conclusion.

    Raises :class:`OracleDisagreement` if the structural conclusion fails on
    the computed block system.
    """
    entries = entries if entries is not None else spectrum(s, tol=tol)
    entry = find_eigenvalue(entries, lam, tol)
    bs = spectral_block_system(g, s, f, entry.value, tol, cap, elements=elements, entries=entries)
    b = bs.partition
    hits = [[sum(1 for x in c if f.orbit_index(x) == i) for i in range(f.m)] for c in b.cells]
    at_most = all(max(row) <= 1 for row in hits)
    exactly = all(min(row) == 1 and max(row) == 1 for row in hits)
    unions = all(all(x in c for x in f.orbits[f.orbit_index(y)]) for c in b.cells for y in c)
    kernel_trivial = bs.kernel.order == 1
    delta = bs.triple.delta
    val = s.valency()
    scale = max(1.0, abs(val))
    is_val = abs(entry.value - val) <= tol * scale
    principal = s.group.principal
    orbit_partition = Partition(f.degree, f.orbits)
    orbits_blocks = None

    if generates_dual(list(entry.characters)) and not kernel_trivial:
        case = "i"
        ok = at_most and (not delta.is_universal() or exactly)
        if _is_prime(f.m):
            ok = ok and delta.is_universal() and exactly
    elif not is_val and entry.characters == frozenset([principal]):
        case = "ii"
        orbits_blocks = is_invariant_partition(g, orbit_partition)
        ok = unions and not b.is_universal()
        if delta.is_trivial() or _is_prime(f.m):
            ok = ok and orbits_blocks
    else:
        case = "none"
        ok = True
    if not ok:
        raise OracleDisagreement(f"extremal-case conclusion fails at lambda={entry.value}")
    return ExtremeReport(entry.value, case, bs, kernel_trivial, delta, at_most, exactly, unions, orbits_blocks)


@dataclass(frozen=True)
class PrimitiveCheck:
    valency: int
    generated: dict[complex, bool]

    @property
    def holds(self) -> bool:
        return all(self.generated.values())


def check_primitive_theorem(
    g: PermGroup, s: Symbol, f: SemiregularFrame | None = None, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP
) -> PrimitiveCheck:
    """For primitive ``g``: every non-principal eigenvalue's ``K`` generates the dual group."""
    if not is_primitive(g):
        raise NotPrimitive("group is not primitive")
    if f is not None:
        _check_group(g, s, f)
    val = s.valency()
    scale = max(1.0, abs(val))
    out = {}
    for e in spectrum(s, tol=tol):
        if abs(e.value - val) <= tol * scale:
            continue
        out[e.value] = generates_dual(list(e.characters))
    return PrimitiveCheck(val, out)


def lemma_kernel_check(bs: BlockSystem, s: Symbol) -> bool:
    """``H`` meet the kernel equals the annihilator of the character set."""
    return perp_of_characters(s.group, bs.eigen.characters).elements == bs.triple.k
