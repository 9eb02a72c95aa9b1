"""Two-orbit (bi-Cayley) digraphs: swaps, mixers and the M/N vanishing check."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .abelian import AbelianGroup, Character, Elem, char_sum
from .digraph import Digraph
from .errors import BadParameters, ValidationError, WrongOrbitCount
from .perm import DEFAULT_CAP, Perm, PermGroup, enumerate_group
from .spectral import DEFAULT_TOL, SpectrumEntry, find_eigenvalue, spectrum
from .symbol import SemiregularFrame, Symbol, digraph_from_symbol


@dataclass(frozen=True)
class BiSymbol:
    """The symbol ``[[S, T], [Q, R]]`` of a bi-Cayley digraph."""

    group: AbelianGroup
    S: frozenset[Elem]
    T: frozenset[Elem]
    Q: frozenset[Elem]
    R: frozenset[Elem]

    def __post_init__(self):
        if len(self.S) != len(self.R) or len(self.T) != len(self.Q):
            raise ValidationError("a bi-Cayley symbol needs |S| = |R| and |T| = |Q|")

    @classmethod
    def from_symbol(cls, s: Symbol) -> "BiSymbol":
        if s.m != 2:
            raise WrongOrbitCount(f"bi-Cayley symbols have 2 orbits, got {s.m}")
        (S, T), (Q, R) = s.entries
        return cls(s.group, S, T, Q, R)

    def to_symbol(self) -> Symbol:
        return Symbol(self.group, [[self.S, self.T], [self.Q, self.R]])

    @property
    def val(self) -> int:
        return len(self.S) + len(self.T)

    @property
    def d(self) -> int:
        return len(self.S) - len(self.T)


def _require_two(f: SemiregularFrame) -> None:
    if f.m != 2:
        raise WrongOrbitCount(f"frame has {f.m} orbits, expected 2")


def mn_sets(g: Perm, f: SemiregularFrame) -> tuple[frozenset[Elem], frozenset[Elem]]:
    """``M_g = {h : (x_1^h)^g in X_1}`` and ``N_g = {h : (x_2^h)^g in X_1}``."""
    _require_two(f)
    x1 = f.orbits[0]
    elems = f.group.elements()
    m = frozenset(h for h in elems if g(f.point(0, h)) in x1)
    n = frozenset(h for h in elems if g(f.point(1, h)) in x1)
    if len(m) + len(n) != f.group.order:
        raise ValidationError("|M_g| + |N_g| != |H|: g does not permute the points sensibly")
    return m, n


class ElementKind(str, Enum):
    PRESERVING = "orbit-preserving"
    SWAP = "swap"
    MIXER = "mixer"


def classify_element(g: Perm, f: SemiregularFrame) -> ElementKind:
    m, _ = mn_sets(g, f)
    if len(m) == f.group.order:
        return ElementKind.PRESERVING
    if not m:
        return ElementKind.SWAP
    return ElementKind.MIXER


def element_kinds(g: PermGroup, f: SemiregularFrame, cap: int = DEFAULT_CAP) -> set[ElementKind]:
    """The kinds of element present in ``g``."""
    _require_two(f)
    return {classify_element(p, f) for p in enumerate_group(g, cap)}


def has_mixer(g: PermGroup, f: SemiregularFrame, cap: int = DEFAULT_CAP) -> bool:
    _require_two(f)
    return any(classify_element(p, f) is ElementKind.MIXER for p in enumerate_group(g, cap))


def has_swap(g: PermGroup, f: SemiregularFrame, cap: int = DEFAULT_CAP) -> bool:
    _require_two(f)
    return any(classify_element(p, f) is ElementKind.SWAP for p in enumerate_group(g, cap))


@dataclass(frozen=True)
class MNReport:
    d: int
    outside: tuple[Character, ...]
    violations: tuple[tuple[Character, complex, complex], ...]

    @property
    def holds(self) -> bool:
        return not self.violations


def thm_mn_check(
    g: Perm,
    bs: BiSymbol,
    f: SemiregularFrame,
    tol: float = 1e-9,
    entries: list[SpectrumEntry] | None = None,
) -> MNReport:
    """Every character outside ``K_{S, d}`` must vanish on both ``M_g`` and ``N_g``."""
    m, n = mn_sets(g, f)
    entries = entries if entries is not None else spectrum(bs.to_symbol(), tol=DEFAULT_TOL)
    k = find_eigenvalue(entries, bs.d).characters
    outside = tuple(c for c in bs.group.characters() if c not in k)
    bad = []
    for chi in outside:
        cm, cn = char_sum(chi, m), char_sum(chi, n)
        if abs(cm) > tol or abs(cn) > tol:
            bad.append((chi, cm, cn))
    return MNReport(bs.d, outside, tuple(bad))


# --- generalized Petersen graphs ------------------------------------------


def canonical_s(n: int, s: int) -> int:
    s %= n
    return min(s, (n - s) % n)


def check_gp_parameters(n: int, s: int) -> int:
    if n < 3:
        raise BadParameters(f"GP(n, s) needs n >= 3, got n={n}")
    if s % n == 0 or (2 * s) % n == 0:
        raise BadParameters(f"GP({n}, {s}) is degenerate: need s != 0 and 2s != 0 mod n")
    return canonical_s(n, s)


def gp_symbol(n: int, s: int) -> Symbol:
    s = check_gp_parameters(n, s)
    return Symbol(AbelianGroup([n]), [[[1, -1], [0]], [[0], [s, -s]]])


def gp_graph(n: int, s: int) -> tuple[Digraph, SemiregularFrame, BiSymbol]:
    """``GP(n, s)``: outer vertex ``h`` is ``h``, inner vertex ``h`` is ``n + h``."""
    sym = gp_symbol(n, s)
    d, f = digraph_from_symbol(sym)
    return d, f, BiSymbol.from_symbol(sym)


def gp_iso_canonical(n: int, s: int) -> int:
    """Smallest of ``+-s`` and ``+-s^-1`` mod ``n``; these give isomorphic graphs."""
    s = check_gp_parameters(n, s)
    options = {s}
    try:
        inv = pow(s, -1, n)
    except ValueError:
        inv = None
    if inv is not None:
        options.add(canonical_s(n, inv))
    return min(options)
