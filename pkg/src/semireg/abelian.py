"""Finite abelian groups ``Z_d1 x ... x Z_dr``, their characters, and duality.

Elements and characters are both exponent tuples.  The character with
exponents ``a`` sends ``h`` to ``exp(2 pi i sum_k a_k h_k / d_k)``.  Character
values are kept as exact roots of unity; only sums go to floating point.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import NotASubgroup, ValidationError

Elem = tuple[int, ...]
ElemLike = Union[int, Sequence[int]]

ZERO_TOL = 1e-9


@dataclass(frozen=True)
class RootOfUnity:
    """The exact value ``exp(2 pi i k / N)`` in lowest terms."""

    k: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValidationError("root of unity needs N >= 1")
        k = self.k % self.N
        g = math.gcd(k, self.N)
        object.__setattr__(self, "k", k // g)
        object.__setattr__(self, "N", self.N // g)

    def is_one(self) -> bool:
        return self.k == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        n = math.lcm(self.N, other.N)
        return RootOfUnity(self.k * (n // self.N) + other.k * (n // other.N), n)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(-self.k, self.N)

    def __complex__(self) -> complex:
        return _root(self.k, self.N)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RootOfUnity):
            return (self.k, self.N) == (other.k, other.N)
        if isinstance(other, (int, float, complex)):
            return abs(complex(self) - other) < ZERO_TOL
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.k, self.N))


def _root(k: int, n: int) -> complex:
    # exact values at the quarter turns keep small examples free of 1e-17 noise
    k %= n
    if 4 * k % n == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * k // n]
    return cmath.exp(2j * math.pi * k / n)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z_d1 x ... x Z_dr`` with componentwise modular arithmetic."""

    factors: tuple[int, ...]

    def __init__(self, factors: Iterable[int]):
        fs = tuple(int(d) for d in factors)
        if not fs or any(d < 1 for d in fs):
            raise ValidationError(f"bad factor orders {fs!r}")
        object.__setattr__(self, "factors", fs)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    def __len__(self) -> int:
        return self.order

    def elem(self, h: ElemLike) -> Elem:
        """Normalise an int (cyclic groups only) or tuple to a reduced element."""
        if not isinstance(h, (tuple, list)):
            if self.rank != 1:
                raise ValidationError("integer elements only make sense for cyclic groups")
            h = (int(h),)
        h = tuple(int(x) for x in h)
        if len(h) != self.rank:
            raise ValidationError(f"element {h!r} has wrong length for factors {self.factors}")
        return tuple(x % d for x, d in zip(h, self.factors))

    def subset(self, items: Iterable[ElemLike]) -> frozenset[Elem]:
        return frozenset(self.elem(h) for h in items)

    def elements(self) -> list[Elem]:
        """All elements in lexicographic order of exponent tuples."""
        return list(itertools.product(*(range(d) for d in self.factors)))

    def index(self, h: Elem) -> int:
        i = 0
        for x, d in zip(h, self.factors):
            i = i * d + x
        return i

    @property
    def zero(self) -> Elem:
        return (0,) * self.rank

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a: Elem) -> Elem:
        return tuple(-x % d for x, d in zip(a, self.factors))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.factors))

    def mul(self, k: int, a: Elem) -> Elem:
        return tuple(k * x % d for x, d in zip(a, self.factors))

    def elem_order(self, a: Elem) -> int:
        return reduce(math.lcm, (d // math.gcd(x, d) for x, d in zip(a, self.factors)), 1)

    def character(self, a: ElemLike) -> "Character":
        return Character(self, self.elem(a))

    def characters(self) -> list["Character"]:
        return [Character(self, a) for a in self.elements()]

    @property
    def principal(self) -> "Character":
        return Character(self, self.zero)


@dataclass(frozen=True)
class Character:
    group: AbelianGroup
    exps: Elem

    def __call__(self, h: ElemLike) -> RootOfUnity:
        return char_eval(self, h)

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.group, self.group.add(self.exps, other.exps))

    def inverse(self) -> "Character":
        return Character(self.group, self.group.neg(self.exps))

    def is_principal(self) -> bool:
        return not any(self.exps)

    def __repr__(self) -> str:
        e = self.exps[0] if len(self.exps) == 1 else self.exps
        return f"chi{e}"


def _phase(chi: Character, h: Elem) -> int:
    """Numerator ``k`` of ``chi(h) = exp(2 pi i k / N)`` with ``N`` the exponent."""
    n = chi.group.exponent
    return sum(a * x * (n // d) for a, x, d in zip(chi.exps, h, chi.group.factors)) % n


def char_eval(chi: Character, h: ElemLike) -> RootOfUnity:
    """``chi(h)`` as an exact root of unity."""
    h = chi.group.elem(h)
    return RootOfUnity(_phase(chi, h), chi.group.exponent)


def char_sum(chi: Character, s: Iterable[ElemLike]) -> complex:
    """``chi(S)``; the empty sum is 0.

    Terms are bucketed by exact phase first, so each distinct root of unity
    is evaluated once.
    """
    g = chi.group
    n = g.exponent
    counts: dict[int, int] = {}
    for h in s:
        k = _phase(chi, g.elem(h))
        counts[k] = counts.get(k, 0) + 1
    if not counts:
        return 0j
    if len(counts) == 1:
        (k, c), = counts.items()
        return c * _root(k, n)
    total = sum(c * _root(k, n) for k, c in counts.items())
    # snap float noise so exact zeros compare equal to 0
    re = 0.0 if abs(total.real) < 1e-13 else total.real
    im = 0.0 if abs(total.imag) < 1e-13 else total.imag
    return complex(re, im)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of an :class:`AbelianGroup` with a generating set."""

    group: AbelianGroup
    elements: frozenset[Elem]
    gens: tuple[Elem, ...]

    def __contains__(self, h) -> bool:
        return self.group.elem(h) in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Subgroup):
            return self.elements == other.elements
        if isinstance(other, (set, frozenset)):
            return self.elements == frozenset(self.group.elem(h) for h in other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup({sorted(self.elements)})"


def span(group: AbelianGroup, gens: Iterable[Elem]) -> frozenset[Elem]:
    """The subgroup generated by ``gens`` (closure under addition)."""
    out = {group.zero}
    frontier = [group.zero]
    gens = [group.elem(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.add(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def make_subgroup(group: AbelianGroup, elements: Iterable[ElemLike]) -> Subgroup:
    """Validate closure and attach a greedy generating set."""
    elems = frozenset(group.elem(h) for h in elements)
    if group.zero not in elems or any(group.add(a, b) not in elems for a in elems for b in elems):
        raise NotASubgroup(f"{sorted(elems)} is not a subgroup of Z{group.factors}")
    gens: list[Elem] = []
    cur = frozenset([group.zero])
    for h in sorted(elems):
        if h not in cur:
            gens.append(h)
            cur = span(group, gens)
    return Subgroup(group, elems, tuple(gens))


def perp_of_characters(group: AbelianGroup, chars: Iterable[Character]) -> Subgroup:
    """``{h : chi(h) = 1 for all chi}``, decided by exact congruences."""
    chars = list(chars)
    elems = [h for h in group.elements() if all(_phase(c, h) == 0 for c in chars)]
    return make_subgroup(group, elems)


def perp_of_subgroup(group: AbelianGroup, sub: Iterable[ElemLike]) -> frozenset[Character]:
    """All characters trivial on the subgroup ``sub``."""
    if isinstance(sub, Subgroup):
        elems = sub.elements
    else:
        elems = make_subgroup(group, sub).elements
    out = frozenset(c for c in group.characters() if all(_phase(c, h) == 0 for h in elems))
    if len(out) * len(elems) != group.order:
        raise AssertionError("duality count |L| |L-perp| = |H| violated")
    return out


def subgroup_generated_by_chars(chars: Iterable[Character]) -> frozenset[Character]:
    """Closure of ``chars`` under products in the dual group."""
    chars = list(chars)
    if not chars:
        raise ValidationError("need at least one character to know the group")
    group = chars[0].group
    return frozenset(Character(group, a) for a in span(group, [c.exps for c in chars]))


def generates_dual(chars: Iterable[Character]) -> bool:
    chars = list(chars)
    return len(subgroup_generated_by_chars(chars)) == chars[0].group.order
