"""Turning a problem-spec JSON document into a digraph, frame, symbol and group."""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup
from .bicayley import gp_symbol
from .digraph import Digraph, automorphism_group_oracle, orbital_closure
from .errors import ValidationError
from .perm import DEFAULT_CAP, Perm, PermGroup, enumerate_group
from .schemas import PROBLEM_SPEC, validate
from .spectral import DEFAULT_TOL
from .symbol import SemiregularFrame, Symbol, build_frame, digraph_from_symbol, extract_symbol


@dataclass(frozen=True, eq=False)
class Problem:
    digraph: Digraph
    frame: SemiregularFrame
    symbol: Symbol
    group_source: dict | None
    tol: float
    cap: int

    def group(self, budget: int | None = None) -> PermGroup:
        """The group ``G``: explicit generators, or the full automorphism group."""
        src = self.group_source or {"named": "aut-of-digraph"}
        if "generators" in src:
            g = PermGroup(self.digraph.n, tuple(_perms(src["generators"], self.digraph.n)))
            for p in g.generators:
                if not self.digraph.preserved_by(p):
                    raise ValidationError("a group generator does not preserve the digraph")
        else:
            g = automorphism_group_oracle(self.digraph, budget or 10**7)
        return g

    def check_h_inside(self, g: PermGroup) -> None:
        elems = set(enumerate_group(g, self.cap))
        if any(p not in elems for p in self.frame.h.generators):
            raise ValidationError("H is not a subgroup of G")


def _perms(images: list[list[int]], degree: int) -> list[Perm]:
    out = []
    for im in images:
        if len(im) != degree:
            raise ValidationError(f"permutation of length {len(im)} for degree {degree}")
        out.append(Perm(im))
    return out


def load_problem(obj: dict, tol: float | None = None, cap: int | None = None) -> Problem:
    validate(obj, PROBLEM_SPEC, "problem spec")
    tol = tol if tol is not None else obj.get("tol", DEFAULT_TOL)
    cap = cap if cap is not None else obj.get("cap", DEFAULT_CAP)
    (kind, payload), = obj["digraph"].items()
    hsrc = obj.get("h")
    gsrc = obj.get("group")

    if kind in ("symbol", "gp"):
        if kind == "gp":
            sym = gp_symbol(*payload)
        else:
            if "factors" not in payload and not (hsrc and "factors" in hsrc):
                raise ValidationError("symbol needs 'factors' (in the symbol or in 'h')")
            group = AbelianGroup(payload.get("factors") or hsrc["factors"])
            sym = Symbol.from_json(payload, group)
        if hsrc is not None and "factors" in hsrc and AbelianGroup(hsrc["factors"]) != sym.group:
            raise ValidationError("'h' factors differ from the symbol's group")
        if hsrc is not None and "generators" in hsrc:
            raise ValidationError("symbol inputs fix H as translations; give 'h' as factors or omit it")
        if "base" in obj:
            raise ValidationError("symbol inputs use the canonical base vector")
        d, frame = digraph_from_symbol(sym)
        return Problem(d, frame, sym, gsrc, tol, cap)

    degree = obj.get("degree")
    if degree is None:
        raise ValidationError(f"'{kind}' input needs 'degree'")
    if hsrc is None or "generators" not in hsrc:
        raise ValidationError(f"'{kind}' input needs 'h' as permutation generators")
    h = PermGroup(degree, tuple(_perms(hsrc["generators"], degree)))
    if kind == "arcs":
        d = Digraph(degree, payload)
    elif kind == "edges":
        d = Digraph.from_edges(degree, payload)
    else:
        if gsrc is None or "generators" not in gsrc:
            raise ValidationError("orbital seeds need 'group' generators")
        g = PermGroup(degree, tuple(_perms(gsrc["generators"], degree)))
        d = orbital_closure(g, payload)
    frame = build_frame(h, obj.get("base"), cap)
    sym = extract_symbol(d, frame)
    return Problem(d, frame, sym, gsrc, tol, cap)
