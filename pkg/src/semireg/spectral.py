"""Spectra of symbol digraphs through their character matrices.

For a symbol over an abelian group ``H`` the adjacency matrix splits into
one small ``m x m`` matrix per character, ``chi(S)[i, j] = chi(S_ij)``.  The
eigenvalues of the digraph are the pooled eigenvalues of these matrices,
and each eigenspace is a sum of tensor products ``u (x) v_chi``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .abelian import AbelianGroup, Character, char_sum
from .errors import NotAnEigenvalue, ValidationError
from .perm import _UnionFind
from .roots import eigenvalues
from .symbol import SemiregularFrame, Symbol

DEFAULT_TOL = 1e-8


class BorderlineClusterWarning(UserWarning):
    """Two eigenvalues are close to, but not within, the clustering tolerance."""


@dataclass(frozen=True, eq=False)
class CharMatrix:
    chi: Character
    matrix: np.ndarray


def char_matrix(chi: Character, s: Symbol) -> CharMatrix:
    """The ``m x m`` matrix with entries ``chi(S_ij)``."""
    if chi.group != s.group:
        raise ValidationError("character and symbol live on different groups")
    mat = np.array([[char_sum(chi, e) for e in row] for row in s.entries], dtype=complex)
    return CharMatrix(chi, mat.reshape(s.m, s.m))


def _is_hermitian(a: np.ndarray) -> bool:
    return bool(np.allclose(a, a.conj().T, rtol=0, atol=1e-12))


def character_eigenvalues(s: Symbol) -> dict[Character, list[complex]]:
    """Eigenvalues of every ``chi(S)``, keyed by character in group order."""
    return {chi: eigenvalues(char_matrix(chi, s).matrix) for chi in s.group.characters()}


def pooled_eigenvalues(s: Symbol) -> list[complex]:
    return [v for vals in character_eigenvalues(s).values() for v in vals]


@dataclass(frozen=True)
class SpectrumEntry:
    """One clustered eigenvalue with its multiplicity and character set ``K``."""

    value: complex
    characters: frozenset[Character]
    multiplicity: int

    def __iter__(self):
        # unpacks as (value, characters) like the documented pair
        return iter((self.value, self.characters))

    @property
    def real(self) -> float:
        return self.value.real


def _cluster(vals: list[complex], tol: float) -> list[list[int]]:
    scale = max([1.0] + [abs(v) for v in vals])
    uf = _UnionFind(len(vals))
    borderline = []
    for a in range(len(vals)):
        for b in range(a + 1, len(vals)):
            d = abs(vals[a] - vals[b])
            if d <= tol * scale:
                uf.union(a, b)
            elif d <= 100 * tol * scale:
                borderline.append((vals[a], vals[b]))
    labels = uf.labels()
    for x, y in borderline:
        if labels[vals.index(x)] != labels[vals.index(y)]:
            warnings.warn(
                f"eigenvalues {x:.12g} and {y:.12g} are within 100*tol but kept apart",
                BorderlineClusterWarning,
                stacklevel=3,
            )
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return list(groups.values())


def _clean(z: complex, tol: float) -> complex:
    re = 0.0 if abs(z.real) < tol else z.real
    im = 0.0 if abs(z.imag) < tol else z.imag
    return complex(re, im)


def spectrum(s: Symbol, h: AbelianGroup | None = None, tol: float = DEFAULT_TOL) -> list[SpectrumEntry]:
    """Clustered spectrum, each eigenvalue with the characters that produce it.

    Ordered by descending real part, then descending imaginary part.
    """
    if tol <= 0:
        raise ValidationError("tol must be positive")
    if h is not None and h != s.group:
        raise ValidationError("symbol is over a different group")
    per_char = character_eigenvalues(s)
    vals: list[complex] = []
    owner: list[Character] = []
    for chi, ev in per_char.items():
        vals.extend(ev)
        owner.extend([chi] * len(ev))
    out = []
    for group in _cluster(vals, tol):
        mean = sum(vals[i] for i in group) / len(group)
        out.append(SpectrumEntry(_clean(mean, tol), frozenset(owner[i] for i in group), len(group)))
    out.sort(key=lambda e: (-e.value.real, -e.value.imag))
    return out


def find_eigenvalue(entries: list[SpectrumEntry], lam: complex, tol: float = DEFAULT_TOL) -> SpectrumEntry:
    """The spectrum entry matching ``lam`` at relative tolerance ``tol``."""
    scale = max([1.0] + [abs(e.value) for e in entries])
    best = min(entries, key=lambda e: abs(e.value - lam), default=None)
    if best is None or abs(best.value - lam) > tol * scale:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
    return best


def _nearest_root(mat: np.ndarray, lam: complex, tol: float) -> complex:
    ev = eigenvalues(mat)
    scale = max([1.0] + [abs(v) for v in ev])
    best = min(ev, key=lambda v: abs(v - lam), default=None)
    if best is None or abs(best - lam) > tol * scale:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue of this character matrix")
    return best


def nullspace(a: np.ndarray, tol: float) -> list[np.ndarray]:
    """Orthonormal nullspace basis, deterministic.

    Gaussian elimination with partial pivoting decides the rank (pivots below
    ``tol * max(1, ||a||)`` count as zero); the free-column solutions are then
    orthonormalised and each vector's first nonzero coordinate made real
    positive.
    """
    a = np.array(a, dtype=complex)
    rows, cols = a.shape
    thresh = tol * max(1.0, float(np.linalg.norm(a, 2)) if a.size else 0.0)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= thresh:
            a[r:, c] = 0
            continue
        a[[r, p]] = a[[p, r]]
        a[r] /= a[r, c]
        for k in range(rows):
            if k != r and a[k, c] != 0:
                a[k] -= a[k, c] * a[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=complex)
        v[fc] = 1
        for k, pc in enumerate(pivots):
            v[pc] = -a[k, fc]
        basis.append(v)
    return orthonormalize(basis)


def fix_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    for x in v:
        if abs(x) > tol:
            return v * (abs(x) / x)
    return v


def orthonormalize(vectors: list[np.ndarray], tol: float = 1e-10) -> list[np.ndarray]:
    """Modified Gram-Schmidt (run twice for stability) with phase fixing."""
    out: list[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=complex)
        for _ in range(2):
            for q in out:
                w = w - np.vdot(q, w) * q
        nrm = np.linalg.norm(w)
        if nrm > tol * max(1.0, np.linalg.norm(v)):
            out.append(fix_phase(w / nrm))
    return out


def eigenspace_V(chi: Character, s: Symbol, lam: complex, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the ``lam``-eigenspace of ``chi(S)``."""
    mat = char_matrix(chi, s).matrix
    mu = _nearest_root(mat, lam, tol)
    basis = nullspace(mat - mu * np.eye(s.m), tol)
    if not basis:
        raise NotAnEigenvalue(f"{lam} has an empty eigenspace for {chi!r}")
    return basis


def character_vector(chi: Character) -> np.ndarray:
    """``v_chi = (chi(h))_h`` in the group's element order, scaled to unit length."""
    g = chi.group
    v = np.array([complex(chi(h)) for h in g.elements()])
    return v / math.sqrt(g.order)


@dataclass(frozen=True, eq=False)
class EigenData:
    """Everything known about one eigenvalue of a symbol digraph."""

    value: complex
    characters: frozenset[Character]
    V: dict[Character, list[np.ndarray]] = field(repr=False)
    W: list[np.ndarray] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.W)

    def W_matrix(self) -> np.ndarray:
        """Basis vectors as the columns of an ``mn x dim`` matrix."""
        return np.column_stack(self.W) if self.W else np.zeros((0, 0), dtype=complex)


def eigen_data(s: Symbol, lam: complex, tol: float = DEFAULT_TOL, entries: list[SpectrumEntry] | None = None) -> EigenData:
    entries = entries if entries is not None else spectrum(s, tol=tol)
    entry = find_eigenvalue(entries, lam, tol)
    chars = sorted(entry.characters, key=lambda c: s.group.index(c.exps))
    V = {chi: eigenspace_V(chi, s, entry.value, tol) for chi in chars}
    W = [np.kron(u, character_vector(chi)) for chi in chars for u in V[chi]]
    return EigenData(entry.value, entry.characters, V, W)


def eigenspace_W(s: Symbol, f: SemiregularFrame | None, lam: complex, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of ``W_lam`` in the frame's vertex order: all ``u (x) v_chi``."""
    if f is not None and (f.group != s.group or f.m != s.m):
        raise ValidationError("frame does not match the symbol")
    return eigen_data(s, lam, tol).W
