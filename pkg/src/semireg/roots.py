"""Eigenvalues of small complex matrices via characteristic polynomials.

Matrices of size 1 and 2 use closed forms.  Larger ones go through the
Faddeev-LeVerrier characteristic polynomial, Aberth iteration, and Newton
polishing; near-coincident roots are treated as one multiple root and
polished on the appropriate derivative.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import SolverFailure

EPS = float(np.finfo(float).eps)


def charpoly(a: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients, highest degree first."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def _horner(coeffs: np.ndarray, z: complex) -> tuple[complex, complex]:
    p, dp = 0j, 0j
    for c in coeffs:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _derivative(coeffs: np.ndarray, times: int = 1) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    for _ in range(times):
        deg = len(c) - 1
        c = c[:-1] * np.arange(deg, 0, -1)
    return c


def aberth(coeffs: np.ndarray, tol: float = 1e-15, maxiter: int = 1000) -> np.ndarray:
    """All roots of a polynomial by simultaneous Aberth-Ehrlich iteration."""
    coeffs = np.asarray(coeffs, dtype=complex)
    coeffs = coeffs / coeffs[0]
    deg = len(coeffs) - 1
    if deg < 1:
        return np.zeros(0, dtype=complex)
    radius = 1.0 + max(abs(c) for c in coeffs[1:])
    # offset angle avoids starting on a symmetry axis of real polynomials
    z = np.array([0.5 * radius * cmath.exp(2j * math.pi * (k + 0.25) / deg + 0.4j) for k in range(deg)])
    for _ in range(maxiter):
        biggest = 0.0
        for k in range(deg):
            p, dp = _horner(coeffs, z[k])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else complex(1e-3 * radius)
            repulse = sum(1.0 / (z[k] - z[j]) for j in range(deg) if j != k and z[k] != z[j])
            step = ratio / (1.0 - ratio * repulse)
            z[k] -= step
            biggest = max(biggest, abs(step) / (1.0 + abs(z[k])))
        if biggest < tol:
            return z
    # slow (linear) convergence near multiple roots is acceptable if residuals are small
    scale = sum(abs(c) for c in coeffs)
    resid = max(abs(_horner(coeffs, r)[0]) for r in z)
    if resid > 1e-8 * scale:
        raise SolverFailure(f"Aberth iteration stalled (residual {resid:.3g})")
    return z


def _polish(coeffs: np.ndarray, z: complex, mult: int, steps: int = 8) -> complex:
    """Newton on the ``(mult-1)``-th derivative, where a ``mult``-fold root is simple."""
    c = _derivative(coeffs, mult - 1)
    for _ in range(steps):
        p, dp = _horner(c, z)
        if dp == 0:
            break
        dz = p / dp
        z -= dz
        if abs(dz) <= 1e-17 * (1 + abs(z)):
            break
    return z


def _vanishes(coeffs: np.ndarray, z: complex, rel: float) -> bool:
    p, _ = _horner(coeffs, z)
    size = sum(abs(c) * abs(z) ** k for k, c in enumerate(coeffs[::-1]))
    return abs(p) <= rel * max(size, 1e-300)


def _ring_radius(coeffs: np.ndarray, r: complex, k: int) -> float:
    """Generous bound on how far rounding scatters the copies of a ``k``-fold root."""
    lead = abs(_horner(_derivative(coeffs, k), r)[0]) / math.factorial(k)
    size = sum(abs(c) * max(abs(r), 1.0) ** j for j, c in enumerate(coeffs[::-1]))
    if lead == 0:
        return math.inf
    return 10 * (1e-15 * size / lead) ** (1 / k)


def _split_longest_link(z: list[complex]) -> tuple[list[int], list[int]]:
    """Cut the longest edge of the minimum spanning tree of ``z``.

    This is the last merge of single-linkage clustering, so repeated cuts
    walk the dendrogram from the top.
    """
    k = len(z)
    parent = [0] * k
    best = [abs(z[j] - z[0]) for j in range(k)]
    done = [False] * k
    done[0] = True
    edges = []
    for _ in range(k - 1):
        j = min((q for q in range(k) if not done[q]), key=lambda q: best[q])
        done[j] = True
        edges.append((best[j], parent[j], j))
        for q in range(k):
            d = abs(z[q] - z[j])
            if not done[q] and d < best[q]:
                best[q], parent[q] = d, j
    cut = max(range(len(edges)), key=lambda e: edges[e][0])
    adj: dict[int, list[int]] = {q: [] for q in range(k)}
    for e, (_, a, b) in enumerate(edges):
        if e != cut:
            adj[a].append(b)
            adj[b].append(a)
    side, stack = {0}, [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in side:
                side.add(y)
                stack.append(y)
    return sorted(side), [q for q in range(k) if q not in side]


def polynomial_roots(coeffs: np.ndarray) -> list[complex]:
    """Roots with multiplicity.

    A root of multiplicity ``k`` comes back from the iteration as a ring of
    radius about ``eps**(1/k)``.  Groups are taken from the single-linkage
    dendrogram of the raw roots, top down.  A group of size ``k`` is accepted
    as one ``k``-fold root only when its spread fits the rounding ring and the
    first ``k - 1`` derivatives vanish at its polished centre; otherwise it is
    cut at its longest link and both halves are tried again.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    coeffs = coeffs / coeffs[0]
    z = list(aberth(coeffs))
    out: list[complex] = []

    def settle(members: list[int]) -> None:
        k = len(members)
        if k == 1:
            out.append(_polish(coeffs, z[members[0]], 1))
            return
        root = _polish(coeffs, sum(z[g] for g in members) / k, k)
        spread = max(abs(z[g] - root) for g in members)
        if spread <= _ring_radius(coeffs, root, k) and all(
            _vanishes(_derivative(coeffs, j), root, 1e-11) for j in range(k)
        ):
            out.extend([root] * k)
            return
        left, right = _split_longest_link([z[g] for g in members])
        settle([members[g] for g in left])
        settle([members[g] for g in right])

    if z:
        settle(list(range(len(z))))
    return out


def eigenvalues(a: np.ndarray) -> list[complex]:
    """Eigenvalues of a small square matrix, with multiplicity."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    hermitian = np.allclose(a, a.conj().T, atol=1e-12)
    if n == 0:
        return []
    if n == 1:
        vals = [complex(a[0, 0])]
    elif n == 2:
        p, q, r, s = a[0, 0], a[0, 1], a[1, 0], a[1, 1]
        half = (p + s) / 2
        # discriminant from entries, not from trace^2 - 4 det: no cancellation
        half_gap, cross = ((p - s) / 2) ** 2, q * r
        disc_sq = half_gap + cross
        # a discriminant lost in rounding is a double root, not a sqrt(eps) pair
        if abs(disc_sq) <= 64 * EPS * ((abs(p) + abs(s)) ** 2 / 4 + abs(q) * abs(r)):
            disc_sq = 0
        disc = cmath.sqrt(disc_sq)
        vals = [half + disc, half - disc]
    else:
        vals = polynomial_roots(charpoly(a))
    if hermitian:
        vals = [complex(v.real, 0.0) for v in vals]
    return vals
