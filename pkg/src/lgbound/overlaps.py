"""Partial overlaps of eigenfunctions over spatial regions.

The central identity: for eigenstates of the same 1-D Hamiltonian with
distinct energies, the indefinite integral of psi_k * psi_l is the
Wronskian psi_k' psi_l - psi_l' psi_k divided by twice the energy gap.
Every quasi-probability downstream reduces to these overlaps, so this
module also provides diagonal overlaps (by quadrature), spatially
smeared variants and the truncation-error estimate controlling series
cutoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erf, roots_legendre

from .eigensystems import BoundSystem, QhoSystem

__all__ = [
    "Region",
    "FULL_LINE",
    "POSITIVE_HALF",
    "NEGATIVE_HALF",
    "wronskian_overlap",
    "diagonal_overlap",
    "overlap",
    "region_overlap",
    "overlap_table",
    "wronskian_primitive_table",
    "smoothed_overlap",
    "smoothed_overlap_row",
    "truncation_error",
    "TruncationWarning",
]

QUAD_ABS_TOL = 1e-10


class TruncationWarning(UserWarning):
    """Raised as a warning when a truncated eigenbasis series is poor."""


@dataclass(frozen=True)
class Region:
    """Finite union of disjoint intervals of the real line.

    Intervals are half-open in spirit only; endpoints may be +-inf.
    The region defines one side of a dichotomic coarse-graining of
    space, values outside it being the other side.
    """

    intervals: tuple

    def __init__(self, intervals):
        ivs = tuple((float(a), float(b)) for a, b in intervals)
        for a, b in ivs:
            if not a < b:
                raise ValueError(f"interval ({a}, {b}) is empty or reversed")
        for (_, b), (a2, _) in zip(ivs, ivs[1:]):
            if not b <= a2:
                raise ValueError("intervals must be disjoint and sorted")
        object.__setattr__(self, "intervals", ivs)

    def complement(self) -> "Region":
        pieces = []
        cursor = -math.inf
        for a, b in self.intervals:
            if a > cursor:
                pieces.append((cursor, a))
            cursor = b
        if cursor < math.inf:
            pieces.append((cursor, math.inf))
        return Region(pieces)


FULL_LINE = Region([(-math.inf, math.inf)])
POSITIVE_HALF = Region([(0.0, math.inf)])
NEGATIVE_HALF = Region([(-math.inf, 0.0)])


def _boundary_term(sys: BoundSystem, k: int, l: int, x: float) -> float:
    if math.isinf(x):
        return 0.0
    return sys.psi_prime(k, x) * sys.psi(l, x) - sys.psi_prime(l, x) * sys.psi(k, x)


def wronskian_overlap(sys: BoundSystem, k: int, l: int, x1: float, x2: float) -> float:
    """Overlap of eigenstates k != l over [x1, x2] without any integration.

    Returns [psi_k' psi_l - psi_l' psi_k] evaluated between the endpoints,
    divided by 2(eps_l - eps_k).  Infinite endpoints contribute zero since
    bound-state wavefunctions vanish there.
    """
    if k == l:
        raise ValueError("indices coincide; use diagonal_overlap for k == l")
    sys.check_index(k)
    sys.check_index(l)
    gap = sys.energy(l) - sys.energy(k)
    if gap == 0.0:
        raise ValueError("degenerate energies for distinct indices")
    return (_boundary_term(sys, k, l, x2) - _boundary_term(sys, k, l, x1)) / (2.0 * gap)


def diagonal_overlap(sys: BoundSystem, k: int, x1: float, x2: float) -> float:
    """Probability mass of state k on [x1, x2], by adaptive quadrature.

    Symmetric half-line and full-line cases short-circuit to exact values.
    """
    sys.check_index(k)
    if x1 == x2:
        return 0.0
    if x1 > x2:
        return -diagonal_overlap(sys, k, x2, x1)
    lo, hi = sys.support(k)
    if x1 == -math.inf and x2 == math.inf:
        return 1.0
    if sys.is_symmetric():
        if (x1, x2) == (0.0, math.inf) or (x1, x2) == (-math.inf, 0.0):
            return 0.5
    if isinstance(sys, QhoSystem) and k == 0:
        # gaussian ground state has an error-function mass in closed form
        a = -math.inf if x1 == -math.inf else x1
        b = math.inf if x2 == math.inf else x2
        fa = -1.0 if a == -math.inf else erf(a)
        fb = 1.0 if b == math.inf else erf(b)
        return 0.5 * (fb - fa)
    a, b = max(x1, lo), min(x2, hi)
    if a >= b:
        return 0.0
    val, err = quad(lambda x: sys.psi(k, x) ** 2, a, b, limit=400, epsabs=QUAD_ABS_TOL)
    if err > 1e-6:
        raise ArithmeticError(f"quadrature did not converge: error estimate {err:.2e}")
    return val


def overlap(sys: BoundSystem, k: int, l: int, x1: float, x2: float) -> float:
    """Overlap over an interval, routing diagonals through quadrature."""
    if k == l:
        return diagonal_overlap(sys, k, x1, x2)
    return wronskian_overlap(sys, k, l, x1, x2)


def region_overlap(sys: BoundSystem, k: int, l: int, region: Region) -> float:
    """Overlap over a union of intervals, summed interval by interval."""
    return sum(overlap(sys, k, l, a, b) for a, b in region.intervals)


def overlap_table(sys: BoundSystem, m_max: int, x1: float, x2: float):
    """Symmetric matrix of overlaps J[k, l] over [x1, x2] for k, l <= m_max."""
    cap = sys.max_index()
    if cap is not None and m_max > cap:
        m_max = cap
    ends = [(x, s) for x, s in ((x1, -1.0), (x2, 1.0)) if not math.isinf(x)]
    xs = np.asarray([x for x, _ in ends])
    vals = sys.psi_table(m_max, xs) if ends else np.zeros((m_max + 1, 0))
    ders = sys.psi_prime_table(m_max, xs) if ends else np.zeros((m_max + 1, 0))
    energies = np.array([sys.energy(k) for k in range(m_max + 1)])
    tab = np.zeros((m_max + 1, m_max + 1))
    for k in range(m_max + 1):
        for l in range(k + 1, m_max + 1):
            term = 0.0
            for col, (_, sign) in enumerate(ends):
                # infinite endpoints contribute nothing
                term += sign * (ders[k, col] * vals[l, col] - ders[l, col] * vals[k, col])
            tab[k, l] = tab[l, k] = term / (2.0 * (energies[l] - energies[k]))
    for k in range(m_max + 1):
        tab[k, k] = diagonal_overlap(sys, k, x1, x2)
    return tab


def wronskian_primitive_table(sys: BoundSystem, n: int, m_max: int, xs):
    """Boundary terms W_nk(x) = psi_n'(x) psi_k(x) - psi_k'(x) psi_n(x).

    Shape (m_max+1, len(xs)).  The overlap of n with k over [a, b] is then
    (W[k, b] - W[k, a]) / (2 (eps_k - eps_n)) for k != n, so interval scans
    reuse one table for every interval pair.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    cap = sys.max_index()
    if cap is not None and m_max > cap:
        m_max = cap
    vals = sys.psi_table(m_max, xs)
    ders = sys.psi_prime_table(m_max, xs)
    return ders[n][None, :] * vals - ders * vals[n][None, :]


_GAUSS_CACHE: dict = {}


def _gauss_nodes(npts):
    if npts not in _GAUSS_CACHE:
        _GAUSS_CACHE[npts] = roots_legendre(npts)
    return _GAUSS_CACHE[npts]


def smoothed_overlap_row(n: int, m_max: int, a: float, sys: QhoSystem | None = None):
    """Oscillator overlaps of state n against a smeared half-line projector.

    The sharp step is replaced by (1 + erf(x/a))/2.  The row splits into
    the sharp Wronskian part plus a correction integral supported on
    |x| <= O(a), evaluated on a fixed Gauss-Legendre rule after rescaling,
    so accuracy is uniform in a.
    """
    if a <= 0:
        raise ValueError("smoothing width must be positive")
    sys = sys or QhoSystem()
    row = sys.split_overlap_row(n, m_max)
    k = np.arange(m_max + 1)
    sharp = np.where((k + n) % 2 == 1, row, 0.0)
    sharp[n] = 0.5
    # correction kernel (erf(u/a) - sgn u)/2 jumps at u = 0 and dies beyond
    # |u| = 8a, so integrate each side with its own Gauss-Legendre rule
    nodes, weights = _gauss_nodes(200)
    half = min(8.0 * a, 13.0)
    u_pos = 0.5 * half * (nodes + 1.0)
    u = np.concatenate([-u_pos[::-1], u_pos])
    w = 0.5 * half * np.concatenate([weights[::-1], weights])
    kernel = 0.5 * (erf(u / a) - np.sign(u))
    tab = sys.psi_table(m_max, u)
    corr = (tab * (tab[n] * kernel * w)[None, :]).sum(axis=1)
    return sharp + corr


def smoothed_overlap(k: int, l: int, a: float, sys: QhoSystem | None = None) -> float:
    """Single smeared-projector overlap; see smoothed_overlap_row."""
    row = smoothed_overlap_row(k, max(k, l), a, sys=sys)
    return float(row[l])


def truncation_error(sys: BoundSystem, n: int, m: int, interval=None) -> float:
    """Probability mass missing from a rank-m expansion of the projected state.

    Delta_n(m) = J_nn(interval) - sum_{k<=m} J_nk(interval)^2; non-negative
    and non-increasing in m.  Defaults to the half-line right of the split
    point, the interval used by sign coarse-graining.
    """
    if interval is None:
        interval = (sys.split_point, math.inf)
    x1, x2 = interval
    if (x1, x2) == (sys.split_point, math.inf):
        row = sys.split_overlap_row(n, m)
        diag = row[n] if n <= m else sys.half_line_mass(n)
        return float(diag - np.sum(row**2))
    total = diagonal_overlap(sys, n, x1, x2)
    acc = 0.0
    for k in range(m + 1):
        acc += overlap(sys, n, k, x1, x2) ** 2
    return total - acc
