"""Two-time quasi-probabilities and temporal correlators.

Three routes to the same physics:

* a truncated eigenbasis series valid for any bound system (the
  workhorse, built from Wronskian overlaps),
* closed forms for the first nine oscillator eigenstates, expressed
  through f(tau) = -i exp(-i tau/2) sqrt(2 i sin tau) with principal
  branches,
* mixtures thereof for two-state superpositions, plus the classical
  phase-space analogue for comparison.

Sign conventions: the dichotomic variable is sgn(x - split point), so
q(+,+) is the real part of the ordered product of the two "right side"
projections.  For a symmetric potential the single-time averages vanish
and C = 4 q(+,+) - 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .eigensystems import BoundSystem, MorseSystem, QhoSystem
from .overlaps import Region, TruncationWarning, region_overlap

__all__ = [
    "MomentData",
    "SeriesKernel",
    "series_quasiprob",
    "series_correlator",
    "exact_qho_correlator",
    "three_term_correlator",
    "classical_correlator",
    "superposition_correlator",
    "superposition_moments",
    "region_quasiprob",
    "TruncationTargetError",
    "MEAN_SIGN_01",
]

# <0| sgn(x) |1> for the oscillator: sqrt(2/pi)
MEAN_SIGN_01 = math.sqrt(2.0 / math.pi)

DEFAULT_DELTA_TARGET = 1e-3
DEFAULT_M_CAP = 200
HARD_M_CAP = 4_000_000
WARN_DELTA = 1e-2


class TruncationTargetError(ArithmeticError):
    """A requested series accuracy could not be met within the term budget."""


@dataclass
class MomentData:
    """Single-time averages, correlator and quasi-probability for one time pair.

    The four quasi-probability values follow from the moment expansion
    q(s1, s2) = (1 + s1 q1 + s2 q2 + s1 s2 c12) / 4, stored in the order
    (+,+), (+,-), (-,+), (-,-).  Negativity of any entry is a two-time
    Leggett-Garg violation.
    """

    t1: float
    t2: float
    q1: float
    q2: float
    c12: float
    q_table: tuple = field(default=None)
    delta: float | None = None

    def __post_init__(self):
        if self.q_table is None:
            self.q_table = tuple(
                0.25 * (1.0 + s1 * self.q1 + s2 * self.q2 + s1 * s2 * self.c12)
                for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1))
            )

    def quasiprob(self, s1: int, s2: int) -> float:
        return self.q_table[{(1, 1): 0, (1, -1): 1, (-1, 1): 2, (-1, -1): 3}[(s1, s2)]]


class SeriesKernel:
    """Precomputed ingredients of the eigenbasis series for one state.

    Holds the overlap row J_nk over the right half-line and the energy
    gaps, so quasi-probabilities evaluate as sum_k J_nk^2 cos(gap_k tau)
    on arbitrary time grids.  Construction grows the row until the
    truncation error meets the target or the cap is reached.
    """

    def __init__(self, sys: BoundSystem, n: int, m_max=None, delta_target=None,
                 strict=False):
        sys.check_index(n)
        self.sys = sys
        self.n = n
        cap = sys.max_index()
        if cap is not None:
            # finite spectrum: always use every bound state
            m = cap if m_max is None else min(m_max, cap)
            row = sys.split_overlap_row(n, m)
        elif m_max is not None:
            m = max(m_max, n)
            row = sys.split_overlap_row(n, m)
        else:
            target = DEFAULT_DELTA_TARGET if delta_target is None else delta_target
            hard = DEFAULT_M_CAP if delta_target is None else HARD_M_CAP
            m = min(max(128, 4 * n), hard)
            while True:
                row = sys.split_overlap_row(n, m)
                diag = row[n]
                if diag - np.sum(row**2) <= target or m >= hard:
                    break
                m = min(2 * m, hard)
        self.m_max = m
        self.row = row
        self.diag = float(row[n])
        self.delta = float(self.diag - np.sum(row**2))
        self.single_time_average = 2.0 * self.diag - 1.0
        rates = self._phase_rates(m)
        self.gaps = rates[n] - rates
        if delta_target is not None and self.delta > delta_target:
            msg = (f"truncation error {self.delta:.3e} exceeds target "
                   f"{delta_target:.1e} at m_max={self.m_max}")
            if strict:
                raise TruncationTargetError(msg)
            warnings.warn(msg, TruncationWarning, stacklevel=3)
        elif self.delta > WARN_DELTA:
            warnings.warn(
                f"truncation error {self.delta:.3e} at m_max={self.m_max}",
                TruncationWarning, stacklevel=3)

    def _phase_rates(self, m):
        sys = self.sys
        if isinstance(sys, QhoSystem):
            return np.arange(m + 1, dtype=float)  # the constant 1/2 cancels in gaps
        if isinstance(sys, MorseSystem):
            return np.array([sys.phase_rate(k) for k in range(m + 1)])
        return np.array([sys.energy(k) for k in range(m + 1)])

    def quasiprob(self, taus):
        """q(+,+) on a time grid; chunked so million-term rows stay cheap."""
        taus = np.atleast_1d(np.asarray(taus, dtype=float))
        keep = self.row != 0.0
        w = self.row[keep] ** 2
        g = self.gaps[keep]
        out = np.zeros(taus.size)
        block = max(1, 10_000_000 // max(taus.size, 1))
        for start in range(0, w.size, block):
            sl = slice(start, start + block)
            out += np.cos(np.outer(taus, g[sl])) @ w[sl]
        return out

    def correlator(self, taus):
        """C(tau) extracted from the moment expansion."""
        q = self.quasiprob(taus)
        avg = 0.0 if self.sys.is_symmetric() else self.single_time_average
        return 4.0 * q - 1.0 - 2.0 * avg

    def moments(self, t1: float, t2: float) -> MomentData:
        avg = 0.0 if self.sys.is_symmetric() else self.single_time_average
        q_pp = float(self.quasiprob(np.array([t2 - t1]))[0])
        c12 = 4.0 * q_pp - 1.0 - 2.0 * avg
        return MomentData(t1=t1, t2=t2, q1=avg, q2=avg, c12=c12, delta=self.delta)


def series_quasiprob(sys: BoundSystem, n: int, tau: float, m_max=None,
                     delta_target=None, strict=False) -> MomentData:
    """Quasi-probability and moments of eigenstate n at time separation tau.

    The series runs over the first m_max+1 eigenstates; if m_max is not
    given the row grows until the truncation error drops below
    delta_target (default 1e-3, capped at 200 terms unless an explicit
    target is supplied).
    """
    kern = SeriesKernel(sys, n, m_max=m_max, delta_target=delta_target, strict=strict)
    return kern.moments(0.0, tau)


def series_correlator(sys: BoundSystem, n: int, taus, m_max=None,
                      delta_target=None, strict=False):
    """Correlator trace of eigenstate n on a grid of time separations."""
    kern = SeriesKernel(sys, n, m_max=m_max, delta_target=delta_target, strict=strict)
    return kern.correlator(taus)


# Closed-form correlators for oscillator eigenstates |0> .. |8>:
# C_n = (2/pi) Re[arctan(1/f) + P_n(E) f] with E = exp(-2 i tau).
_POLY_COEFFS = {
    0: ([0.0], 1.0),
    1: ([1.0], 1.0),
    2: ([1.0], 2.0),
    3: ([5.0, 1.0], 6.0),
    4: ([14.0, 1.0], 24.0),
    5: ([94.0, 17.0, 9.0], 120.0),
    6: ([148.0, 14.0, 3.0], 240.0),
    7: ([1276.0, 218.0, 111.0, 75.0], 1680.0),
    8: ([8528.0, 904.0, 258.0, 75.0], 13440.0),
}

EXACT_MAX_STATE = max(_POLY_COEFFS)


def exact_qho_correlator(n: int, tau):
    """Closed-form oscillator correlator for eigenstates n = 0..8.

    Times are reduced modulo the 2 pi period before evaluation; the
    complex square root and arctangent use their principal branches.
    Where sin tau vanishes identically in floating point, the parity
    limits C = 1 (tau = 0) and C = -1 (tau = pi) are substituted;
    elsewhere the formula itself approaches those limits with a
    square-root cusp.
    """
    if not 0 <= n <= EXACT_MAX_STATE:
        raise IndexError(
            f"closed forms cover n <= {EXACT_MAX_STATE}; use series_correlator beyond")
    scalar = np.isscalar(tau) or np.ndim(tau) == 0
    t = np.mod(np.atleast_1d(np.asarray(tau, dtype=float)), 2.0 * math.pi)
    sin_t = np.sin(t)
    out = np.empty_like(t)
    sing = sin_t == 0.0
    if np.any(sing):
        out[sing] = np.where(np.abs(t[sing] - math.pi) < 1.0, -1.0, 1.0)
    ok = ~sing
    if np.any(ok):
        tc = t[ok].astype(complex)
        f = -1j * np.exp(-0.5j * tc) * np.sqrt(2j * np.sin(tc))
        coeffs, denom = _POLY_COEFFS[n]
        e = np.exp(-2j * tc)
        poly = np.zeros_like(tc)
        for c in reversed(coeffs):
            poly = poly * e + c
        out[ok] = (2.0 / math.pi) * np.real(np.arctan(1.0 / f) + (poly / denom) * f)
    return float(out[0]) if scalar else out


def three_term_correlator(tau):
    """Cosine approximation (3/pi) cos tau from the three lowest overlaps.

    This is the unnormalized first-excited-state correlator when the
    expansion keeps states 0..2 only; it is exposed as a convenience and
    never silently substituted for the exact result.
    """
    return (3.0 / math.pi) * np.cos(np.asarray(tau, dtype=float))


def classical_correlator(tau):
    """Triangle-wave correlator of the classical oscillator ensemble."""
    t = np.mod(np.asarray(tau, dtype=float), 2.0 * math.pi)
    out = -1.0 + (2.0 / math.pi) * np.abs(math.pi - t)
    return float(out) if np.ndim(tau) == 0 else out


def superposition_correlator(theta: float, c0, c1):
    """Correlator of cos(theta/2)|0> + e^(i phi) sin(theta/2)|1> as a convex mixture.

    Cross terms vanish by parity, so the mixture weights are the state
    populations and the phase phi never enters.
    """
    w0 = math.cos(0.5 * theta) ** 2
    return w0 * np.asarray(c0) + (1.0 - w0) * np.asarray(c1)


def superposition_moments(theta: float, phi: float, t1: float, t2: float) -> MomentData:
    """Full moment set for a two-state oscillator superposition.

    Single-time averages rotate as sqrt(2/pi) sin(theta) cos(phi + t);
    the correlator is the population-weighted mixture of the exact
    ground and first-excited correlators at separation t2 - t1.
    """
    tau = t2 - t1
    c12 = float(superposition_correlator(
        theta, exact_qho_correlator(0, tau), exact_qho_correlator(1, tau)))
    amp = MEAN_SIGN_01 * math.sin(theta)
    q1 = amp * math.cos(phi + t1)
    q2 = amp * math.cos(phi + t2)
    return MomentData(t1=t1, t2=t2, q1=q1, q2=q2, c12=c12)


def region_overlap_row(sys: BoundSystem, n: int, region: Region, m_max: int):
    """Overlaps of state n with states 0..m_max over a spatial region."""
    cap = sys.max_index()
    if cap is not None and m_max > cap:
        m_max = cap
    return np.array([region_overlap(sys, n, k, region) for k in range(m_max + 1)])


def region_quasiprob(sys: BoundSystem, n: int, region1: Region, region2: Region,
                     tau: float, m_max=None, delta_target=None, strict=False) -> float:
    """q(+,+) when the two measurements project onto arbitrary regions.

    Re e^(i eps_n tau) sum_k e^(-i eps_k tau) J_nk(region1) J_nk(region2),
    with diagonal overlaps by quadrature and the rest by the Wronskian
    identity summed over the regions' intervals.
    """
    kern = SeriesKernel(sys, n, m_max=m_max, delta_target=delta_target, strict=strict)
    m = kern.m_max
    row1 = region_overlap_row(sys, n, region1, m)
    row2 = region_overlap_row(sys, n, region2, m)
    return float(np.cos(kern.gaps * tau) @ (row1 * row2))
