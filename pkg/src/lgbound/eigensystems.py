"""Eigenspectra of one-dimensional bound systems in dimensionless units.

Every system exposes eigenenergies, real normalized eigenfunctions and
their spatial derivatives.  All quantities are dimensionless: for the
harmonic oscillator hbar = m = omega = 1 and time enters downstream code
only as the phase omega*tau; for the Morse well the width parameter and
the position of the minimum are fixed to a = 1, r_c = 0, leaving the well
depth parameter lambda as the single knob.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import roots_genlaguerre

__all__ = [
    "BoundSystem",
    "QhoSystem",
    "MorseSystem",
    "SuperpositionState",
    "hermite_eval",
    "laguerre_eval",
]

_INV_PI_QUARTER = math.pi ** -0.25


def hermite_eval(n, x):
    """Physicists' Hermite polynomial H_n(x) by forward recurrence.

    Uses H_{n+1} = 2x H_n - 2n H_{n-1}, which is stable in the forward
    direction.  Values overflow float64 for very large n and |x|;
    n <= 200 is supported.
    """
    if n < 0:
        raise ValueError("polynomial degree must be >= 0")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h, h_prev = 2.0 * x * h - 2.0 * k * h_prev, h
    return h if h.ndim else float(h)


def laguerre_eval(n, alpha, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x) by forward recurrence.

    (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}.
    """
    if n < 0:
        raise ValueError("polynomial degree must be >= 0")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l = 1.0 + alpha - x
    for k in range(1, n):
        l, l_prev = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1.0), l
    return l if l.ndim else float(l)


class BoundSystem(ABC):
    """Interface for a 1-D bound system with known eigenspectrum.

    Eigenfunctions are real and normalized to one over the system's full
    coordinate domain; energies are strictly increasing in the index.
    ``split_point`` is the coordinate at which the dichotomic sign
    coarse-graining divides space (the origin for both built-in systems).
    """

    split_point = 0.0

    @abstractmethod
    def energy(self, n: int) -> float:
        """Dimensionless eigenenergy of state n."""

    @abstractmethod
    def psi(self, n: int, x):
        """Eigenfunction value(s) at x."""

    @abstractmethod
    def psi_prime(self, n: int, x):
        """Spatial derivative of the eigenfunction at x."""

    @abstractmethod
    def num_states(self):
        """Number of bound states, or None if the spectrum is unbounded."""

    @abstractmethod
    def is_symmetric(self) -> bool:
        """True if the potential is even about the split point."""

    def support(self, n: int):
        """Interval outside of which psi_n is numerically negligible."""
        return (-np.inf, np.inf)

    def max_index(self):
        ns = self.num_states()
        return None if ns is None else ns - 1

    def check_index(self, n: int):
        if n < 0:
            raise IndexError(f"state index {n} is negative")
        ns = self.num_states()
        if ns is not None and n >= ns:
            raise IndexError(f"state index {n} out of range: system has {ns} bound states")

    def psi_table(self, nmax: int, x):
        """Stack psi_0..psi_nmax evaluated at x, shape (nmax+1, len(x))."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.stack([np.atleast_1d(self.psi(n, x)) for n in range(nmax + 1)])

    def psi_prime_table(self, nmax: int, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.stack([np.atleast_1d(self.psi_prime(n, x)) for n in range(nmax + 1)])

    def split_overlap_row(self, n: int, m_max: int):
        """Overlaps of state n with states 0..m_max over (split_point, +inf).

        Off-diagonal entries come from the Wronskian boundary identity,
        the diagonal from the half-line probability mass.
        """
        self.check_index(n)
        cap = self.max_index()
        if cap is not None and m_max > cap:
            m_max = cap
        x0 = self.split_point
        vals = self.psi_table(m_max, np.array([x0]))[:, 0]
        ders = self.psi_prime_table(m_max, np.array([x0]))[:, 0]
        energies = np.array([self.energy(k) for k in range(m_max + 1)])
        row = np.zeros(m_max + 1)
        k = np.arange(m_max + 1)
        off = k != n
        # wavefunctions vanish at +inf, so only the split-point boundary survives
        row[off] = -(ders[n] * vals[off] - ders[off] * vals[n]) / (
            2.0 * (energies[off] - energies[n])
        )
        row[n] = self.half_line_mass(n)
        return row

    def half_line_mass(self, n: int) -> float:
        """Probability of finding state n right of the split point."""
        if self.is_symmetric():
            return 0.5
        lo, hi = self.support(n)
        val, _ = quad(lambda r: float(self.psi(n, np.array([r]))[0]) ** 2,
                      max(self.split_point, lo), hi, limit=400)
        return val


class QhoSystem(BoundSystem):
    """Harmonic oscillator in natural units (hbar = m = omega = 1).

    psi_n(x) = (2^n n!)^(-1/2) pi^(-1/4) exp(-x^2/2) H_n(x), evaluated
    through the normalized three-term recurrence so that large n stays
    finite.  Energies are n + 1/2.
    """

    def energy(self, n):
        self.check_index(n)
        return n + 0.5

    def num_states(self):
        return None

    def is_symmetric(self):
        return True

    def support(self, n):
        # classical turning point plus a generous gaussian-decay margin
        half = max(12.0, math.sqrt(2.0 * n + 1.0) + 8.0)
        return (-half, half)

    def psi_table(self, nmax, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        tab = np.empty((nmax + 1, x.size))
        tab[0] = _INV_PI_QUARTER * np.exp(-0.5 * x * x)
        if nmax >= 1:
            tab[1] = math.sqrt(2.0) * x * tab[0]
        for n in range(1, nmax):
            tab[n + 1] = (math.sqrt(2.0 / (n + 1)) * x * tab[n]
                          - math.sqrt(n / (n + 1)) * tab[n - 1])
        return tab

    def psi_prime_table(self, nmax, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        tab = self.psi_table(nmax, x)
        out = np.empty_like(tab)
        out[0] = -x * tab[0]
        for n in range(1, nmax + 1):
            out[n] = math.sqrt(2.0 * n) * tab[n - 1] - x * tab[n]
        return out

    def psi(self, n, x):
        self.check_index(n)
        scalar = np.isscalar(x) or np.ndim(x) == 0
        val = self.psi_table(n, x)[n]
        return float(val[0]) if scalar else val

    def psi_prime(self, n, x):
        self.check_index(n)
        scalar = np.isscalar(x) or np.ndim(x) == 0
        val = self.psi_prime_table(n, x)[n]
        return float(val[0]) if scalar else val

    def origin_values(self, m_max):
        """psi_k(0) and psi_k'(0) for k = 0..m_max, fully vectorized.

        At the origin the recurrence decouples into parity chains, so the
        values reduce to cumulative products; this keeps million-term
        overlap rows cheap.
        """
        k = np.arange(m_max + 1)
        vals = np.zeros(m_max + 1)
        even = np.arange(0, m_max + 1, 2)
        if even.size:
            # psi_{2m}(0) = pi^{-1/4} * prod_{j<=m} (-sqrt((2j-1)/(2j)))
            j = np.arange(1, even.size)
            factors = -np.sqrt((2.0 * j - 1.0) / (2.0 * j))
            vals[even] = _INV_PI_QUARTER * np.concatenate(([1.0], np.cumprod(factors)))
        ders = np.zeros(m_max + 1)
        pos = k >= 1
        ders[pos] = np.sqrt(2.0 * k[pos]) * vals[k[pos] - 1]
        return vals, ders

    def split_overlap_row(self, n, m_max):
        self.check_index(n)
        vals, ders = self.origin_values(m_max)
        k = np.arange(m_max + 1)
        row = np.zeros(m_max + 1)
        off = k != n
        dn = ders[n] if n <= m_max else math.sqrt(2.0 * n) * self.psi(n - 1, 0.0)
        vn = vals[n] if n <= m_max else self.psi(n, 0.0)
        row[off] = -(dn * vals[off] - ders[off] * vn) / (2.0 * (k[off] - n))
        if n <= m_max:
            row[n] = 0.5
        return row


class MorseSystem(BoundSystem):
    """Morse well with width a = 1 and minimum at r = 0.

    The well supports floor(lambda - 1/2) bound states with energies
    eps_n = -(lambda - n - 1/2)^2 / 2.  Eigenfunctions are built from
    generalized Laguerre polynomials in the scaled coordinate
    z = 2 lambda exp(-r); the polynomial order parameter is
    2(lambda - n) - 1 = 2 lambda - 2n - 1, which is what orthonormality
    over the line requires.  Normalization constants are fixed
    numerically by quadrature rather than taken from a closed form.

    The eigenfunctions straddle the well minimum, so the coordinate
    domain is the whole real line (the exponential wall confines the
    particle on the left); they vanish super-exponentially as r -> -inf
    and exponentially as r -> +inf.
    """

    def __init__(self, lam: float):
        if lam <= 0.5:
            raise ValueError("well parameter must exceed 1/2 for a bound state to exist")
        self.lam = float(lam)
        self._n_states = int(math.floor(self.lam - 0.5))
        self._norms: dict[int, float] = {}
        self._supports: dict[int, tuple[float, float]] = {}

    def num_states(self):
        return self._n_states

    def is_symmetric(self):
        return False

    def energy(self, n):
        self.check_index(n)
        return -0.5 * (self.lam - n - 0.5) ** 2

    def z_of(self, r):
        return 2.0 * self.lam * np.exp(-np.asarray(r, dtype=float))

    def _shape(self, n):
        s = self.lam - n - 0.5          # exponent of z in the weight
        alpha = 2.0 * s                 # Laguerre order parameter
        peak_log = s * math.log(2.0 * s) - s
        return s, alpha, peak_log

    def _raw(self, n, r, log_offset, derivative=False):
        """Eigenfunction (or derivative) scaled by exp(-log_offset).

        Working with the exponent s*ln(z) - z/2 - log_offset keeps every
        intermediate in float range even for deep wells.  Far inside the
        repulsive wall the prefactor underflows while the polynomial
        overflows; those points are clamped to an exact zero instead of
        letting 0 * inf produce garbage.
        """
        z = np.maximum(self.z_of(r), 1e-300)
        s, alpha, _ = self._shape(n)
        logw = s * np.log(z) - 0.5 * z - log_offset
        alive = logw > -700.0
        z_safe = np.where(alive, z, 2.0 * s)
        pref = np.where(alive, np.exp(np.where(alive, logw, 0.0)), 0.0)
        lag = laguerre_eval(n, alpha, z_safe)
        if not derivative:
            return pref * lag
        dlag = -laguerre_eval(n - 1, alpha + 1.0, z_safe) if n >= 1 else np.zeros_like(z)
        # d/dr = -z d/dz
        return pref * ((0.5 * z_safe - s) * lag - z_safe * dlag)

    def _log_norm_sq(self, n):
        """log of the squared norm of the unscaled z^s e^(-z/2) L_n form.

        The full-line position integral maps to the generalized Laguerre
        weight z^(2s-1) e^(-z) on (0, inf) against a degree-2n polynomial,
        so an (n+1)-point generalized Gauss-Laguerre rule is exact.  For
        very deep wells its weights overflow and an adaptive scaled
        quadrature takes over.
        """
        s, alpha, peak_log = self._shape(n)
        if 2.0 * self.lam <= 160.0:
            zi, wi = roots_genlaguerre(n + 1, alpha - 1.0)
            total = float(wi @ laguerre_eval(n, alpha, zi) ** 2)
            if math.isfinite(total) and total > 0.0:
                return math.log(total)
        lo, hi = self.support(n)
        val, _ = quad(lambda r: self._raw(n, np.array([r]), peak_log)[0] ** 2,
                      lo, hi, limit=500, epsabs=1e-13)
        return math.log(val) + 2.0 * peak_log

    def support(self, n):
        self.check_index(n)
        if n not in self._supports:
            lam = self.lam
            # large-z side: the envelope z^(lam-1/2) e^(-z/2) bounds every state
            se = lam - 0.5
            peak = se * math.log(2.0 * se) - se

            def drop(z):
                return se * math.log(z) - 0.5 * z - peak + 45.0

            step = max(4.0 * (45.0 + math.sqrt(45.0 * se)), 40.0)
            z_hi = brentq(drop, 2.0 * se, 2.0 * se + step)
            # small-z side: amplitude ~ z^s below the inner turning point
            s, _, _ = self._shape(n)
            z_lo = max(2.0 * s * math.exp(-55.0 / s), 1e-280)
            self._supports[n] = (math.log(2.0 * lam / z_hi), math.log(2.0 * lam / z_lo))
        return self._supports[n]

    def _norm_offset(self, n):
        if n not in self._norms:
            self._norms[n] = 0.5 * self._log_norm_sq(n)
        return self._norms[n]

    def psi(self, n, x):
        self.check_index(n)
        scalar = np.isscalar(x) or np.ndim(x) == 0
        val = self._raw(n, np.atleast_1d(np.asarray(x, dtype=float)),
                        self._norm_offset(n))
        return float(val[0]) if scalar else val

    def psi_prime(self, n, x):
        self.check_index(n)
        scalar = np.isscalar(x) or np.ndim(x) == 0
        val = self._raw(n, np.atleast_1d(np.asarray(x, dtype=float)),
                        self._norm_offset(n), derivative=True)
        return float(val[0]) if scalar else val

    def phase_rate(self, n):
        """Coefficient of the dimensionless time omega_0*tau in exp(-i E_n t / hbar)."""
        return self.energy(n) / self.lam


@dataclass(frozen=True)
class SuperpositionState:
    """Two-state superposition cos(theta/2)|0> + e^(i phi) sin(theta/2)|1>."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")

    @property
    def amp0(self) -> float:
        return math.cos(0.5 * self.theta)

    @property
    def amp1(self) -> complex:
        return math.sin(0.5 * self.theta) * complex(math.cos(self.phi), math.sin(self.phi))

    @property
    def weight0(self) -> float:
        """|a|^2 of the ground-state component."""
        return math.cos(0.5 * self.theta) ** 2

    @property
    def weight1(self) -> float:
        return math.sin(0.5 * self.theta) ** 2
