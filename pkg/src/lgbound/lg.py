"""Leggett-Garg inequality kernels and violation reports.

Families covered: the twelve two-time inequalities (four sign choices
for each of the pairs (t1,t2), (t2,t3), (t1,t3)), the four three-time
kernels, and the eight four-time kernels (a minus sign on one of the
four correlators, both orientations).  Measurement times are equally
spaced: t_i = (i-1) tau.

A kernel counts as violated only when it undershoots its bound by more
than VIOLATION_TOL, so boundary cases produced by rounding never flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correlators import MomentData

__all__ = [
    "VIOLATION_TOL",
    "LUDERS_BOUND",
    "LG4_QUANTUM_BOUND",
    "LG2_LABELS",
    "LG3_LABELS",
    "LG4_LABELS",
    "lg2_set",
    "lg3_set",
    "lg4_set",
    "lgn_kernel",
    "LGReport",
    "build_report",
    "regime_classify",
]

VIOLATION_TOL = 1e-9
LUDERS_BOUND = -0.5
LG4_QUANTUM_BOUND = 2.0 * math.sqrt(2.0)

_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_SIGN_TAGS = ("pp", "pm", "mp", "mm")

LG2_LABELS = tuple(f"lg2_{pair}_{tag}" for pair in ("12", "23", "13") for tag in _SIGN_TAGS)
LG3_LABELS = ("L1", "L2", "L3", "L4")
LG4_LABELS = tuple(f"lg4_m{j}{o}" for o in ("p", "n") for j in (1, 2, 3, 4))


def lg2_set(m12: MomentData, m23: MomentData, m13: MomentData):
    """Twelve two-time kernels 1 + s1<Q_a> + s2<Q_b> + s1 s2 C_ab.

    Each value equals four times the corresponding quasi-probability, so
    negativity here and quasi-probability negativity are the same test.
    """
    out = []
    for m in (m12, m23, m13):
        for s1, s2 in _SIGNS:
            out.append(1.0 + s1 * m.q1 + s2 * m.q2 + s1 * s2 * m.c12)
    return np.array(out)


def lg3_set(c12, c23, c13):
    """The four three-time kernels; broadcasts over array-valued correlators."""
    c12, c23, c13 = (np.asarray(c) for c in (c12, c23, c13))
    return np.stack([
        1.0 + c12 + c23 + c13,
        1.0 - c12 - c23 + c13,
        1.0 + c12 - c23 - c13,
        1.0 - c12 + c23 - c13,
    ])


def lg4_set(c12, c23, c34, c14):
    """Eight four-time kernel values, violation iff a value exceeds 2.

    The first four carry the minus sign on C12, C23, C34, C14 in turn;
    the last four are their negations (the opposite orientation of each
    two-sided inequality).
    """
    c12, c23, c34, c14 = (np.asarray(c) for c in (c12, c23, c34, c14))
    base = np.stack([
        -c12 + c23 + c34 + c14,
        c12 - c23 + c34 + c14,
        c12 + c23 - c34 + c14,
        c12 + c23 + c34 - c14,
    ])
    return np.concatenate([base, -base])


def lgn_kernel(correlators, minus_at: int):
    """Alternating-sign n-time kernel: sum of correlators with one negated.

    ``correlators`` holds the n nearest-neighbour correlators followed by
    the closing one, in cyclic order; ``minus_at`` indexes the negated
    entry.  Only n = 2, 3, 4 are wired into reports.
    """
    cs = [np.asarray(c) for c in correlators]
    if not 0 <= minus_at < len(cs):
        raise IndexError("minus position outside the correlator list")
    total = sum(cs[i] if i != minus_at else -cs[i] for i in range(len(cs)))
    return total


@dataclass
class LGReport:
    """Kernel traces over a grid of time separations, with aggregates.

    ``lg2``, ``lg3`` and ``lg4`` have one row per kernel and one column
    per grid point.  Flags are over-the-grid aggregates; the regime label
    follows the two-by-two classification of three-time versus two-time
    violations.
    """

    taus: np.ndarray
    lg2: np.ndarray
    lg3: np.ndarray
    lg4: np.ndarray
    correlator: np.ndarray
    averages: np.ndarray
    min_lg2: float = field(init=False)
    min_lg3: float = field(init=False)
    max_lg4: float = field(init=False)
    lg2_violated: bool = field(init=False)
    lg3_violated: bool = field(init=False)
    lg4_violated: bool = field(init=False)
    regime: str = field(init=False)
    luders_fraction: float = field(init=False)

    def __post_init__(self):
        self.min_lg2 = float(self.lg2.min())
        self.min_lg3 = float(self.lg3.min())
        self.max_lg4 = float(self.lg4.max())
        self.lg2_violated = self.min_lg2 < -VIOLATION_TOL
        self.lg3_violated = self.min_lg3 < -VIOLATION_TOL
        self.lg4_violated = self.max_lg4 > 2.0 + VIOLATION_TOL
        self.regime = _regime(self.lg3_violated, self.lg2_violated)
        self.luders_fraction = max(0.0, self.min_lg3 / LUDERS_BOUND)

    def min_lg2_by_pair(self):
        """Minimum kernel value for each time pair (12, 23, 13)."""
        return {pair: float(self.lg2[4 * i:4 * i + 4].min())
                for i, pair in enumerate(("12", "23", "13"))}


def _regime(lg3_violated: bool, lg2_violated: bool) -> str:
    if lg2_violated:
        return "IV" if lg3_violated else "III"
    return "II" if lg3_violated else "I"


def build_report(taus, correlator_fn, average_fn=None) -> LGReport:
    """Assemble an LGReport from a correlator and single-time average.

    ``correlator_fn`` maps an array of time separations to C; the report
    evaluates it at tau, 2 tau and 3 tau for the equally spaced
    measurement times.  ``average_fn`` maps measurement times to <Q>;
    omitted means identically zero (eigenstates of symmetric systems).
    """
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    c1 = np.asarray(correlator_fn(taus))
    c2 = np.asarray(correlator_fn(2.0 * taus))
    c3 = np.asarray(correlator_fn(3.0 * taus))
    if average_fn is None:
        q1 = q2 = q3 = np.zeros_like(taus)
    else:
        q1 = np.asarray(average_fn(np.zeros_like(taus)))
        q2 = np.asarray(average_fn(taus))
        q3 = np.asarray(average_fn(2.0 * taus))
    lg2 = []
    for (qa, qb, cab) in ((q1, q2, c1), (q2, q3, c1), (q1, q3, c2)):
        for s1, s2 in _SIGNS:
            lg2.append(1.0 + s1 * qa + s2 * qb + s1 * s2 * cab)
    return LGReport(
        taus=taus,
        lg2=np.stack(lg2),
        lg3=lg3_set(c1, c1, c2),
        lg4=lg4_set(c1, c1, c1, c3),
        correlator=c1,
        averages=np.stack([q1, q2, q3]),
    )


def regime_classify(report: LGReport) -> str:
    """Regime label I-IV from a report's aggregated violation flags."""
    return _regime(report.lg3_violated, report.lg2_violated)
