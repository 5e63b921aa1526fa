import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import roots_legendre

from lgbound import MorseSystem, QhoSystem


@pytest.fixture(scope="session")
def qho():
    return QhoSystem()


@pytest.fixture(scope="session")
def morse50():
    return MorseSystem(50.0)


def quad_overlap(sys, k, l, x1, x2):
    """Independent adaptive-quadrature overlap oracle."""
    lo, hi = sys.support(max(k, l))
    a, b = max(x1, lo), min(x2, hi)
    if a >= b:
        return 0.0
    val, _ = quad(lambda x: sys.psi(k, x) * sys.psi(l, x), a, b,
                  limit=400, epsabs=1e-13)
    return val


def gram_matrix(sys, nmax, lo, hi, panels=60, order=32):
    """Pairwise inner products by composite Gauss-Legendre quadrature."""
    nodes, weights = roots_legendre(order)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    tab = sys.psi_table(nmax, x)
    return (tab * w) @ tab.T
