import math

import numpy as np
import pytest
from scipy.special import eval_genlaguerre, eval_hermite

from lgbound import MorseSystem, SuperpositionState, hermite_eval, laguerre_eval

from conftest import gram_matrix


def hermite_series(n, x):
    """Brute-force Hermite value from the explicit series definition."""
    total = 0.0
    for m in range(n // 2 + 1):
        total += ((-1) ** m / (math.factorial(m) * math.factorial(n - 2 * m))
                  * (2 * x) ** (n - 2 * m))
    return math.factorial(n) * total


def test_hermite_low_orders():
    assert hermite_eval(0, 1.7) == 1.0
    assert hermite_eval(1, 0.5) == 1.0
    assert hermite_eval(4, 0.0) == pytest.approx(hermite_series(4, 0.0), abs=1e-12)
    assert hermite_eval(4, 0.0) == 12.0


@pytest.mark.parametrize("n", [2, 5, 9, 17])
def test_hermite_matches_series_and_scipy(n):
    for x in (-2.3, -0.4, 0.0, 0.9, 3.1):
        assert hermite_eval(n, x) == pytest.approx(hermite_series(n, x), rel=1e-12)
        assert hermite_eval(n, x) == pytest.approx(float(eval_hermite(n, x)), rel=1e-10)


def test_hermite_rejects_negative_degree():
    with pytest.raises(ValueError):
        hermite_eval(-1, 0.0)


def test_hermite_supported_to_high_degree():
    val = hermite_eval(200, 0.0)
    assert math.isfinite(val)
    assert val == pytest.approx(float(eval_hermite(200, 0.0)), rel=1e-9)


@pytest.mark.parametrize("n,alpha", [(0, 2.5), (1, 0.0), (4, 7.0), (12, 98.0)])
def test_laguerre_matches_scipy(n, alpha):
    x = np.array([0.0, 0.3, 2.0, 40.0, 120.0])
    mine = laguerre_eval(n, alpha, x)
    ref = eval_genlaguerre(n, alpha, x)
    assert np.allclose(mine, ref, rtol=1e-10)


def test_qho_values_at_origin(qho):
    assert qho.psi(0, 0.0) == pytest.approx(math.pi ** -0.25, abs=1e-14)
    assert qho.psi(1, 0.0) == 0.0


def test_qho_overlap_consistency_with_origin_derivative(qho):
    # psi_1'(0) psi_0(0) / (2 (eps_0 - eps_1)) reproduces -1/sqrt(2 pi)
    value = qho.psi_prime(1, 0.0) * qho.psi(0, 0.0) / (2.0 * (qho.energy(0) - qho.energy(1)))
    assert value == pytest.approx(-1.0 / math.sqrt(2.0 * math.pi), abs=1e-14)


def test_qho_energies_increasing(qho):
    energies = [qho.energy(n) for n in range(30)]
    assert all(b > a for a, b in zip(energies, energies[1:]))


def test_qho_parity(qho):
    x = np.linspace(0.1, 4.0, 7)
    for n in range(9):
        left = qho.psi(n, -x)
        right = (-1.0) ** n * qho.psi(n, x)
        assert np.array_equal(left, right)


def test_qho_orthonormality(qho):
    g = gram_matrix(qho, 20, -12.0, 12.0)
    assert np.abs(g - np.eye(21)).max() < 1e-6


def test_qho_schroedinger_residual(qho):
    # psi'' + (2 eps - x^2) psi = 0, second derivative by central differences
    h = 1e-4
    for n in (0, 1, 4, 9):
        for x in (-1.7, 0.3, 2.2):
            psi2 = (qho.psi(n, x + h) - 2 * qho.psi(n, x) + qho.psi(n, x - h)) / h**2
            residual = psi2 + (2 * qho.energy(n) - x * x) * qho.psi(n, x)
            assert abs(residual) < 1e-6


@pytest.mark.parametrize("n", [0, 1, 3, 8])
def test_qho_derivative_vs_finite_difference(qho, n):
    h = 1e-6
    for x in (-2.1, 0.0, 0.7, 3.3):
        fd = (qho.psi(n, x + h) - qho.psi(n, x - h)) / (2 * h)
        assert qho.psi_prime(n, x) == pytest.approx(fd, rel=1e-6, abs=1e-9)


def test_qho_origin_values_match_tables(qho):
    vals, ders = qho.origin_values(40)
    tab = qho.psi_table(40, np.array([0.0]))[:, 0]
    dtab = qho.psi_prime_table(40, np.array([0.0]))[:, 0]
    assert np.allclose(vals, tab, atol=1e-15)
    assert np.allclose(ders, dtab, atol=1e-15)


# --- Morse well ---------------------------------------------------------


def test_morse_state_count():
    assert MorseSystem(50.0).num_states() == 49
    assert MorseSystem(15.0).num_states() == 14
    assert MorseSystem(1.6).num_states() == 1
    with pytest.raises(ValueError):
        MorseSystem(0.4)


def test_morse_energies_increasing(morse50):
    energies = [morse50.energy(n) for n in range(morse50.num_states())]
    assert all(b > a for a, b in zip(energies, energies[1:]))
    assert morse50.energy(0) == pytest.approx(-0.5 * 49.5**2)


def test_morse_index_errors(morse50):
    with pytest.raises(IndexError):
        morse50.energy(49)
    with pytest.raises(IndexError):
        morse50.psi(60, 0.1)


def test_morse_normalization(morse50):
    from conftest import quad_overlap

    for n in (0, 1, 7, 30):
        assert quad_overlap(morse50, n, n, -np.inf, np.inf) == pytest.approx(1.0, abs=1e-6)


def test_morse_orthonormality(morse50):
    lo = morse50.support(20)[0]
    hi = morse50.support(20)[1]
    g = gram_matrix(morse50, 20, lo, hi, panels=400, order=24)
    assert np.abs(g - np.eye(21)).max() < 1e-6


def test_morse_node_counts(morse50):
    r = np.linspace(-0.8, 4.0, 4001)
    psi0 = morse50.psi(0, r)
    assert np.all(psi0 > 0.0)  # ground state has no interior zero
    psi1 = morse50.psi(1, r)
    assert int(np.sum(np.diff(np.sign(psi1)) != 0)) == 1


@pytest.mark.parametrize("n", [0, 1, 5, 20, 48])
def test_morse_derivative_vs_finite_difference(morse50, n):
    h = 1e-6
    for r in (-0.3, 0.05, 0.6, 1.4):
        fd = (morse50.psi(n, r + h) - morse50.psi(n, r - h)) / (2 * h)
        assert morse50.psi_prime(n, r) == pytest.approx(fd, rel=2e-6, abs=1e-8)


def test_morse_schroedinger_residual(morse50):
    # dimensionless form: psi'' = (lam^2 (e^{-2r} - 2 e^{-r}) - 2 eps) . psi... sign folded below
    lam = morse50.lam
    h = 1e-4
    for n in (0, 1, 5):
        for r in (-0.2, 0.1, 0.5):
            psi2 = (morse50.psi(n, r + h) - 2 * morse50.psi(n, r) + morse50.psi(n, r - h)) / h**2
            potential = lam**2 * (math.exp(-2 * r) - 2 * math.exp(-r)) / 2.0
            residual = psi2 - 2.0 * (potential - morse50.energy(n)) * morse50.psi(n, r)
            assert abs(residual) < 1e-4 * max(1.0, abs(psi2))


def test_superposition_state():
    st = SuperpositionState(1.3, 0.4)
    assert abs(st.amp0) ** 2 + abs(st.amp1) ** 2 == pytest.approx(1.0, abs=1e-15)
    assert st.weight0 + st.weight1 == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        SuperpositionState(3.5)
