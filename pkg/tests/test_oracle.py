import math
from itertools import combinations, product

import numpy as np
import pytest

from openxx.chain import ChainSpec, eigen_energy, frequency_bound, mode_table
from openxx.oracle import (analytic_fock_state, build_lindblad_set,
                           dissipator_apply, fock_index, fock_to_spin_matrix,
                           fock_words, generator_apply, hamiltonian_fock,
                           kernel_state, liouvillian_matrix,
                           partial_trace_pair, site_operator, spin_observable)
from openxx.reduced import xstate_coeffs
from openxx.steady import BathSpec, steady_factors

SQRT2 = math.sqrt(2.0)


def ket(bits):
    v = np.zeros(2 ** len(bits))
    v[fock_index(bits)] = 1.0
    return v


def op(bra, ket_bits):
    return np.outer(ket(bra), ket(ket_bits))


def random_case(rng, n, **kw):
    delta = kw.pop("delta", rng.uniform(1, 50))
    frac = kw.pop("frac", rng.uniform(0.05, 0.95))
    spec = ChainSpec(n, delta, frac * frequency_bound(ChainSpec(n, delta, delta / 4)))
    baths = BathSpec(n,
                     kw.pop("t_left", rng.uniform(0, 20)),
                     kw.pop("t_right", rng.uniform(0, 20)),
                     rng.uniform(0.2, 2, n), rng.uniform(0.2, 2, n),
                     lambda_sq=rng.uniform(0.5, 2))
    return spec, mode_table(spec), baths


def test_two_site_jump_operator_table():
    spec = ChainSpec(2, 3.0, 1.0)
    lset = build_lindblad_set(spec, mode_table(spec), BathSpec(2, 1.0, 2.0))
    s = 1 / SQRT2
    assert np.allclose(lset.a_dag[("L", 1)],
                       s * (op((1, 0), (0, 0)) + op((1, 1), (0, 1))), atol=1e-15)
    assert np.allclose(lset.a_dag[("L", 2)],
                       s * (op((0, 1), (0, 0)) - op((1, 1), (1, 0))), atol=1e-15)
    assert np.allclose(lset.a_dag[("R", 1)],
                       s * (op((1, 0), (0, 0)) - op((1, 1), (0, 1))), atol=1e-15)
    assert np.allclose(lset.a_dag[("R", 2)],
                       -s * (op((0, 1), (0, 0)) + op((1, 1), (1, 0))), atol=1e-15)


def test_three_site_jump_operator_table():
    spec = ChainSpec(3, 3.0, 1.0)
    lset = build_lindblad_set(spec, mode_table(spec), BathSpec(3, 1.0, 2.0))
    assert np.allclose(
        lset.a_dag[("L", 2)],
        (op((0, 1, 0), (0, 0, 0)) - op((1, 1, 0), (1, 0, 0))
         - op((1, 1, 1), (1, 0, 1)) + op((0, 1, 1), (0, 0, 1))) / SQRT2,
        atol=1e-15)
    assert np.allclose(
        lset.a_dag[("L", 3)],
        0.5 * (op((0, 0, 1), (0, 0, 0)) - op((1, 0, 1), (1, 0, 0))
               - op((0, 1, 1), (0, 1, 0)) + op((1, 1, 1), (1, 1, 0))),
        atol=1e-15)
    assert np.allclose(
        lset.a_dag[("R", 2)],
        (op((0, 1, 1), (0, 0, 1)) + op((1, 1, 1), (1, 0, 1))
         - op((0, 1, 0), (0, 0, 0)) - op((1, 1, 0), (1, 0, 0))) / SQRT2,
        atol=1e-15)
    assert np.allclose(
        lset.a_dag[("R", 3)],
        0.5 * (op((0, 0, 1), (0, 0, 0)) + op((1, 0, 1), (1, 0, 0))
               + op((0, 1, 1), (0, 1, 0)) + op((1, 1, 1), (1, 1, 0))),
        atol=1e-15)
    # sign-string form for the remaining right-bath operator
    assert np.allclose(
        lset.a_dag[("R", 1)],
        0.5 * (op((1, 0, 0), (0, 0, 0)) - op((1, 1, 0), (0, 1, 0))
               - op((1, 0, 1), (0, 0, 1)) + op((1, 1, 1), (0, 1, 1))),
        atol=1e-15)


def test_jump_operators_sum_to_ladder_operator():
    rng = np.random.default_rng(0)
    for n in (2, 3, 4):
        spec, modes, baths = random_case(rng, n)
        lset = build_lindblad_set(spec, modes, baths)
        v = fock_to_spin_matrix(modes)
        s_plus = np.array([[0.0, 1.0], [0.0, 0.0]])
        for side, site in (("L", 1), ("R", n)):
            total = sum(lset.a_dag[(side, l)] for l in range(1, n + 1))
            expected = v.T @ site_operator(s_plus, site, n) @ v
            assert np.abs(total - expected).max() < 1e-12


def test_a_dag_a_is_diagonal():
    rng = np.random.default_rng(1)
    for n in (2, 3, 5):
        spec, modes, baths = random_case(rng, n)
        lset = build_lindblad_set(spec, modes, baths)
        words = fock_words(n)
        for (side, l), a_dag in lset.a_dag.items():
            u_sq = modes.u[0 if side == "L" else n - 1, l - 1] ** 2
            prod = a_dag @ a_dag.T
            assert np.abs(prod - np.diag(np.diag(prod))).max() == 0.0
            expected = np.array([u_sq * w[l - 1] for w in words])
            assert np.abs(np.diag(prod) - expected).max() < 1e-14
            assert np.count_nonzero(a_dag) == 2 ** (n - 1)


def test_dissipator_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(2)
    spec, modes, baths = random_case(rng, 3)
    lset = build_lindblad_set(spec, modes, baths)
    x = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    rho = x + x.conj().T
    out = dissipator_apply(lset, rho)
    assert abs(np.trace(out)) < 1e-12 * np.abs(out).max()
    assert np.abs(out - out.conj().T).max() < 1e-12


def test_analytic_state_is_stationary():
    rng = np.random.default_rng(3)
    for n in (2, 3, 4, 5):
        spec, modes, baths = random_case(rng, n)
        fac = steady_factors(modes, baths)
        lset = build_lindblad_set(spec, modes, baths)
        h = hamiltonian_fock(spec)
        res = generator_apply(lset, h, analytic_fock_state(fac))
        assert np.abs(res).max() < 1e-10


def test_corrupted_state_is_not_stationary():
    # negative control: perturbing one eigenvalue must break stationarity
    rng = np.random.default_rng(4)
    spec, modes, baths = random_case(rng, 3, t_left=2.0, t_right=9.0)
    fac = steady_factors(modes, baths)
    rho = analytic_fock_state(fac)
    rho[0, 0] += 0.01
    rho[-1, -1] -= 0.01
    lset = build_lindblad_set(spec, modes, baths)
    res = generator_apply(lset, hamiltonian_fock(spec), rho)
    assert np.abs(res).max() > 1e-4


def test_vectorization_convention():
    rng = np.random.default_rng(5)
    a, b, rho = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
                 for _ in range(3))
    direct = (a @ rho @ b).reshape(-1)
    via_kron = np.kron(a, b.T) @ rho.reshape(-1)
    assert np.abs(direct - via_kron).max() < 1e-12


def test_liouvillian_matrix_matches_generator():
    rng = np.random.default_rng(6)
    spec, modes, baths = random_case(rng, 3)
    lset = build_lindblad_set(spec, modes, baths)
    h = hamiltonian_fock(spec)
    lmat = liouvillian_matrix(lset, h)
    x = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    assert np.abs((lmat @ x.reshape(-1)).reshape(8, 8)
                  - generator_apply(lset, h, x)).max() < 1e-11


def test_kernel_state_and_uniqueness():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        spec, modes, baths = random_case(rng, n, t_left=3.0)
        fac = steady_factors(modes, baths)
        lset = build_lindblad_set(spec, modes, baths)
        rho_k, kdim = kernel_state(lset, hamiltonian_fock(spec))
        assert kdim == 1
        assert np.abs(rho_k - analytic_fock_state(fac)).max() < 1e-9
        off = rho_k - np.diag(np.diag(rho_k))
        assert np.abs(off).max() < 1e-10


def test_kernel_matches_gibbs_at_equal_temperatures():
    spec = ChainSpec(3, 6.0, 1.5)
    modes = mode_table(spec)
    temp = 4.0
    baths = BathSpec(3, temp, temp)
    lset = build_lindblad_set(spec, modes, baths)
    rho_k, _ = kernel_state(lset, hamiltonian_fock(spec))
    energies = np.array([eigen_energy(spec, w) for w in fock_words(3)])
    gibbs = np.exp(-energies / temp)
    gibbs /= gibbs.sum()
    assert np.abs(rho_k - np.diag(gibbs)).max() < 1e-9


def test_fock_to_spin_columns():
    # explicit eigenvector expansions of the 3-site chain
    modes = mode_table(ChainSpec(3, 2.0, 0.7))
    v = fock_to_spin_matrix(modes)
    assert np.abs(v @ v.T - np.eye(8)).max() < 1e-12
    def spin_ket(*updown):
        vec = np.array([1.0])
        for ud in updown:
            vec = np.kron(vec, np.array([1.0, 0.0]) if ud else np.array([0.0, 1.0]))
        return vec
    col100 = 0.5 * (spin_ket(1, 0, 0) + SQRT2 * spin_ket(0, 1, 0) + spin_ket(0, 0, 1))
    assert np.abs(v[:, fock_index((1, 0, 0))] - col100).max() < 1e-13
    col010 = (spin_ket(1, 0, 0) - spin_ket(0, 0, 1)) / SQRT2
    assert np.abs(v[:, fock_index((0, 1, 0))] - col010).max() < 1e-13
    col110 = -0.5 * (spin_ket(1, 1, 0) + SQRT2 * spin_ket(1, 0, 1) + spin_ket(0, 1, 1))
    assert np.abs(v[:, fock_index((1, 1, 0))] - col110).max() < 1e-13
    assert np.abs(v[:, fock_index((1, 1, 1))] + spin_ket(1, 1, 1)).max() < 1e-13
    assert np.abs(v[:, fock_index((0, 0, 0))] - spin_ket(0, 0, 0)).max() < 1e-13


def test_spin_hamiltonian_diagonalizes():
    rng = np.random.default_rng(8)
    for n in (2, 3, 4):
        spec, modes, _ = random_case(rng, n)
        v = fock_to_spin_matrix(modes)
        h_spin = spin_observable("hamiltonian", spec).real
        back = v.T @ h_spin @ v
        assert np.abs(back - hamiltonian_fock(spec)).max() < 1e-10


def test_partial_trace_product_state():
    n = 3
    rho = np.zeros((8, 8))
    rho[7, 7] = 1.0  # all spins down
    red = partial_trace_pair(rho, 1, 3, n)
    assert np.abs(red - np.diag([0.0, 0.0, 0.0, 1.0])).max() == 0.0
    assert np.trace(red) == pytest.approx(1.0)


def test_partial_trace_matches_xstate():
    rng = np.random.default_rng(9)
    for n in (3, 4, 5):
        spec, modes, baths = random_case(rng, n)
        fac = steady_factors(modes, baths)
        v = fock_to_spin_matrix(modes)
        rho_t = v @ analytic_fock_state(fac) @ v.T
        for r, s in combinations(range(1, n + 1), 2):
            red = partial_trace_pair(rho_t, r, s, n)
            assert np.abs(red - xstate_coeffs(modes, fac, r, s).matrix()).max() < 1e-10


def test_current_and_sigma_z_expectations():
    rng = np.random.default_rng(10)
    for n in (2, 4):
        spec, modes, baths = random_case(rng, n)
        fac = steady_factors(modes, baths)
        v = fock_to_spin_matrix(modes)
        rho = analytic_fock_state(fac)
        for k in range(1, n):
            j_fock = v.T @ spin_observable("current", spec, k) @ v
            assert abs(np.trace(rho @ j_fock)) < 1e-10
            # already off-diagonal on every eigenstate
            assert np.abs(np.diag(j_fock)).max() < 1e-12
        for k in range(1, n + 1):
            sz_fock = v.T @ spin_observable("sigma_z", spec, k) @ v
            expected = 2.0 * float(np.sum(modes.u[k - 1] ** 2 * fac.lam1)) - 1.0
            assert np.trace(rho @ sz_fock).real == pytest.approx(expected, rel=1e-10)


def test_energy_finite_difference_consistency():
    # at equal temperatures <H> = -d/d(beta) ln Z
    spec = ChainSpec(3, 5.0, 1.2)
    modes = mode_table(spec)
    temp = 6.0
    beta = 1.0 / temp
    fac = steady_factors(modes, BathSpec(3, temp, temp))
    rho = analytic_fock_state(fac)
    h = hamiltonian_fock(spec)
    energies = np.diag(h)
    def log_z(b):
        return math.log(np.exp(-b * energies).sum())
    step = 1e-6
    expected = -(log_z(beta + step) - log_z(beta - step)) / (2 * step)
    assert np.trace(rho @ h).real == pytest.approx(expected, rel=1e-7)
