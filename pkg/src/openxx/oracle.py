"""Brute-force verification engine for small chains (dense, n <= 5).

Everything here is built from explicit matrices and first principles so it
can arbitrate the closed-form modules: jump operators assembled entry by
entry in the energy-occupation basis, the full generator vectorized and
null-solved by SVD, the occupation -> spin-product change of basis obtained
by applying Jordan-Wigner mode operators to the all-down state, and partial
traces taken by tensor reshaping.

Basis conventions, fixed module-wide: occupation words index the energy
eigenbasis as binary numbers with the mode-1 bit most significant; spin
product states put site 1 in the first Kronecker factor with the single-site
basis ordered (up, down).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .chain import ChainSpec, ModeTable, eigen_energy
from .steady import BathSpec, SteadyFactors, all_eigenvalues, bose_occupation

KERNEL_LIMIT = 5  # superoperator is 4^n x 4^n
DENSE_ORACLE_LIMIT = 8

_SPLUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_ID = np.eye(2)


def fock_index(bits) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def fock_words(n: int):
    """All occupation words in index order."""
    return [tuple(w) for w in product((0, 1), repeat=n)]


@dataclass(frozen=True)
class LindbladSet:
    """Dense jump operators and their thermal rates.

    ``a_dag[(side, l)]`` is the raising operator attached to bath `side`
    ("L" or "R") and mode l (1-based); ``rate_down``/``rate_up`` are the
    decay and excitation rates 2*pi*w*(n+1) and 2*pi*w*n. ``groups`` lists
    the modes per distinct frequency (always singletons while the
    frequencies are strictly decreasing; kept for metadata).
    """

    n: int
    a_dag: dict
    rate_down: dict
    rate_up: dict
    lambda_sq: float
    groups: tuple[tuple[int, ...], ...]


def build_lindblad_set(spec: ChainSpec, modes: ModeTable, baths: BathSpec) -> LindbladSet:
    """Explicit jump operators in the occupation basis.

    A_dag[L, l] has entries (+/-)u[1,l] between words differing only in bit
    l, with sign (-1)^(ones before l); A_dag[R, l] carries u[n,l] and sign
    (-1)^(ones after l).
    """
    n = spec.n_sites
    if n > DENSE_ORACLE_LIMIT:
        raise ValueError(f"dense oracle limited to n <= {DENSE_ORACLE_LIMIT}")
    if modes.omega[-1] <= 0:
        raise ValueError("all transition frequencies must be positive")
    dim = 2 ** n
    a_dag = {}
    rate_down = {}
    rate_up = {}
    for l in range(1, n + 1):
        mats = {"L": np.zeros((dim, dim)), "R": np.zeros((dim, dim))}
        for word in fock_words(n):
            if word[l - 1] == 1:
                continue
            raised = word[:l - 1] + (1,) + word[l:]
            row, col = fock_index(raised), fock_index(word)
            sign_l = -1.0 if sum(word[:l - 1]) % 2 else 1.0
            sign_r = -1.0 if sum(word[l:]) % 2 else 1.0
            mats["L"][row, col] = sign_l * modes.u[0, l - 1]
            mats["R"][row, col] = sign_r * modes.u[n - 1, l - 1]
        for side, w in (("L", baths.weight_left[l - 1]),
                        ("R", baths.weight_right[l - 1])):
            occ = bose_occupation(
                baths.temp_left if side == "L" else baths.temp_right,
                modes.omega[l - 1])
            a_dag[(side, l)] = mats[side]
            rate_down[(side, l)] = 2.0 * math.pi * w * (occ + 1.0)
            rate_up[(side, l)] = 2.0 * math.pi * w * occ
    groups = tuple((l,) for l in range(1, n + 1))
    return LindbladSet(n=n, a_dag=a_dag, rate_down=rate_down, rate_up=rate_up,
                       lambda_sq=baths.lambda_sq, groups=groups)


def hamiltonian_fock(spec: ChainSpec) -> np.ndarray:
    """Chain Hamiltonian in the occupation basis (diagonal of energies)."""
    return np.diag([eigen_energy(spec, w) for w in fock_words(spec.n_sites)])


def analytic_fock_state(factors: SteadyFactors) -> np.ndarray:
    """The factorized stationary state as a dense occupation-basis matrix."""
    return np.diag(all_eigenvalues(factors))


def _channel(a: np.ndarray, rho: np.ndarray) -> np.ndarray:
    sandwich = a @ rho @ a.conj().T
    aa = a.conj().T @ a
    return sandwich - 0.5 * (aa @ rho + rho @ aa)


def dissipator_apply(lset: LindbladSet, rho: np.ndarray,
                     sides=("L", "R"), mode: int | None = None) -> np.ndarray:
    """Dissipator applied to `rho`, optionally restricted to one bath/mode."""
    out = np.zeros_like(rho, dtype=complex)
    for (side, l), a_dag in lset.a_dag.items():
        if side not in sides or (mode is not None and l != mode):
            continue
        a = a_dag.T  # operators are real
        out += lset.rate_down[(side, l)] * _channel(a, rho)
        out += lset.rate_up[(side, l)] * _channel(a_dag, rho)
    return lset.lambda_sq * out


def generator_apply(lset: LindbladSet, h_fock: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Full GKSL generator -i[H, rho] + dissipator."""
    return -1j * (h_fock @ rho - rho @ h_fock) + dissipator_apply(lset, rho)


def liouvillian_matrix(lset: LindbladSet, h_fock: np.ndarray) -> np.ndarray:
    """Vectorized generator with row-major vec: vec(A rho B) = (A kron B^T) vec(rho)."""
    dim = h_fock.shape[0]
    eye = np.eye(dim)
    mat = -1j * (np.kron(h_fock, eye) - np.kron(eye, h_fock.T))
    mat = mat.astype(complex)
    for (side, l), a_dag in lset.a_dag.items():
        for a, rate in ((a_dag.T, lset.rate_down[(side, l)]),
                        (a_dag, lset.rate_up[(side, l)])):
            aa = a.T @ a
            mat += lset.lambda_sq * rate * (
                np.kron(a, a) - 0.5 * (np.kron(aa, eye) + np.kron(eye, aa.T)))
    return mat


def kernel_state(lset: LindbladSet, h_fock: np.ndarray,
                 svd_tol: float = 1e-10) -> tuple[np.ndarray, int]:
    """Normalized kernel state of the full generator and the kernel dimension.

    The null space is read off an SVD of the vectorized generator with a
    relative singular-value threshold. A kernel that is numerically
    ambiguous (several near-zero singular values where a unique state is
    expected) shows up directly in the returned dimension.
    """
    n = lset.n
    if n > KERNEL_LIMIT:
        raise ValueError(f"kernel solve limited to n <= {KERNEL_LIMIT}")
    mat = liouvillian_matrix(lset, h_fock)
    _, svals, vh = np.linalg.svd(mat)
    cut = svd_tol * svals[0]
    kdim = int(np.sum(svals < cut))
    vec = vh[-1].conj()
    rho = vec.reshape(h_fock.shape)
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise ArithmeticError("kernel vector has (numerically) zero trace")
    return rho / tr, kdim


def site_operator(op: np.ndarray, k: int, n: int) -> np.ndarray:
    """`op` acting on site k of an n-site spin product space."""
    mats = [_ID] * n
    mats[k - 1] = op
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def spin_observable(kind: str, spec: ChainSpec, k: int | None = None) -> np.ndarray:
    """Named observables in the spin tensor basis.

    kind: "sigma_z" (site k), "current" (bond k, k+1, the operator
    4i(s-^k s+^(k+1) - s+^k s-^(k+1))) or "hamiltonian".
    """
    n = spec.n_sites
    if kind == "sigma_z":
        return site_operator(_SZ, k, n)
    if kind == "current":
        if not 1 <= k < n:
            raise ValueError(f"bond {k} out of range")
        sm_k = site_operator(_SPLUS.T, k, n)
        sp_k = site_operator(_SPLUS, k, n)
        sm_k1 = site_operator(_SPLUS.T, k + 1, n)
        sp_k1 = site_operator(_SPLUS, k + 1, n)
        return 4.0j * (sm_k @ sp_k1 - sp_k @ sm_k1)
    if kind == "hamiltonian":
        h = np.zeros((2 ** n, 2 ** n), dtype=complex)
        for j in range(1, n):
            h += spec.g * (site_operator(_SX, j, n) @ site_operator(_SX, j + 1, n)
                           + site_operator(_SY, j, n) @ site_operator(_SY, j + 1, n))
        for j in range(1, n + 1):
            h += spec.delta * site_operator(_SZ, j, n)
        return h
    raise ValueError(f"unknown observable kind {kind!r}")


def mode_raising_spin(modes: ModeTable, l: int) -> np.ndarray:
    """Jordan-Wigner mode raising operator b_dag(l) in the spin tensor basis."""
    n = modes.n
    out = np.zeros((2 ** n, 2 ** n))
    for j in range(1, n + 1):
        term = site_operator(_SPLUS, j, n)
        for kk in range(1, j):
            term = term @ (-site_operator(_SZ, kk, n))
        out += modes.u[l - 1, j - 1] * term
    return out


def fock_to_spin_matrix(modes: ModeTable) -> np.ndarray:
    """Orthogonal change of basis V: column fock_index(word) is the energy
    eigenvector |word> expanded in the spin tensor basis."""
    n = modes.n
    dim = 2 ** n
    b_dag = [mode_raising_spin(modes, l) for l in range(1, n + 1)]
    vac = np.zeros(dim)
    vac[dim - 1] = 1.0  # all spins down
    v = np.empty((dim, dim))
    for word in fock_words(n):
        vec = vac
        for l in range(n, 0, -1):
            if word[l - 1]:
                vec = b_dag[l - 1] @ vec
        v[:, fock_index(word)] = vec
    return v


def partial_trace_pair(rho: np.ndarray, r: int, s: int, n: int) -> np.ndarray:
    """4x4 reduced state of spins (r, s) from a tensor-basis density matrix."""
    if not (1 <= r < s <= n):
        raise ValueError(f"need 1 <= r < s <= n, got ({r}, {s})")
    if rho.shape != (2 ** n, 2 ** n):
        raise ValueError("state dimension does not match n")
    keep = [r - 1, s - 1]
    rest = [i for i in range(n) if i not in keep]
    t = rho.reshape([2] * (2 * n))
    order = keep + rest + [n + i for i in keep] + [n + i for i in rest]
    t = np.transpose(t, order).reshape(4, 2 ** (n - 2), 4, 2 ** (n - 2))
    return np.einsum("ambm->ab", t)
