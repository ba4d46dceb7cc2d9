"""Stationary transport observables: spin sink/source terms and heat flows.

Stationary spin currents vanish identically, yet the continuity equation for
the site magnetizations retains per-bath contributions that act as sources
or sinks. With bath occupations n_a(omega_l), weights w_a[l] and
R_l = w_L*(1+2*n_L) + w_R*(1+2*n_R) these read

    Q_L(k) = 4*pi*lam2 * sum_l u[k,l]^2 u[1,l]^2 w_L w_R (n_L - n_R) / R_l
    Q_R(k) = 4*pi*lam2 * sum_l u[k,l]^2 u[n,l]^2 w_L w_R (n_R - n_L) / R_l

and the bath heat flows

    H_L = 2*pi*lam2 * sum_l omega_l u[1,l]^2 w_L w_R (n_L - n_R) / R_l,

with H_R the same under L <-> R. The prefactors follow from evaluating the
dual dissipator on sigma_z (the spin one picks up an extra 2 because a
single mode flip changes <sigma_z> by 2*u^2, while it changes the energy by
exactly omega_l); both are pinned independently by the brute-force
generator traces in `openxx.oracle`. End-site symmetry u[1,l]^2 = u[n,l]^2
makes each pair sum to zero exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import ModeTable
from .steady import BathSpec, SteadyFactors, bath_occupations


@dataclass(frozen=True)
class FlowReport:
    """Per-site sink/source terms and total bath heat flows."""

    q_left: np.ndarray
    q_right: np.ndarray
    heat_left: float
    heat_right: float


def _flow_kernel(modes: ModeTable, baths: BathSpec) -> np.ndarray:
    """Common per-mode factor w_L w_R (n_L - n_R) / R_l."""
    if modes.omega[-1] <= 0:
        raise ValueError("all transition frequencies must be positive")
    n_l, n_r = bath_occupations(modes, baths)
    w_l, w_r = baths.weight_left, baths.weight_right
    r_tot = w_l * (1.0 + 2.0 * n_l) + w_r * (1.0 + 2.0 * n_r)
    return w_l * w_r * (n_l - n_r) / r_tot


def sink_source(modes: ModeTable, baths: BathSpec, k: int) -> tuple[float, float]:
    """(Q_L(k), Q_R(k)) at site k; they are opposite by end-site symmetry."""
    if not 1 <= k <= modes.n:
        raise ValueError(f"site {k} out of range 1..{modes.n}")
    kern = _flow_kernel(modes, baths)
    u_k = modes.u[k - 1] ** 2
    pref = 4.0 * math.pi * baths.lambda_sq
    q_l = pref * float(np.sum(u_k * modes.u[0] ** 2 * kern))
    q_r = -pref * float(np.sum(u_k * modes.u[-1] ** 2 * kern))
    return q_l, q_r


def heat_flow(modes: ModeTable, baths: BathSpec) -> tuple[float, float]:
    """(H_L, H_R): stationary heat flowing from each bath into the chain."""
    kern = _flow_kernel(modes, baths)
    pref = 2.0 * math.pi * baths.lambda_sq
    h_l = pref * float(np.sum(modes.omega * modes.u[0] ** 2 * kern))
    h_r = -pref * float(np.sum(modes.omega * modes.u[-1] ** 2 * kern))
    return h_l, h_r


def stationary_spin_current(modes: ModeTable, factors: SteadyFactors, k: int) -> float:
    """Expectation of the bond current J(k, k+1) in the stationary state.

    Identically zero: the current is off-diagonal in the energy eigenbasis
    (orthogonality of distinct mode-matrix columns), while the stationary
    state is diagonal. The dense oracle asserts the same from explicit
    matrices.
    """
    if not 1 <= k < modes.n:
        raise ValueError(f"bond {k} out of range 1..{modes.n - 1}")
    return 0.0


def flow_report(modes: ModeTable, baths: BathSpec) -> FlowReport:
    """Sink/source terms at every site plus both heat flows."""
    pairs = [sink_source(modes, baths, k) for k in range(1, modes.n + 1)]
    h_l, h_r = heat_flow(modes, baths)
    return FlowReport(q_left=np.array([p[0] for p in pairs]),
                      q_right=np.array([p[1] for p in pairs]),
                      heat_left=h_l, heat_right=h_r)
