"""Exact steady state, transport and two-spin entanglement of an XX chain
whose end spins are weakly coupled to thermal baths at different
temperatures."""

__version__ = "0.1.0"

from .chain import (ChainSpec, InfeasibleParameters, ModeTable,
                    check_frequency_assumption, eigen_energy, frequency_bound,
                    mode_table)
from .combinadics import IndexFamily, index_family, rank, unrank
from .reduced import XStateCoeffs, concurrence, pair_concurrence, xstate_coeffs
from .spinrep import (MinorCache, assemble_density_matrix, block_d, block_s,
                      block_s_entry, minor_determinant)
from .steady import (BathSpec, SteadyFactors, bose_occupation, gibbs_factors,
                     steady_eigenvalue, steady_factors)
from .transport import (FlowReport, flow_report, heat_flow, sink_source,
                        stationary_spin_current)

__all__ = [
    "__version__",
    "ChainSpec", "InfeasibleParameters", "ModeTable",
    "check_frequency_assumption", "eigen_energy", "frequency_bound",
    "mode_table",
    "IndexFamily", "index_family", "rank", "unrank",
    "XStateCoeffs", "concurrence", "pair_concurrence", "xstate_coeffs",
    "MinorCache", "assemble_density_matrix", "block_d", "block_s",
    "block_s_entry", "minor_determinant",
    "BathSpec", "SteadyFactors", "bose_occupation", "gibbs_factors",
    "steady_eigenvalue", "steady_factors",
    "FlowReport", "flow_report", "heat_flow", "sink_source",
    "stationary_spin_current",
]
