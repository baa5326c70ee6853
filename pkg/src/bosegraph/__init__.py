"""Mode entanglement generated by Bose-Hubbard dynamics on small rooted graphs."""

from .dynamics import NumericalError, decompose, evolve, rk2_evolve
from .entanglement import EPResult, entangling_power, entropy, reduced_distribution
from .fock import FockBasis, enumerate_basis, hop_matrix_element
from .graphs import (
    GraphError,
    GraphInvariants,
    RootedGraph,
    canonical_key,
    enumerate_rooted_graphs,
    invariants,
)
from .hamiltonian import build, build_hopping, parity_operator
from .perturbation import (
    bright_state,
    ep_surrogate,
    pmax_closed_form_localized,
    pmax_closed_form_uniform,
    rabi_pmax,
    two_level,
)

__version__ = "0.1.0"
