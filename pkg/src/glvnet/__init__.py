"""Coexistence analysis of competitive Lotka-Volterra systems on networks.

Submodules: graphs (networks and generators), spectra (dense symmetric
linear algebra), glv (the model and its equilibrium), bounds (closed-form
coexistence thresholds), bifurcation (locating and classifying the first
transition), dynamics (time integration), experiments (ensemble ratio
sweeps), cli (command-line front end).
"""

from .bifurcation import BifurcationReport, BranchSample, branch, classify, find_fig2_pair, tau_pitch, tau_trans
from .bounds import (
    Case1Params,
    Case2Params,
    CubicBoundResult,
    omega_case1,
    omega_case2,
    omega_regular,
    p_of_tau,
    regime_limits,
)
from .dynamics import Trajectory, integrate, rhs, verify_global_stability
from .glv import (
    EquilibriumReport,
    InteractionSystem,
    constant_competition,
    equilibrium,
    equilibrium_neumann,
    jacobian_at,
    walk_bound_lower,
)
from .graphs import (
    UndirectedGraph,
    complete_bipartite,
    configuration_model,
    cycle,
    is_graphical,
    random_regular,
    read_graph,
    sample_binomial_degrees,
    star,
    write_graph,
)
from .spectra import Spectrum, eig_symmetric, gershgorin_all_negative, is_negative_definite, solve_spd

__version__ = "0.1.0"
