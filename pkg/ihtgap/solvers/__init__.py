"""Sparse solvers: IHT, support-restricted debiasing and the exhaustive oracle."""
from ihtgap.solvers.brute_force import brute_force_l0_erm
from ihtgap.solvers.debias import debias
from ihtgap.solvers.iht_solver import default_step_size, iht_solve, iteration_budget, \
    population_iht_trajectory, recommended_sparsity

__all__ = [
    "brute_force_l0_erm",
    "debias",
    "default_step_size",
    "iht_solve",
    "iteration_budget",
    "population_iht_trajectory",
    "recommended_sparsity",
]
