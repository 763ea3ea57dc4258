"""Exact free energies of mean-field spin models by sector collapse."""

from .gfunctions import (Builtin, DomainError, GFunction, Polynomial, Tabulated,
                         chebyshev_approximate, sup_norm_distance)
from .interpolation import (InterpolationReport, SplitSpec, condition_check,
                            interpolation_report, sign_propagation_check)
from .models import (Hopfield, PSpinPlain, PSpinTilde, RandomFieldCW, ScalarMeanField,
                     hamiltonian_density, load_model, model_from_dict, model_to_dict,
                     scalar)
from .sectors import (SectorBudgetError, alpha, alpha_value, build_class_table,
                      build_scalar_table, build_two_block_table, gibbs_expect,
                      model_table)

__version__ = "0.1.0"
