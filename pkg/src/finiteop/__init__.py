"""Orthogonal polynomials on finite point sets: duality, ensembles and kernels."""
from .classical import (HahnParams, KrawtchoukParams, hahn_data, hahn_value, krawtchouk_data,
                        krawtchouk_value, limit_transition_check, verify_identity_2,
                        verify_identity_3)
from .duality import DualPair, dual_system, verify_theorem1
from .ensembles import (KernelMatrix, SubsetMeasure, complement_kernel, complement_measure,
                        correlation_bruteforce, correlation_determinantal, ensemble, kernel,
                        verify_prop2, verify_theorem5)
from .grid import Grid, WeightTable, dual_weight, make_grid
from .hypernum import (RATIONAL, FloatBackend, HypTerminating, eval_terminating,
                       pfaff_transform_rhs, pochhammer, thomae_transform_rhs)
from .orthopoly import (OrthoSystem, cd_kernel_offdiag, elementary_symmetric, evaluate,
                        interpolation_leading_coeffs, orthogonalize)

__version__ = "0.1.0"
