"""Exact Fourier coefficients of exceptional theta lifts to Sp6 and split G2."""
from .scalars import GaussRational, K, T, format_scalar, parse_scalar
from .octonions import Octonion, Quaternion, oct_mul, oct_norm, oct_trace, bilinear_O, trilinear_O
from .jordan import JElement, J_E, J_I, SymMatrix3, norm_J, sharp, cross, pair_I, pair_E, rank
from .lie_ops import (
    delta, make_null_pair, make_singular_pair, base_singular_pair, to_E_frame, phi_op,
)
from .enumeration import (
    BinaryCubic, OmegaSet, oct_shell, omega_E, omega_I, qf_short_vectors, sp6_rank_one_lifts,
)
from .theta import (
    CoeffTable, PolyVW, WElement, divisor_sigma, g2_fourier, normalize_table, p_m, p_sp6,
    pr_E, pr_I, sp6_fourier, weight_lambda,
)

__version__ = "0.1.0"
