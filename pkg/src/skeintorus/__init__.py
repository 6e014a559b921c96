"""Exact quantum torus arithmetic for skein algebras of marked surfaces."""

from .errors import *  # noqa: F401,F403
from .scalars import (
    CyclotomicContext,
    GroundScalar,
    RootData,
    chebyshev_coefficient,
    cyclotomic,
    gauss_binomial,
    quantum_binomial,
    quantum_integer,
    root_data,
    v_power,
)
from .qtorus import CommutationMatrix, TorusElement, factor_ordered, reflection, weyl_normalize
from .chebyshev import cheb_closed_form, cheb_eval, cheb_poly, ke_sum
from .frobenius import frobenius_epsilon, frobenius_image_check
from .surface import MarkedSurfaceSpec, Quasitriangulation, builtin, builtin_names, skein_torus, vertex_matrix
from .flips import FlipResult, flip, transfer, verify_frobenius_flip
from .parsing import format_element, format_surface, parse_expression, parse_surface
from .center import integer_kernel, verify_center
from .surgery import SurgeryContext, SurgeryElement, plug_hole, theta_embed

__version__ = "0.1.0"
