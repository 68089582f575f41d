"""Exact computations in the even infinitesimal cohomology theories I_2m.

Formal group laws, Segre classes of virtual bundles, and Kempf-Laksov classes
of Grassmann and Lagrangian Grassmann bundles, each computed along two
independent routes that are checked against each other.
"""
from .coeffs import GammaTable, Q2mScalar, gamma_table, nontriviality_index
from .fgl import FormalGroupLaw, build_fgl, verify_fgl_axioms
from .klengine import (
    GrassmannSetup,
    InvalidPartition,
    LagrangianSetup,
    kl_A_closed,
    kl_A_iterated,
    kl_C_closed,
    kl_C_iterated,
    specialize_split,
)
from .polyalg import Poly
from .segre import push_twisted_top, segre_formula, segre_virtual, segre_vishik
from .textio import canonicalize, parse, to_display, to_latex, to_text

__version__ = "0.1.0"
