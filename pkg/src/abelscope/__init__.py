"""Exact verification toolkit for the matrix group Gamma over Z[1/p], its
quotient by M_Z, and the Lie algebra homology behind Abels' finite
presentability criterion."""

from .exact import INFINITY, Rat, in_scaled_lattice, is_p_local, rat, vp
from .gamma import Gamma, GammaElt, IDENTITY
from .homology import abels_check, d2_matrix, d3_matrix, express_in_image, h2_weight_dim
from .liealg import LieAlgebra, build_abels4_algebra, build_paper_algebra
from .linalg import QMat, Subspace, kernel_basis, rref
from .marked import Marking, agreement_radius, ball, balls_equal, preset_marking

__version__ = "0.1.0"
