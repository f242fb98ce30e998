"""Exact intersection numbers on Demailly jet towers of projective hypersurfaces,
the holomorphic Morse degree bounds they imply, and the Schur-power vanishing
check for low-order jet differentials."""

from .hypersurface import DegreePolynomial, chern_classes_of_hypersurface, evaluate_degree
from .morse import (
    ComputationTooLarge,
    MorseResult,
    WeightVector,
    canonical_weights,
    compute_bound,
    degree_bound,
    morse_class,
)
from .polyring import IntersectionPolynomial, Poly, Ring, Variable, c, coeff_of, d, h, mul, parse, substitute, u
from .schur import (
    GradedPiece,
    Partition,
    br_vanishing,
    decompose_tensor,
    graded_pieces,
    pieri,
    schur_dim,
    verify_theorem1,
)
from .tower import TowerAlgebra, TowerModel, build_tower, integrate_fiber, pow_reduced, reduce

__version__ = "0.1.0"
