"""Compatibility of planar and curved austenite-martensite interfaces."""
from .errors import NegativeVerdict, NonplanarError
from .hulls import TwoWellSpec, kappa_set, mallard_diagonalize, three_well_configs, two_well_membership
from .interior import construct_interior_point, cubic_austenite_check, delta_condition_lhs, epsilon_dk
from .symmetry import Stretch, cubic_group, rotation_about_axis, variants
from .twinning import habit_plane, mallard_average, mallard_twin, solve_rank_one

__version__ = "0.1.0"
