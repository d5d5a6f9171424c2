"""Exact construction of antisymmetric paramodular forms as Borcherds products of pulled-back lifts."""
from .series import PuiseuxSeries, QZetaSeries, TruncationError, eta, eta_quotient, theta_ez, theta_rescaled
from .lattice import Lattice, RootSystemA, root_system, short_vectors, theta_series
from .weil import LiftCase, get_case, lift
from .jacobi import EZJacobiForm, ThetaBlockSpec, linear_forms, pullback, theta_block
from .borcherds import BorcherdsData, ParamodularExpansion, expand, product_data
from .paramodular import build, cusp_test, reproduce_tables

__version__ = "0.1.0"
