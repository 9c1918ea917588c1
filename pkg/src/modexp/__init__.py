"""Exact computations on the modular curve X(N p^r): intersection matrices,
degrees of modular sheaves and the exponent comparing integral structures on
modular forms, with Klein-form certificates for the lower bound."""

from .arith import CycElt, pi_valuation
from .invariants import ExponentReport, exponent_exact, exponent_upper
from .klein import KleinFamily, standard_family, valuation_at_zero
from .linalg import Circulant, Mat, gauss_inverse
from .xcurve import ComponentLabel, build_M, build_T, tinv_closed

__version__ = "0.1.0"
