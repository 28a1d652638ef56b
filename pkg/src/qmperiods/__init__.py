"""Quasimap intersection numbers and the periods of Calabi-Yau hypersurfaces in CP^{N-1}."""
from .exact import Jet, Rational, binomial, fmt_rational, jet_inverse, jet_pow
from .hypergeom import A_coeff, B_coeff_conv, B_coeff_jet, CoeffTable, a_coeff, w_closed_form
from .multipoly import MultiPoly, RatFunc, e_product
from .residue import IntegrandSpec, build_integrand, intersection_number, iterated_residue, residue_at
from .series import (
    PSeries,
    QSeries,
    XQSeries,
    W_series,
    gw_gen_function,
    hori_combination,
    i_function,
    invert_mirror_map,
    mirror_map,
    pf_operator_apply,
    virtual_gen_function,
    w_series,
)

__version__ = "0.1.0"
