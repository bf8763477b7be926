"""Pointed Grothendieck-Verdier categories, ribbon braids and conformal block spaces."""

from .exact_scalars import CycNumber, RootOfUnity, root_of_unity
from .pointed_gv import (
    FiniteAbelianGroup, PointedGVCategory, make_cyclic_category, make_product_category,
    scalar, dual,
)
from .blocks import block_space, handle_twist, boundary_twist, boundary_braiding, rbr_action
from .ribbon_braid import FramedBraid, fb_equals

__version__ = "0.1.0"
