"""Cyclotomic polynomials, q-integers and the residue fields Q(zeta_d)."""

from .polys import (CycloProduct, cyclotomic, cyclotomic_coeffs, load_cache, q_integer,
                    save_cache)
from .field import (CycloElem, CycloRatFuncA, birat_at_root, cyclo_invert, product_at_root,
                    ratfunc_at_root, reduce_mod_phi, sum_factored, sum_rational)

__all__ = ["CycloProduct", "CycloElem", "CycloRatFuncA", "cyclotomic", "cyclotomic_coeffs",
           "q_integer", "reduce_mod_phi", "cyclo_invert", "product_at_root", "ratfunc_at_root",
           "birat_at_root", "sum_factored", "sum_rational", "load_cache", "save_cache"]
