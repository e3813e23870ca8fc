"""Exact and numeric verification of q-analogues of a Ramanujan-type 1/pi series."""

from .congruence import (Verdict, is_congruent, verify_block_multiplicativity, verify_lemma,
                         verify_parametric_congruence, verify_q_congruence, verify_root_vanishing,
                         verify_supercongruence, verify_theorem2, verify_theorem4, verify_theorem5,
                         verify_truncated_half)
from .family import FamilySpec, load_family, parse_family, serialize_family

__version__ = "0.1.0"
