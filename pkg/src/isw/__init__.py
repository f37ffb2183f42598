"""Congruences, centrality and nilpotence for finite inverse semigroups."""
from .errors import ISWError, InvalidSemigroup, TheoremMismatch
from .semigroup import InverseSemigroup, green_relations, green_h
from .constructors import (
    PartialBijection,
    brandt,
    chain,
    cyclic_group,
    direct_product,
    strong_semilattice_of_groups,
    symmetric_inverse_monoid,
)
from .congruence import congruence_from_pair, enumerate_congruences, kernel, trace
from .conjugation import ker_phi, ker_psi, metacenter
from .centrality import center_congruence, centralizes, centralizes_bruteforce
from .series import conjecture_check, is_nilpotent, is_solvable, malcev_relation, upper_central_series

__version__ = "0.1.0"
