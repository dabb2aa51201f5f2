"""Knot-theoretic flocks: construction, classification, braid colorings and cocycle invariants."""
from .braids import BraidWord, ClosedBraidDiagram, CrossingRecord, close_braid, crossing_records, parse_braid
from .classification import (CatalogEntry, FlockClass, GroupCatalog, count_table, enumerate_flocks,
                             flocks_isomorphic, load_catalog, validate_catalog)
from .colorings import (ActionSpec, ColoringSet, OrbitPartition, act_central, act_conjugation,
                        act_two_sided, central_action, central_colorings, conjugation_action,
                        enumerate_colorings, is_valid_coloring, orbit_partition, two_sided_action)
from .errors import FlockError
from .fileio import read_braid_list, read_cochain, read_flock, read_group
from .groups import (FiniteGroup, GroupIso, admissible_b, are_isomorphic, automorphisms, center,
                     group_from_permutations, group_from_table)
from .homology import (Chain, CochainTable, boundary, boundary_matrix, check_1cocycle, check_2cocycle,
                       cocycle_space_1, homology_groups, is_degenerate, smith_normal_form)
from .invariants import (InvariantPolynomial, RefinedInvariant, batch_table2, cocycle_invariant,
                         coloring_cycle, evaluate_cocycle, refined_invariant)
from .loops import LoopTable, associator, is_extra_loop, loop_center, loop_from_table, m_construction, nucleus
from .perm import Permutation
from .ternary import (FlockSpec, TernaryTable, all_special, extra_loop_ternary, flock, flock_from_group,
                      is_associative, is_colorable, is_heap, is_idempotent, is_para_associative,
                      is_semi_commutative, is_ternary_quasigroup, recovery_equations_hold,
                      retract_group, satisfies_LN, satisfies_RN, skew)

__version__ = "0.1.0"
