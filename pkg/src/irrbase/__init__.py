"""Irredundant bases and related statistics of permutation groups, with a
focus on PGL_d(q) acting on subspaces."""

from .fq import FieldSpec, FqMatrix, field_make, field_of_order, gl_generators, gl_order, mat_rref
from .permgroup import PermGroup, StabilizerChain, contains, group_order, orbit, pointwise_stabilizer, stabilizer_chain
from .projective import (ActionTable, PairPoint, Subspace, build_action, build_pair_action, enumerate_subspaces,
                         gaussian_binomial, subspace_image)
from .stats import (BudgetExhausted, SearchBudget, StatsReport, compute_stats, greedy_base, height,
                    max_irredundant_base, max_minimal_base, min_base, relational_complexity)
from .bounds import GroupContext, bound_suite, cyclic_chain_length, thm31_bounds
from .witness import (BoundReport, WitnessChain, WitnessStep, intersection_algebra_dims, verify_witness,
                      witness_minimal_base_check, witness_sequence)

__version__ = "0.1.0"
