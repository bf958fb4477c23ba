"""Invariants of forms encoded as block designs: colouring filters and exact evaluation."""

from .census import (AHTriple, ah_codimension, count_total_monomials,
                     count_weight_arrays, covering_bound, is_ah_ordinary)
from .chroma import (chromatic_number, count_proper_colorings,
                     enumerate_proper_colorings, has_clique, is_q_colorable,
                     is_vertex_critical, iter_proper_colorings, split_search)
from .design import (BlockDesign, CollinearityGraph, DesignError, ValidationReport,
                     collinearity, parse_block_list, parse_design, parse_symbolic,
                     read_graph_list, reorder_sign, serialize, validate)
from .evaluate import (FormSet, brute_force_evaluate, det, det_table, evaluate,
                       evaluate_batch, parallel_evaluate, parse_forms)
from .gen import GenParams, GuardExceeded, brute_force_generate, generate, pipeline_filter
from .symmetry import (PointPermutation, canonical_key, design_aut_order,
                       graph_aut_order, is_design_automorphism)

__version__ = "0.1.0"
