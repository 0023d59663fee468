"""Finite transitive Kripke frames: frame conditions, validity, frame
formulas, reductions, and tree embeddings."""

from .errors import (
    BudgetExceeded, DanglingEdge, DuplicatePoint, EmptyGenerator, FormulaSyntaxError, FrameError,
    InvalidIndex, NonTransitive, NotRooted, OrderingMismatch, RejectionBudgetExceeded,
    SkeletonNotTree, TransframeError, UnknownPoint, WeakWidthViolation,
)
from .families import CorpusSpec, enumerate_frames, generate_corpus, make_H, verify_H_properties, write_corpus
from .formula import (
    And, Bottom, Box, Diamond, Formula, Implies, Not, Or, Var, mk_B, mk_Wid, mk_Wid_bullet,
    mk_Wid_plus, parse, to_text, variables,
)
from .frame import (
    Frame, build_frame, check_irr_antichain_at_most, check_rank_at_most, check_weak_width_at_most,
    check_width_at_most, clusters, downset, generated_subframe, is_rooted, max_antichain,
    rank_of_frame, rank_of_point, restrict, upset, weak_width_at, width,
)
from .io import dump_frame, frame_from_json, frame_to_json, load_frame, to_dot
from .jankov import FrameFormulaSpec, canonical_spec, canonical_valuation, frame_formula
from .reduction import (
    ReductionMap, audit_sequence, compose, crosscheck_frame_formula, find_reduction,
    is_reduction, reducibility_matrix,
)
from .semantics import extension, frame_valid, point_valid, satisfiable_at, satisfies
from .trees import (
    OmegaTree, StdTriple, TreeClass, decompose_upset, nat_leq, parse_tree, rt, seq_embed,
    seq_pointwise, srt, std_triple, tree_embed,
)

__version__ = "0.1.0"
