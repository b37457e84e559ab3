"""Schema-agnostic progressive entity resolution."""

from .blocking import (
    Block,
    BlockCollection,
    NeighborList,
    block_filtering,
    block_purging,
    blocking_workflow,
    build_neighbor_list,
    suffixes,
    token_blocking,
    tokenize,
)
from .equality import PBS, PPS, arcs, arcs_weight, block_scheduling, build_profile_index, lecobi
from .evaluation import Budget, RecallCurve, auc_at, ideal_auc, normalized_auc, run_experiment
from .methods import METHODS, MethodParams, build_emitter
from .model import (
    Comparison,
    ERMode,
    GroundTruth,
    Profile,
    ProfileCollection,
    ProgressiveEmitter,
    block_cardinality,
    canonicalize,
)
from .naive import SAPSAB, SAPSN
from .similarity import GSPSN, LSPSN, build_position_index, rcf_weight

__version__ = "0.1.0"
