"""Distributed approximation algorithms, exact solvers, and hardness
instance generators for vertex cover and dominating set on square graphs."""

from .errors import (
    BandwidthError,
    ConnectivityError,
    ContractError,
    EncodingError,
    GenerationError,
    InputError,
    ParseError,
    PowerGraphError,
    RoundCapError,
    SizeCapError,
)
from .exact import exact_mds, exact_mvc
from .graph import (
    DS1,
    DS2,
    VC1,
    VC2,
    Graph,
    Solution,
    is_feasible,
    make_solution,
    matching_2approx,
    square,
)
from .graphio import read_graph, read_sidecar, write_graph, write_sidecar
from .lowerbound import (
    LowerBoundInstance,
    SetSystem,
    dangling_transform,
    gen_mds_base,
    gen_mds_square_approx_unweighted,
    gen_mds_square_exact,
    gen_mvc_base,
    gen_mvc_square,
    gen_mwds_square_approx,
    gen_mwvc_square,
    gen_set_system,
    merged_dangling_transform,
    normalize_cover,
    verify_family,
)
from .mds_distributed import EstimateConfig, estimate_2hop_counts, g2mds_logd
from .mvc_centralized import g2mvc_53, g2mvc_hybrid, vc_53_on_square
from .mvc_distributed import (
    g2mvc_cc_voting,
    g2mvc_eps,
    g2mvc_trivial,
    g2mwvc_eps,
)
from .sim import CLIQUE, CONGEST, Model, RoundStats

__all__ = [name for name in dir() if not name.startswith("_")]
