"""Constructive lower-bound machinery for size-Ramsey numbers of U_k unions.

Random pattern graphs, rooted embedding search, exact and Monte Carlo checks
of the probability bounds, and the adversarial two-colouring.
"""

from .adversary import (
    AuditReport,
    Coloring,
    audit_inequalities,
    build_coloring,
    high_degree_edges,
    select_target,
    verify_coloring,
)
from .analysis import (
    Estimate,
    ball_size_check,
    conditional_step_check,
    corollary_bound,
    estimate_rooted_prob,
    exact_extension_probability,
    exact_rooted_probability,
    extension_bound,
    failure_bound,
    lemma_bound,
)
from .constructor import (
    GPrime,
    Params,
    UkGraph,
    build_gprime,
    build_tree,
    build_uk,
    paper_params,
    sequential_leaf_cycle,
)
from .embedder import (
    count_tree_embeddings,
    gprime_embeds,
    root_candidates,
    rooted_embedding_exists,
    shared_root_indices,
)
from .graph import Graph, build_graph, disjoint_union, edge_subgraph, max_degree, parse, serialize
from .hosts import gen_host
from .lognum import LogNumber
from .rng import Rng

__version__ = "0.1.0"
