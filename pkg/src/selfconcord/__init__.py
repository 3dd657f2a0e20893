"""Clique decisions encoded as form inequalities, and a sound checker for them.

The package turns graphs into symmetric-tensor decision instances whose
defining inequality at the origin holds exactly when the graph has no large
clique, maximizes quadratic and homogeneous forms over simplices and
spheres with deterministic multistart budgets, and decides the inequalities
three-valuedly with exact-rational certificates.
"""

from .concordance import (
    MODES,
    SigmaBounds,
    Status,
    Verdict,
    check_sc,
    check_sc2,
    decide_clique_via_sc,
    hessian_psd,
    rationalize_vector,
    sigma_opt_bounds,
    verdict_to_json_obj,
    violates_cubic,
    violates_quartic,
)
from .graphs import (
    Graph,
    clique_number,
    complement,
    enumerate_graphs,
    graph_from_edges,
    has_clique,
    max_clique,
    max_stable_set,
    parse_dimacs,
    parse_edge_list,
    parse_graph_text,
    stability_number,
)
from .optimize import (
    DEFAULT_SEED,
    OptConfig,
    OptReport,
    beta_split_max,
    couple_w_from_u,
    grid_certified_max,
    grid_lower_and_upper,
    max_form_sphere,
    max_multilinear_sphere,
    max_quadratic_simplex,
    report_to_json_obj,
    split_to_joint_sphere,
)
from .reduction import (
    CliqueInstance,
    ConcordanceInstance,
    build_cubic_instance,
    build_cubic_tensor,
    build_quartic_instance,
    build_quartic_tensor,
    cubic_threshold,
    gamma_cubed_from_sigma,
    gamma_squared_from_tau,
    quartic_threshold,
    quartic_witness_from_clique,
    rational_cubic_witness,
    rational_quartic_witness,
    true_max_quartic,
    true_max_square,
    witness_from_clique,
)
from .tensors import (
    SymTensor,
    eval_form,
    eval_form_batch,
    eval_form_exact,
    eval_multilinear,
    frobenius,
    grad_form,
    spectral_upper_bound,
    sym_from_entries,
    tensor_from_json_obj,
    tensor_from_text,
    tensor_to_json_obj,
    tensor_to_text,
)

__version__ = "0.1.0"
