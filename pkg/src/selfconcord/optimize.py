"""Budgeted maximization of forms over simplices and spheres.

Two local ascent methods that respect the feasible geometry directly:

* simplex: a replicator (exponentiated-gradient) update for quadratics with
  nonnegative coefficients, which keeps iterates on the simplex and never
  decreases the objective;
* sphere: gradient ascent with a normalize-after-step retraction and
  adaptive step halving, monotone by construction.

Both are multistart with deterministic per-start random substreams, so a
fixed seed reproduces results bit for bit.  Reported values are always
lower bounds on the true maximum (every iterate is feasible); certified
upper bounds come from `grid_certified_max` here and
`tensors.spectral_upper_bound`.

Also provides the exact witness transformations that tie sphere maxima of
edge-coupled cubic forms back to clique quadratics: the Cauchy-Schwarz
equality coupling `couple_w_from_u` and the 2/3-1/3 sphere splitting
`split_to_joint_sphere` whose constant 2/(3*sqrt(3)) is the maximum of
beta*sqrt(1-beta) over (0,1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graphs import Graph, complement, max_clique
from .tensors import (
    SymTensor,
    contract_all_but_one,
    eval_form,
    eval_form_batch,
    eval_multilinear,
    frobenius,
    grad_form,
)

__all__ = [
    "DEFAULT_SEED",
    "OptConfig",
    "OptReport",
    "report_to_json_obj",
    "max_quadratic_simplex",
    "max_form_sphere",
    "max_multilinear_sphere",
    "grid_certified_max",
    "couple_w_from_u",
    "split_to_joint_sphere",
    "beta_split_max",
]

DEFAULT_SEED = 1729

# Consecutive near-flat improvements before a trajectory counts as converged.
_PLATEAU = 3

# Point budget for spherical nets (memory / time guard).
_NET_BUDGET = 2_500_000


@dataclass(frozen=True)
class OptConfig:
    """Budget for a multistart search; deterministic given `seed`."""

    starts: int = 8
    max_iters: int = 400
    step_tol: float = 1e-12
    value_tol: float = 1e-13
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.step_tol <= 0 or self.value_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True, eq=False)
class OptReport:
    """Outcome of a budgeted maximization.

    `best_value` is the objective at `witness`, re-evaluated on the stored
    point; `converged` refers to the start that produced the best value.
    Ties across starts break toward the lowest start index.
    """

    best_value: float
    witness: np.ndarray
    per_start_values: tuple[float, ...]
    converged: bool
    evaluations: int


def report_to_json_obj(report: OptReport) -> dict:
    """JSON form of a report; floats become 17-significant-digit strings."""
    return {
        "best_value": format(report.best_value, ".17g"),
        "witness": [format(x, ".17g") for x in report.witness],
        "per_start_values": [format(v, ".17g") for v in report.per_start_values],
        "converged": report.converged,
        "evaluations": report.evaluations,
    }


def _streams(seed: int, count: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(count)]


def _report(results: list[tuple[float, np.ndarray, int, bool]]) -> OptReport:
    values = [r[0] for r in results]
    best = int(np.argmax(values))  # argmax returns the first maximum: lowest start index wins ties
    evaluations = sum(r[2] for r in results)
    value, witness, _, converged = results[best]
    witness = np.array(witness)
    witness.setflags(write=False)
    return OptReport(value, witness, tuple(values), converged, evaluations)


# ---------------------------------------------------------------------------
# Quadratic over the simplex


def _replicator(W: np.ndarray, x: np.ndarray, cfg: OptConfig) -> tuple[float, np.ndarray, int, bool]:
    value = 0.5 * float(x @ (W @ x))
    best_x = x
    evals = 1
    plateau = 0
    converged = False
    for _ in range(cfg.max_iters):
        g = W @ x
        denom = float(x @ g)
        if denom <= 0.0:
            # No quadratic mass on the support; the update is undefined and
            # cannot improve (value is 0 here).
            converged = True
            break
        x = x * g / denom
        x = x / x.sum()
        new = 0.5 * float(x @ (W @ x))
        evals += 1
        gain = new - value
        if new > value:
            value, best_x = new, x
        if gain <= cfg.value_tol * max(1.0, abs(new)):
            plateau += 1
            if plateau >= _PLATEAU:
                converged = True
                break
        else:
            plateau = 0
    return value, best_x, evals, converged


def max_quadratic_simplex(G: Graph, over_edges: bool = True, cfg: OptConfig | None = None) -> OptReport:
    """Maximize sum of x_i * x_j over the listed pairs on the unit simplex.

    `over_edges=True` sums over the edges of G; `over_edges=False` sums over
    the non-edges (the stability variant).  Start 0 is the uniform vector on
    a maximum clique of the summand graph (the analytic optimum of the
    clique quadratic), the remaining starts are random interior points.
    """
    if G.n < 1:
        raise ValueError("graph must have at least one vertex")
    cfg = cfg or OptConfig()
    summand = G if over_edges else complement(G)
    pairs = summand.edge_order
    n = G.n
    if not pairs:
        witness = np.zeros(n)
        witness[0] = 1.0
        witness.setflags(write=False)
        return OptReport(0.0, witness, (0.0,), True, 0)

    W = np.zeros((n, n))
    for i, j in pairs:
        W[i - 1, j - 1] = W[j - 1, i - 1] = 1.0

    clique = sorted(max_clique(summand))
    analytic = np.zeros(n)
    analytic[[v - 1 for v in clique]] = 1.0 / len(clique)

    starts = [analytic]
    for rng in _streams(cfg.seed, max(cfg.starts - 1, 0)):
        starts.append(rng.dirichlet(np.ones(n)))

    results = [_replicator(W, x0, cfg) for x0 in starts]
    return _report(results)


# ---------------------------------------------------------------------------
# Homogeneous form over the sphere


def _ascend_sphere(A: SymTensor, h0: np.ndarray, cfg: OptConfig) -> tuple[float, np.ndarray, int, bool]:
    h = np.asarray(h0, dtype=float)
    norm = np.linalg.norm(h)
    if norm == 0.0:
        raise ValueError("start point must be nonzero")
    h = h / norm
    value = eval_form(A, h)
    evals = 1
    step = 0.5
    plateau = 0
    converged = False
    for _ in range(cfg.max_iters):
        g = grad_form(A, h)
        gnorm = np.linalg.norm(g)
        if gnorm == 0.0:
            converged = True
            break
        direction = g / gnorm
        improved = False
        gain = 0.0
        while step >= cfg.step_tol:
            cand = h + step * direction
            cand_norm = np.linalg.norm(cand)
            if cand_norm == 0.0:  # step landed exactly at the origin
                step *= 0.5
                continue
            cand = cand / cand_norm
            cand_value = eval_form(A, cand)
            evals += 1
            if cand_value > value:
                gain = cand_value - value
                h, value = cand, cand_value
                step = min(step * 2.0, 1.0)
                improved = True
                break
            step *= 0.5
        if not improved:
            converged = True
            break
        if gain <= cfg.value_tol * max(1.0, abs(value)):
            plateau += 1
            if plateau >= _PLATEAU:
                converged = True
                break
        else:
            plateau = 0
    return value, h, evals, converged


def max_form_sphere(
    A: SymTensor,
    cfg: OptConfig | None = None,
    extra_starts: tuple = (),
    nonnegative_starts: bool = False,
) -> OptReport:
    """Multistart ascent of A(h, ..., h) over the unit sphere.

    `extra_starts` are tried first (callers with a known analytic witness,
    e.g. a clique-derived maximizer, pass it here so the reported value is
    guaranteed to reach it).  `nonnegative_starts` draws the random starts
    from the nonnegative orthant, where edge-derived forms attain their
    maxima.
    """
    if A.dim < 1:
        raise ValueError("tensor dim must be >= 1")
    cfg = cfg or OptConfig()
    if not A.entries:
        witness = np.zeros(A.dim)
        witness[0] = 1.0
        witness.setflags(write=False)
        return OptReport(0.0, witness, (0.0,), True, 1)

    starts: list[np.ndarray] = [np.asarray(s, dtype=float) for s in extra_starts]
    for rng in _streams(cfg.seed, cfg.starts):
        draw = rng.standard_normal(A.dim)
        if nonnegative_starts:
            draw = np.abs(draw)
        while np.linalg.norm(draw) == 0.0:
            draw = rng.standard_normal(A.dim)
        starts.append(draw)

    results = [_ascend_sphere(A, h0, cfg) for h0 in starts]
    return _report(results)


def max_multilinear_sphere(A: SymTensor, cfg: OptConfig | None = None, extra_starts: tuple = ()) -> OptReport:
    """Maximize A(h1, ..., hd) over independent unit vectors.

    Alternating maximization: with all but one argument fixed the objective
    is linear, so the optimal slot value is the normalized contraction and
    the value is nondecreasing.  Each element of `extra_starts` is a tuple
    of `order` start vectors (e.g. a repeated single-argument witness).
    The report's witness is the concatenation of the final arguments.
    """
    cfg = cfg or OptConfig()
    if not A.entries:
        witness = np.zeros(A.dim * A.order)
        witness[0] = 1.0
        witness.setflags(write=False)
        return OptReport(0.0, witness, (0.0,), True, 1)

    start_tuples: list[list[np.ndarray]] = []
    for group in extra_starts:
        if len(group) != A.order:
            raise ValueError(f"each extra start needs {A.order} vectors, got {len(group)}")
        start_tuples.append([np.asarray(v, dtype=float) / np.linalg.norm(v) for v in group])
    for rng in _streams(cfg.seed, cfg.starts):
        vecs = []
        for _ in range(A.order):
            v = rng.standard_normal(A.dim)
            vecs.append(v / np.linalg.norm(v))
        start_tuples.append(vecs)

    results = []
    for vecs in start_tuples:
        value = eval_multilinear(A, vecs)
        evals = 1
        converged = False
        for _ in range(cfg.max_iters):
            before = value
            stuck = False
            for pos in range(A.order):
                g = contract_all_but_one(A, vecs, pos)
                gnorm = np.linalg.norm(g)
                if gnorm == 0.0:
                    stuck = True
                    break
                vecs[pos] = g / gnorm
                value = gnorm
            evals += A.order
            if stuck or value - before <= cfg.value_tol * max(1.0, abs(value)):
                converged = True
                break
        results.append((value, np.concatenate(vecs), evals, converged))
    return _report(results)


# ---------------------------------------------------------------------------
# Certified sphere grid bound


# The whole resolution ladder for dims 2..5 fits in ~25 distinct nets;
# cache them all (a few hundred MB ceiling) so sweeps reuse instead of rebuild.
@lru_cache(maxsize=25)
def _sphere_net(dim: int, n_half: int, n_full: int) -> np.ndarray:
    """Grid of points on S^(dim-1) from gridded hyperspherical angles.

    Angles 1..dim-2 run over [0, pi] with n_half points inclusive; the last
    angle runs over [0, 2*pi) with n_full points.  The unit-speed bound on
    each angle gives covering radius <= sum of half-spacings.
    """
    half = [np.linspace(0.0, math.pi, n_half) for _ in range(dim - 2)]
    full = [np.linspace(0.0, 2.0 * math.pi, n_full, endpoint=False)]
    grids = np.meshgrid(*(half + full), indexing="ij")
    thetas = np.stack([g.ravel() for g in grids], axis=1)
    pts = np.empty((thetas.shape[0], dim))
    sin_running = np.ones(thetas.shape[0])
    for k in range(dim - 1):
        pts[:, k] = sin_running * np.cos(thetas[:, k])
        sin_running = sin_running * np.sin(thetas[:, k])
    pts[:, dim - 1] = sin_running
    pts.setflags(write=False)
    return pts


def grid_lower_and_upper(A: SymTensor, resolution: float, point_budget: int = _NET_BUDGET) -> tuple[float, float]:
    """(net maximum, certified bound) for |A| on the unit sphere.

    The net maximum is a lower bound on max |A| (net points are feasible);
    adding the Lipschitz slack L * resolution with L = order * frobenius(A)
    (the gradient norm of the form is at most L on the unit ball) makes the
    second component a sound upper bound.  Finer resolutions tighten both.
    """
    if resolution <= 0.0:
        raise ValueError("resolution must be positive")
    if A.dim > 5:
        raise ValueError(f"grid certification supports dim <= 5, got {A.dim}")
    if A.dim == 1:
        exact = abs(eval_form(A, np.array([1.0])))
        return exact, exact
    spacing = 2.0 * resolution / (A.dim - 1)
    n_half = int(math.ceil(math.pi / spacing)) + 1
    n_full = int(math.ceil(2.0 * math.pi / spacing))
    n_points = n_half ** (A.dim - 2) * n_full
    if n_points > point_budget:
        raise ValueError(
            f"net of {n_points} points for dim {A.dim} at resolution {resolution} "
            f"exceeds budget {point_budget}"
        )
    net = _sphere_net(A.dim, n_half, n_full)
    net_max = float(np.max(np.abs(eval_form_batch(A, net)))) if A.entries else 0.0
    lipschitz = A.order * frobenius(A)
    return net_max, net_max + lipschitz * resolution


def grid_certified_max(A: SymTensor, resolution: float, point_budget: int = _NET_BUDGET) -> float:
    """Sound upper bound on max over unit h of |A(h, ..., h)| via a spherical net."""
    return grid_lower_and_upper(A, resolution, point_budget)[1]


# ---------------------------------------------------------------------------
# Exact witness transformations


def couple_w_from_u(u, G: Graph) -> np.ndarray:
    """Per-edge weights achieving equality in the Cauchy-Schwarz step.

    Given u on the vertices, returns unit-norm w with
    w_ij = u_i * u_j / alpha over G.edge_order, where
    alpha = sqrt(sum over edges of u_i^2 * u_j^2).  Then
    sum u_i * u_j * w_ij = alpha exactly.
    """
    u = np.asarray(u, dtype=float)
    if u.shape[0] != G.n:
        raise ValueError(f"u has dim {u.shape[0]}, graph has {G.n} vertices")
    if not G.edge_order:
        raise ValueError("graph has no edges")
    products = np.array([u[i - 1] * u[j - 1] for i, j in G.edge_order])
    alpha = math.sqrt(float(products @ products))
    if alpha == 0.0:
        raise ValueError("no edge support: u vanishes on every edge")
    return products / alpha


def split_to_joint_sphere(u, w) -> np.ndarray:
    """Merge unit u and unit w into (sqrt(2/3) u, sqrt(1/3) w) on the joint sphere.

    2/3 maximizes beta * sqrt(1 - beta), so for any cubic form of the shape
    sum u_i u_j w_ij the value at the output is 2/(3*sqrt(3)) times the
    value of the coupled sum.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    for name, v in (("u", u), ("w", w)):
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise ValueError(f"{name} must have unit norm, got {np.linalg.norm(v)!r}")
    return np.concatenate([math.sqrt(2.0 / 3.0) * u, math.sqrt(1.0 / 3.0) * w])


def beta_split_max(grid_step: float = 1e-6) -> tuple[float, float]:
    """Grid maximum of beta * sqrt(1 - beta) over (0, 1): (argmax, value)."""
    if not 0.0 < grid_step < 1.0:
        raise ValueError("grid_step must be in (0, 1)")
    betas = np.arange(grid_step, 1.0, grid_step)
    values = betas * np.sqrt(1.0 - betas)
    best = int(np.argmax(values))
    return float(betas[best]), float(values[best])
