"""Three-valued decision of the form inequalities, with sound certificates.

A complete polynomial-time decision for these inequalities cannot exist
(deciding them answers clique queries), so the checker is honest about what
it knows:

* NOT_SELF_CONCORDANT is only ever reported with an exact rational witness
  h that violates the inequality under exact rational arithmetic.  Floating
  candidates from the numeric search are rationalized by continued
  fractions (denominator bound 2^64 by default) and re-verified exactly;
  if re-verification fails the status stays UNDECIDED.  The exact check is
  scale invariant, so witnesses need no normalization.
* SELF_CONCORDANT is reported when a sound upper bound on the form maximum
  clears the threshold, or in oracle mode by an exact rational comparison
  against the clique-derived optimum.  Numeric modes refuse to certify
  inside a relative band of 1e-9 around the threshold (exact equality is a
  legal boundary and floats cannot resolve it); oracle mode decides the
  boundary exactly (the inequality is non-strict, so equality is a YES).
* UNDECIDED carries the exhausted budget and the best bound seen.

Modes: "relax" bounds via `tensors.spectral_upper_bound`, "grid" via
`optimize.grid_certified_max` on a resolution ladder (dim <= 5 only),
"oracle" requires graph provenance and is complete on it.  The parameter
convention follows the defining inequality as written here: larger sigma
(larger q) is a weaker requirement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, has_clique, max_clique
from .optimize import OptConfig, OptReport, grid_lower_and_upper, max_form_sphere
from .reduction import (
    ConcordanceInstance,
    build_cubic_instance,
    quartic_witness_from_clique,
    rational_cubic_witness,
    rational_quartic_witness,
    true_max_quartic,
    true_max_square,
    witness_from_clique,
)
from .tensors import SymTensor, eval_form_exact, spectral_upper_bound

__all__ = [
    "Status",
    "Verdict",
    "SigmaBounds",
    "MODES",
    "hessian_psd",
    "violates_cubic",
    "violates_quartic",
    "rationalize_vector",
    "check_sc",
    "check_sc2",
    "sigma_opt_bounds",
    "decide_clique_via_sc",
    "verdict_to_json_obj",
]

MODES = ("relax", "grid", "oracle")

# Numeric modes leave a relative band around q undecided; exact equality at
# the boundary is decidable only by the oracle.
_EQ_BAND = 1e-9

_DEFAULT_MAX_DENOMINATOR = 2**64

# Coarse-to-fine certified-grid ladder; entries that blow the point budget
# for a given dim are skipped.
_GRID_LADDER = (0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001)


class Status(enum.Enum):
    SELF_CONCORDANT = "SELF_CONCORDANT"
    NOT_SELF_CONCORDANT = "NOT_SELF_CONCORDANT"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Verdict:
    status: Status
    mode: str
    certificate: dict
    evaluations: int


@dataclass(frozen=True)
class SigmaBounds:
    """Bracket for the optimal parameter (squared form maximum over 4)."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper):
            raise ValueError(f"need 0 <= lower <= upper, got {self.lower}, {self.upper}")


# ---------------------------------------------------------------------------
# Exact building blocks


def hessian_psd(H: SymTensor) -> bool:
    """Exact positive-semidefiniteness of a rational symmetric matrix.

    Pivoted LDL^T elimination in rational arithmetic: pick the largest
    remaining diagonal pivot; a negative pivot is a certificate of
    indefiniteness, a zero pivot forces its whole row to vanish.
    """
    if H.order != 2:
        raise ValueError(f"hessian_psd needs an order-2 tensor, got order {H.order}")
    n = H.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), value in H.entries.items():
        M[i - 1][j - 1] = value
        M[j - 1][i - 1] = value
    active = list(range(n))
    while active:
        p = max(active, key=lambda i: M[i][i])
        pivot = M[p][p]
        if pivot < 0:
            return False
        if pivot == 0:
            # Largest diagonal is zero, so every remaining diagonal is <= 0,
            # hence all are zero or the matrix is indefinite; any nonzero
            # off-diagonal entry in a zero-diagonal row is indefinite too.
            return all(M[i][j] == 0 for i in active for j in active)
        active.remove(p)
        for i in active:
            if M[i][p] == 0:
                continue
            factor = M[i][p] / pivot
            for j in active:
                M[i][j] -= factor * M[p][j]
    return True


def rationalize_vector(h, max_denominator: int = _DEFAULT_MAX_DENOMINATOR) -> tuple[Fraction, ...]:
    """Continued-fraction rationalization of a floating vector."""
    return tuple(Fraction(float(x)).limit_denominator(max_denominator) for x in np.asarray(h, dtype=float))


def _dot_exact(h: tuple[Fraction, ...]) -> Fraction:
    return sum(x * x for x in h)


def violates_cubic(A: SymTensor, h, q: Fraction) -> tuple[bool, Fraction, Fraction]:
    """Exact test of [A(h,h,h)]^2 > q*(h.h)^3; returns (violated, lhs, rhs)."""
    hq = tuple(Fraction(x) for x in h)
    value = eval_form_exact(A, hq)
    lhs = value * value
    rhs = Fraction(q) * _dot_exact(hq) ** 3
    return lhs > rhs, lhs, rhs


def violates_quartic(A: SymTensor, h, q: Fraction) -> tuple[bool, Fraction, Fraction]:
    """Exact test of A(h,h,h,h) > q*(h.h)^2; returns (violated, lhs, rhs)."""
    hq = tuple(Fraction(x) for x in h)
    lhs = eval_form_exact(A, hq)
    rhs = Fraction(q) * _dot_exact(hq) ** 2
    return lhs > rhs, lhs, rhs


# ---------------------------------------------------------------------------
# Verdict assembly


def _witness_verdict(mode: str, h: tuple[Fraction, ...], lhs: Fraction, rhs: Fraction, evaluations: int) -> Verdict:
    certificate = {
        "kind": "witness",
        "witness": [str(x) for x in h],
        "lhs": str(lhs),
        "rhs": str(rhs),
    }
    return Verdict(Status.NOT_SELF_CONCORDANT, mode, certificate, evaluations)


def _bound_verdict(mode: str, name: str, value: str, evaluations: int) -> Verdict:
    certificate = {"kind": "bound", "bound": {"name": name, "value": value}}
    return Verdict(Status.SELF_CONCORDANT, mode, certificate, evaluations)


def _undecided_verdict(mode: str, description: str, extra: dict, evaluations: int) -> Verdict:
    certificate = {"kind": "budget", "description": description}
    certificate.update(extra)
    return Verdict(Status.UNDECIDED, mode, certificate, evaluations)


def _numeric_search(inst: ConcordanceInstance, cfg: OptConfig) -> OptReport:
    extra = []
    if inst.provenance is not None:
        G = inst.provenance.graph
        C = max_clique(G)
        if len(C) >= 2:
            if inst.kind == "cubic":
                extra.append(witness_from_clique(G, C))
            else:
                extra.append(quartic_witness_from_clique(G, C))
    return max_form_sphere(
        inst.A, cfg, extra_starts=tuple(extra), nonnegative_starts=inst.provenance is not None
    )


def _grid_bound(A: SymTensor, good_enough=None, hopeless=None) -> tuple[float, int, float | None]:
    """Best certified grid bound on the resolution ladder: (bound, rungs, finest).

    Runs coarse to fine (every rung is sound; finer is tighter) and stops
    early once `good_enough(bound)` is true, or once `hopeless(net_max)` is:
    the net maximum is a lower bound on the true maximum, so if it already
    clears the certification target no finer rung can ever certify.  Rungs
    whose net exceeds the point budget are skipped.
    """
    if A.dim > 5:
        raise ValueError(f"grid mode supports dim <= 5, got {A.dim}")
    best = float("inf")
    used = 0
    finest = None
    for resolution in _GRID_LADDER:
        try:
            lower, bound = grid_lower_and_upper(A, resolution)
        except ValueError:
            continue
        best = min(best, bound)
        finest = resolution
        used += 1
        if good_enough is not None and good_enough(best):
            break
        if hopeless is not None and hopeless(lower):
            break
    if finest is None:
        raise ValueError(f"no ladder resolution within point budget for dim {A.dim}")
    return best, used, finest


def _oracle_not_witness(inst: ConcordanceInstance) -> tuple[tuple[Fraction, ...], Fraction, Fraction]:
    """Deterministic exact witness from a maximum clique; must verify when omega >= k."""
    G = inst.provenance.graph
    C = max_clique(G)
    if inst.kind == "cubic":
        builders = (
            lambda: rational_cubic_witness(G, C),
            lambda: rational_cubic_witness(G, C, max_denominator=10**24),
        )
        checker = violates_cubic
    else:
        builders = (lambda: rational_quartic_witness(G, C),)
        checker = violates_quartic
    for build in builders:
        h = build()
        violated, lhs, rhs = checker(inst.A, h, inst.q)
        if violated:
            return h, lhs, rhs
    raise AssertionError("oracle witness failed exact verification despite omega >= k")


def _check(inst: ConcordanceInstance, cfg: OptConfig | None, mode: str, kind: str) -> Verdict:
    if inst.kind != kind:
        raise ValueError(f"expected a {kind} instance, got {inst.kind}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    cfg = cfg or OptConfig()
    squared = kind == "cubic"
    checker = violates_cubic if squared else violates_quartic
    qf = float(inst.q)

    if mode == "oracle":
        if inst.provenance is None:
            raise ValueError("oracle mode needs an instance with graph provenance")
        G = inst.provenance.graph
        true_opt = true_max_square(G) if squared else true_max_quartic(G)
        if true_opt <= inst.q:
            return _bound_verdict(mode, "exact_clique_oracle", str(true_opt), 1)
        h, lhs, rhs = _oracle_not_witness(inst)
        return _witness_verdict(mode, h, lhs, rhs, 1)

    report = _numeric_search(inst, cfg)
    evaluations = report.evaluations
    best = report.best_value
    numeric_quantity = best * best if squared else best
    if numeric_quantity > qf * (1.0 + _EQ_BAND):
        h = rationalize_vector(report.witness)
        violated, lhs, rhs = checker(inst.A, h, inst.q)
        if violated:
            return _witness_verdict(mode, h, lhs, rhs, evaluations)

    def certifies(bound: float) -> bool:
        quantity = bound * bound if squared else bound
        return quantity <= qf * (1.0 - _EQ_BAND)

    if mode == "relax":
        bound = spectral_upper_bound(inst.A)
        bound_name = "spectral_upper_bound"
        evaluations += 1
    else:
        bound, used, finest = _grid_bound(
            inst.A, good_enough=certifies, hopeless=lambda lower: not certifies(lower)
        )
        bound_name = f"grid_certified_max(resolution={finest})"
        evaluations += used
    if certifies(bound):
        return _bound_verdict(mode, bound_name, format(bound, ".17g"), evaluations)

    return _undecided_verdict(
        mode,
        "no exact violation found and no sound bound cleared the threshold",
        {
            "best_numeric": format(best, ".17g"),
            "bound_name": bound_name,
            "bound_value": format(bound, ".17g"),
            "threshold": str(inst.q),
            "starts": cfg.starts,
            "max_iters": cfg.max_iters,
        },
        evaluations,
    )


def check_sc(inst: ConcordanceInstance, cfg: OptConfig | None = None, mode: str = "relax") -> Verdict:
    """Decide [A(h,h,h)]^2 <= q*(h.h)^3 for all h, soundly, three-valued."""
    return _check(inst, cfg, mode, "cubic")


def check_sc2(inst: ConcordanceInstance, cfg: OptConfig | None = None, mode: str = "relax") -> Verdict:
    """Decide A(h,h,h,h) <= q*(h.h)^2 for all h, soundly, three-valued."""
    return _check(inst, cfg, mode, "quartic")


# ---------------------------------------------------------------------------
# Optimal-parameter bracket and end-to-end decision


def sigma_opt_bounds(A: SymTensor, cfg: OptConfig | None = None) -> SigmaBounds:
    """Bracket sigma_opt = (spectral norm of A)^2 / 4 for an order-3 tensor.

    Lower bound from the best multistart witness (a feasible point), upper
    bound from the spectral relaxation, tightened by the certified grid
    when the dimension admits one.
    """
    if A.order != 3:
        raise ValueError(f"sigma_opt_bounds needs an order-3 tensor, got order {A.order}")
    cfg = cfg or OptConfig()
    report = max_form_sphere(A, cfg)
    norm_lower = max(report.best_value, 0.0)
    norm_upper = spectral_upper_bound(A)
    if A.dim <= 5:
        try:
            grid, _, _ = _grid_bound(A)
            norm_upper = min(norm_upper, grid)
        except ValueError:
            pass
    lower = norm_lower * norm_lower / 4.0
    upper = norm_upper * norm_upper / 4.0
    return SigmaBounds(min(lower, upper), upper)


def decide_clique_via_sc(G: Graph, k: int, sigma, cfg: OptConfig | None = None) -> tuple[bool, Verdict]:
    """Answer a clique query through the origin-inequality decision.

    Returns (has_clique(G, k), oracle verdict); a clique of size k exists
    exactly when the verdict is NOT_SELF_CONCORDANT.
    """
    inst = build_cubic_instance(G, k, sigma)
    verdict = check_sc(inst, cfg, mode="oracle")
    return has_clique(G, k), verdict


def verdict_to_json_obj(verdict: Verdict, seed: int | None = None) -> dict:
    obj = {
        "status": verdict.status.value,
        "mode": verdict.mode,
        "certificate": verdict.certificate,
        "evaluations": verdict.evaluations,
    }
    if seed is not None:
        obj["seed"] = seed
    return obj
