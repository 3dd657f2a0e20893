"""Clique-to-tensor gadgets and their exact rational thresholds.

Two constructions turn a graph G (n vertices, m >= 1 edges) into a decision
instance about a homogeneous form:

* cubic: a symmetric 3-tensor on R^(n+m) whose coordinates split into one u
  per vertex and one w per edge.  Each edge {i, j} with edge index k
  contributes the index orbit of (i, j, n+k) with orbit value 1/6 so that
  the induced form is exactly  sum over edges of u_i * u_j * w_ij.
  Its squared sphere maximum is (2/27) * (1 - 1/omega(G)): the simplex
  quadratic maximum (1/2)(1 - 1/omega) from the clique identity, carried to
  the sphere by the square substitution x_i = u_i^2, Cauchy-Schwarz
  coupling (`optimize.couple_w_from_u`) and the 2/3 split
  (`optimize.split_to_joint_sphere`), whence the constant
  (2/(3*sqrt(3)))^2 * 1/2 = 2/27.

* quartic: a symmetric 4-tensor on R^n where each edge contributes the
  orbit of (i, i, j, j) with value 1/6, so the form is
  sum over edges of h_i^2 * h_j^2, with sphere maximum
  (1/2) * (1 - 1/omega(G)).

An instance pairs the tensor with a threshold q.  For a target clique size
k and a curvature parameter (sigma for cubic, tau for quartic), the model
function  f(x) = (gamma/2) x.x + A(x,..,x)/order!  has Hessian gamma*I and
order-th derivative A at the origin, and the defining inequality at the
origin collapses to

    cubic:    [A(h,h,h)]^2 <= q (h.h)^3,    q = 4*sigma*gamma^3 = (2/27)(1 - 1/(k-1))
    quartic:  A(h,h,h,h)  <= q (h.h)^2,     q = 6*tau*gamma^2  = (1/2)(1 - 1/(k-1))

gamma itself is irrational in general; only gamma^3 (resp. gamma^2) is
stored, exactly, so every threshold comparison stays in rational
arithmetic.  The inequality holds for all h exactly when omega(G) <= k-1,
with equality of maximum and threshold at omega = k-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graphs import Graph, max_clique
from .tensors import SymTensor, sym_from_entries

__all__ = [
    "CliqueInstance",
    "ConcordanceInstance",
    "build_cubic_tensor",
    "build_quartic_tensor",
    "cubic_threshold",
    "quartic_threshold",
    "gamma_cubed_from_sigma",
    "gamma_squared_from_tau",
    "build_cubic_instance",
    "build_quartic_instance",
    "witness_from_clique",
    "quartic_witness_from_clique",
    "rational_cubic_witness",
    "rational_quartic_witness",
    "true_max_square",
    "true_max_quartic",
]


def _rational(value, name: str) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name} must be rational, got {value!r}") from exc


def _require_reducible(G: Graph):
    if G.n < 2 or G.m < 1:
        raise ValueError(f"reduction needs n >= 2 and m >= 1, got n={G.n}, m={G.m}")


@dataclass(frozen=True)
class CliqueInstance:
    """A clique decision query: does `graph` contain a clique of size k?"""

    graph: Graph
    k: int

    def __post_init__(self):
        _require_reducible(self.graph)
        if self.k < 2:
            raise ValueError(f"clique target k must be >= 2, got {self.k}")


@dataclass(frozen=True)
class ConcordanceInstance:
    """A point-model of a function at the origin, reduced to form data.

    `kind` selects the inequality shape: "cubic" compares the squared
    3-form against q*(h.h)^3, "quartic" compares the 4-form against
    q*(h.h)^2.  `gamma_power` holds gamma^3 (cubic) or gamma^2 (quartic)
    when the instance came from a (graph, k, parameter) construction;
    instances built directly from a tensor and a threshold leave the
    optional fields unset.
    """

    kind: str
    A: SymTensor
    q: Fraction
    gamma_power: Fraction | None = None
    sigma_or_tau: Fraction | None = None
    provenance: CliqueInstance | None = None

    def __post_init__(self):
        if self.kind not in ("cubic", "quartic"):
            raise ValueError(f"kind must be 'cubic' or 'quartic', got {self.kind!r}")
        expected = 3 if self.kind == "cubic" else 4
        if self.A.order != expected:
            raise ValueError(f"{self.kind} instance needs an order-{expected} tensor, got order {self.A.order}")
        object.__setattr__(self, "q", _rational(self.q, "q"))
        if self.q <= 0:
            raise ValueError(f"threshold q must be positive, got {self.q}")


# ---------------------------------------------------------------------------
# Gadget tensors


def build_cubic_tensor(G: Graph) -> SymTensor:
    """Edge-coupled cubic tensor on R^(n+m).

    Coordinates: h = (u_1, ..., u_n, w_e1, ..., w_em) with edges in
    G.edge_order.  One canonical entry per edge, value 1/6 (the orbit has 6
    positions, so the form contribution is exactly u_i * u_j * w_ij).
    """
    _require_reducible(G)
    n = G.n
    raw = []
    for k, (i, j) in enumerate(G.edge_order, start=1):
        raw.append(((i, j, n + k), Fraction(1, 6)))
    return sym_from_entries(3, n + G.m, raw)


def build_quartic_tensor(G: Graph) -> SymTensor:
    """Square-pair quartic tensor on R^n: form is sum over edges of h_i^2 h_j^2."""
    _require_reducible(G)
    raw = [((i, i, j, j), Fraction(1, 6)) for i, j in G.edge_order]
    return sym_from_entries(4, G.n, raw)


# ---------------------------------------------------------------------------
# Thresholds and curvature powers


def cubic_threshold(k: int) -> Fraction:
    """q = (2/27) * (1 - 1/(k-1)), the cubic decision threshold for clique size k."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return Fraction(2, 27) * (1 - Fraction(1, k - 1))


def quartic_threshold(k: int) -> Fraction:
    """q = (1/2) * (1 - 1/(k-1)), the quartic decision threshold."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return Fraction(1, 2) * (1 - Fraction(1, k - 1))


def gamma_cubed_from_sigma(sigma, k: int) -> Fraction:
    """gamma^3 = (1/27) * (1/(2*sigma)) * (1 - 1/(k-1)); 4*sigma*gamma^3 is the cubic threshold.

    k = 2 is rejected: it forces gamma = 0, a degenerate (flat) curvature
    the construction cannot use.
    """
    sigma = _rational(sigma, "sigma")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k == 2:
        raise ValueError("k = 2 gives gamma = 0 (degenerate curvature)")
    return Fraction(1, 27) / (2 * sigma) * (1 - Fraction(1, k - 1))


def gamma_squared_from_tau(tau, k: int) -> Fraction:
    """gamma^2 = (1/(12*tau)) * (1 - 1/(k-1)); 6*tau*gamma^2 is the quartic threshold."""
    tau = _rational(tau, "tau")
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k == 2:
        raise ValueError("k = 2 gives gamma = 0 (degenerate curvature)")
    return (1 - Fraction(1, k - 1)) / (12 * tau)


def build_cubic_instance(G: Graph, k: int, sigma) -> ConcordanceInstance:
    """Cubic decision instance for (G, k, sigma); q is exactly the cubic threshold."""
    if k < 3:
        raise ValueError(f"cubic instances need k >= 3, got {k}")
    gamma3 = gamma_cubed_from_sigma(sigma, k)
    sigma = _rational(sigma, "sigma")
    q = 4 * sigma * gamma3
    assert q == cubic_threshold(k)
    return ConcordanceInstance(
        kind="cubic",
        A=build_cubic_tensor(G),
        q=q,
        gamma_power=gamma3,
        sigma_or_tau=sigma,
        provenance=CliqueInstance(G, k),
    )


def build_quartic_instance(G: Graph, k: int, tau) -> ConcordanceInstance:
    """Quartic decision instance for (G, k, tau); q is exactly the quartic threshold."""
    if k < 3:
        raise ValueError(f"quartic instances need k >= 3, got {k}")
    gamma2 = gamma_squared_from_tau(tau, k)
    tau = _rational(tau, "tau")
    q = 6 * tau * gamma2
    assert q == quartic_threshold(k)
    return ConcordanceInstance(
        kind="quartic",
        A=build_quartic_tensor(G),
        q=q,
        gamma_power=gamma2,
        sigma_or_tau=tau,
        provenance=CliqueInstance(G, k),
    )


# ---------------------------------------------------------------------------
# Witnesses


def _check_clique(G: Graph, C: Iterable[int]) -> list[int]:
    members = sorted(set(C))
    if len(members) < 2:
        raise ValueError(f"clique must have at least 2 vertices, got {len(members)}")
    for v in members:
        if not 1 <= v <= G.n:
            raise ValueError(f"vertex {v} out of range 1..{G.n}")
    for a in members:
        for b in members:
            if a < b and (a, b) not in G.edges:
                raise ValueError(f"{{{a},{b}}} is not an edge: set is not a clique")
    return members


def witness_from_clique(G: Graph, C: Iterable[int]) -> np.ndarray:
    """Exact maximizer of the cubic gadget form on the joint unit sphere.

    For a clique C of size c: u_i = sqrt(2/(3c)) on C, and w_ij on the
    edges inside C carries the Cauchy-Schwarz coupling scaled into the
    1/3 block.  The form value is sqrt((2/27) * (1 - 1/c)); when C is a
    maximum clique this is the global sphere maximum.
    """
    _require_reducible(G)
    members = _check_clique(G, C)
    c = len(members)
    u = np.zeros(G.n)
    u[[v - 1 for v in members]] = 1.0 / math.sqrt(c)
    # alpha = sqrt(sum over C-internal edges of (1/c^2)) = sqrt((c-1)/(2c))
    alpha = math.sqrt((c - 1) / (2.0 * c))
    inside = set(members)
    w = np.array([
        (1.0 / c) / alpha if (i in inside and j in inside) else 0.0
        for i, j in G.edge_order
    ])
    return np.concatenate([math.sqrt(2.0 / 3.0) * u, math.sqrt(1.0 / 3.0) * w])


def quartic_witness_from_clique(G: Graph, C: Iterable[int]) -> np.ndarray:
    """Unit maximizer of the quartic gadget form: 1/sqrt(c) on the clique."""
    _require_reducible(G)
    members = _check_clique(G, C)
    h = np.zeros(G.n)
    h[[v - 1 for v in members]] = 1.0 / math.sqrt(len(members))
    return h


def rational_cubic_witness(G: Graph, C: Iterable[int], max_denominator: int = 10**12) -> tuple[Fraction, ...]:
    """Rational near-maximizer of the cubic form ratio, for exact certificates.

    The violation check is scale invariant, so normalization is dropped:
    u = 1 on the clique and w = t on its internal edges with rational t
    close to the optimal coupling scale 1/sqrt(c-1).  The achieved ratio
    [A(h)]^2 / (h.h)^3 differs from the maximum (2/27)(1 - 1/c) only to
    second order in the approximation error of t.
    """
    _require_reducible(G)
    members = _check_clique(G, C)
    c = len(members)
    if c == 2:
        t = Fraction(1)
    else:
        t = Fraction(1.0 / math.sqrt(c - 1)).limit_denominator(max_denominator)
    inside = set(members)
    u = [Fraction(1) if v in inside else Fraction(0) for v in range(1, G.n + 1)]
    w = [t if (i in inside and j in inside) else Fraction(0) for i, j in G.edge_order]
    return tuple(u + w)


def rational_quartic_witness(G: Graph, C: Iterable[int]) -> tuple[Fraction, ...]:
    """Indicator vector of the clique: its quartic ratio is exactly (1/2)(1 - 1/c)."""
    _require_reducible(G)
    members = set(_check_clique(G, C))
    return tuple(Fraction(1) if v in members else Fraction(0) for v in range(1, G.n + 1))


# ---------------------------------------------------------------------------
# Exact optimum values


def true_max_square(G: Graph) -> Fraction:
    """Exact squared sphere maximum of the cubic gadget form: (2/27)(1 - 1/omega)."""
    _require_reducible(G)
    omega = len(max_clique(G))
    return Fraction(2, 27) * (1 - Fraction(1, omega))


def true_max_quartic(G: Graph) -> Fraction:
    """Exact sphere maximum of the quartic gadget form: (1/2)(1 - 1/omega)."""
    _require_reducible(G)
    omega = len(max_clique(G))
    return Fraction(1, 2) * (1 - Fraction(1, omega))
