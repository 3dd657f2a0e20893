"""Gadget tensors, exact thresholds, clique witnesses, optimum values."""

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from selfconcord import (
    CliqueInstance,
    build_cubic_instance,
    build_cubic_tensor,
    build_quartic_instance,
    build_quartic_tensor,
    clique_number,
    cubic_threshold,
    enumerate_graphs,
    eval_form,
    eval_form_exact,
    gamma_cubed_from_sigma,
    gamma_squared_from_tau,
    graph_from_edges,
    max_clique,
    quartic_threshold,
    quartic_witness_from_clique,
    rational_cubic_witness,
    rational_quartic_witness,
    true_max_quartic,
    true_max_square,
    witness_from_clique,
)


def brute_force_eval(A, h) -> float:
    total = 0.0
    for idx in product(range(1, A.dim + 1), repeat=A.order):
        value = A.entries.get(tuple(sorted(idx)))
        if value is not None:
            term = float(value)
            for i in idx:
                term *= h[i - 1]
            total += term
    return total


# ---------------------------------------------------------------------------
# Gadget tensors


def test_cubic_tensor_k3_layout(k3):
    A = build_cubic_tensor(k3)
    assert A.order == 3 and A.dim == 6
    assert A.entries == {
        (1, 2, 4): Fraction(1, 6),
        (1, 3, 5): Fraction(1, 6),
        (2, 3, 6): Fraction(1, 6),
    }


def test_cubic_tensor_single_edge(single_edge):
    A = build_cubic_tensor(single_edge)
    assert A.dim == 3
    assert A.entries == {(1, 2, 3): Fraction(1, 6)}


def test_cubic_tensor_footnote(footnote_graph):
    A = build_cubic_tensor(footnote_graph)
    assert A.dim == 4
    assert len(A.entries) == 1


def test_cubic_tensor_form_is_edge_sum():
    rng = np.random.default_rng(97)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < 0.6]
        if not pairs:
            continue
        G = graph_from_edges(n, pairs)
        A = build_cubic_tensor(G)
        h = rng.standard_normal(n + G.m)
        direct = sum(h[i - 1] * h[j - 1] * h[n + e] for e, (i, j) in enumerate(G.edge_order))
        assert abs(eval_form(A, h) - direct) <= 1e-12 * max(1.0, abs(direct))
        assert abs(brute_force_eval(A, h) - direct) <= 1e-12 * max(1.0, abs(direct))


def test_cubic_tensor_requires_edges():
    with pytest.raises(ValueError):
        build_cubic_tensor(graph_from_edges(3, []))


def test_quartic_tensor_k3(k3):
    A = build_quartic_tensor(k3)
    assert A.order == 4 and A.dim == 3
    assert len(A.entries) == 3
    h = np.full(3, 1.0 / math.sqrt(3.0))
    assert abs(eval_form(A, h) - 1.0 / 3.0) <= 1e-12


def test_quartic_tensor_single_edge(single_edge):
    A = build_quartic_tensor(single_edge)
    h = np.full(2, 1.0 / math.sqrt(2.0))
    assert abs(eval_form(A, h) - 0.25) <= 1e-12


def test_quartic_tensor_vanishes_off_edges(k3, footnote_graph):
    for G in (k3, footnote_graph):
        A = build_quartic_tensor(G)
        e1 = np.zeros(G.n)
        e1[0] = 1.0
        assert eval_form(A, e1) == 0.0


def test_quartic_tensor_form_is_square_pair_sum():
    rng = np.random.default_rng(101)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < 0.6]
        if not pairs:
            continue
        G = graph_from_edges(n, pairs)
        A = build_quartic_tensor(G)
        h = rng.standard_normal(n)
        direct = sum(h[i - 1] ** 2 * h[j - 1] ** 2 for i, j in G.edge_order)
        assert abs(eval_form(A, h) - direct) <= 1e-12 * max(1.0, abs(direct))


# ---------------------------------------------------------------------------
# Thresholds


def test_cubic_threshold_values():
    assert cubic_threshold(3) == Fraction(1, 27)
    assert cubic_threshold(2) == 0
    assert cubic_threshold(4) == Fraction(4, 81)
    with pytest.raises(ValueError):
        cubic_threshold(1)


def test_quartic_threshold_values():
    assert quartic_threshold(3) == Fraction(1, 4)
    assert quartic_threshold(4) == Fraction(1, 3)


def test_gamma_cubed_examples():
    assert gamma_cubed_from_sigma(Fraction(1, 2), 3) == Fraction(1, 54)
    assert 4 * Fraction(1, 2) * Fraction(1, 54) == Fraction(1, 27)
    assert gamma_cubed_from_sigma(2, 4) == Fraction(1, 162)
    assert 4 * 2 * Fraction(1, 162) == Fraction(4, 81)


def test_gamma_cubed_degenerate_and_invalid():
    with pytest.raises(ValueError):
        gamma_cubed_from_sigma(Fraction(1, 2), 2)
    with pytest.raises(ValueError):
        gamma_cubed_from_sigma(0, 3)
    with pytest.raises(ValueError):
        gamma_cubed_from_sigma(-1, 3)


def test_threshold_identities_random():
    rng = np.random.default_rng(103)
    for _ in range(100):
        sigma = Fraction(int(rng.integers(1, 50)), int(rng.integers(1, 50)))
        tau = Fraction(int(rng.integers(1, 50)), int(rng.integers(1, 50)))
        k = int(rng.integers(3, 12))
        assert 4 * sigma * gamma_cubed_from_sigma(sigma, k) == cubic_threshold(k)
        assert 6 * tau * gamma_squared_from_tau(tau, k) == quartic_threshold(k)


# ---------------------------------------------------------------------------
# Instances


def test_build_cubic_instance_k3(k3):
    inst = build_cubic_instance(k3, 3, Fraction(1, 2))
    assert inst.q == Fraction(1, 27)
    assert inst.A.dim == 6
    assert inst.kind == "cubic"
    assert inst.provenance == CliqueInstance(k3, 3)


def test_build_cubic_instance_footnote(footnote_graph):
    inst = build_cubic_instance(footnote_graph, 3, Fraction(1, 2))
    assert inst.q == Fraction(1, 27)
    assert inst.A.dim == 4


def test_build_cubic_instance_rejects_bad_params(k3):
    with pytest.raises(ValueError):
        build_cubic_instance(k3, 3, 0)
    with pytest.raises(ValueError):
        build_cubic_instance(k3, 2, Fraction(1, 2))


def test_build_quartic_instance_values(k3):
    assert build_quartic_instance(k3, 3, 1).q == Fraction(1, 4)
    assert build_quartic_instance(k3, 4, 1).q == Fraction(1, 3)
    with pytest.raises(ValueError):
        build_quartic_instance(k3, 2, 1)


# ---------------------------------------------------------------------------
# Witnesses


def test_witness_k3_coordinates(k3):
    h = witness_from_clique(k3, {1, 2, 3})
    assert np.allclose(h[:3], math.sqrt(2.0) / 3.0, atol=1e-15)
    assert np.allclose(h[3:], 1.0 / 3.0, atol=1e-15)
    assert abs(np.linalg.norm(h) - 1.0) <= 1e-12
    assert abs(brute_force_eval(build_cubic_tensor(k3), h) - 2.0 / 9.0) <= 1e-12


def test_witness_single_edge(single_edge):
    h = witness_from_clique(single_edge, {1, 2})
    value = eval_form(build_cubic_tensor(single_edge), h)
    assert abs(value**2 - 1.0 / 27.0) <= 1e-12


def test_witness_rejects_non_clique(footnote_graph):
    with pytest.raises(ValueError):
        witness_from_clique(footnote_graph, {1, 2, 3})
    with pytest.raises(ValueError):
        witness_from_clique(footnote_graph, {1})


def test_witness_achieves_claimed_value_all_cliques():
    for n in range(2, 5):
        for G in enumerate_graphs(n):
            A = build_cubic_tensor(G)
            C = max_clique(G)
            if len(C) < 2:
                continue
            h = witness_from_clique(G, C)
            assert abs(np.linalg.norm(h) - 1.0) <= 1e-12
            target = float(Fraction(2, 27) * (1 - Fraction(1, len(C))))
            assert abs(eval_form(A, h) ** 2 - target) <= 1e-12


def test_quartic_witness(k3):
    h = quartic_witness_from_clique(k3, {1, 2, 3})
    assert abs(np.linalg.norm(h) - 1.0) <= 1e-15
    assert abs(eval_form(build_quartic_tensor(k3), h) - 1.0 / 3.0) <= 1e-12


def test_rational_cubic_witness_ratio_near_optimum(k3):
    h = rational_cubic_witness(k3, {1, 2, 3})
    A = build_cubic_tensor(k3)
    value = eval_form_exact(A, h)
    dot = sum(x * x for x in h)
    ratio = value * value / dot**3
    assert abs(float(ratio) - 4.0 / 81.0) <= 1e-9
    assert ratio > cubic_threshold(3)


def test_rational_quartic_witness_ratio_exact(k3):
    h = rational_quartic_witness(k3, {1, 2, 3})
    A = build_quartic_tensor(k3)
    dot = sum(x * x for x in h)
    assert eval_form_exact(A, h) / dot**2 == Fraction(1, 3)


# ---------------------------------------------------------------------------
# Exact optimum values


def test_true_max_square_examples(k3, footnote_graph, single_edge):
    assert true_max_square(k3) == Fraction(4, 81)
    assert true_max_square(footnote_graph) == Fraction(1, 27)
    assert true_max_square(single_edge) == Fraction(1, 27)
    # stability variant through the complement: alpha(footnote) = 2
    from selfconcord import complement

    assert true_max_square(complement(footnote_graph)) == Fraction(1, 27)


def test_true_max_quartic_examples(k3, single_edge):
    assert true_max_quartic(k3) == Fraction(1, 3)
    assert true_max_quartic(single_edge) == Fraction(1, 4)


def test_decision_threshold_equivalence_exhaustive_n4():
    """omega >= k exactly when the true squared maximum exceeds the threshold."""
    for n in range(2, 5):
        for G in enumerate_graphs(n):
            w = clique_number(G)
            for k in range(3, 7):
                assert (w >= k) == (true_max_square(G) > cubic_threshold(k))
                assert (w >= k) == (true_max_quartic(G) > quartic_threshold(k))


def test_boundary_equality():
    for n in range(2, 5):
        for G in enumerate_graphs(n):
            k = clique_number(G) + 1
            if k >= 3:
                assert true_max_square(G) == cubic_threshold(k)
                assert true_max_quartic(G) == quartic_threshold(k)
