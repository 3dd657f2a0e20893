"""Symmetric hypermatrices with exact rational coefficients.

Storage is orbit-canonical and sparse: a tensor of order d and dimension n
keeps one entry per index orbit, keyed by the nondecreasing multi-index,
holding the coefficient shared by every permutation of that index.  The
induced homogeneous form

    A(h, ..., h) = sum over all n^d tuples of a_{i1...id} * h_{i1} * ... * h_{id}

is evaluated over canonical entries alone, each weighted by the size of its
orbit (a multinomial count).

Coefficients are `fractions.Fraction` values.  Evaluation comes in two
flavours: floating point (`eval_form`, `grad_form`) for optimization loops,
and exact rational (`eval_form_exact`) for certificate checks that must not
incur rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SymTensor",
    "sym_from_entries",
    "eval_form",
    "eval_form_batch",
    "eval_form_exact",
    "grad_form",
    "eval_multilinear",
    "contract_all_but_one",
    "frobenius",
    "spectral_upper_bound",
    "tensor_to_text",
    "tensor_from_text",
    "tensor_to_json_obj",
    "tensor_from_json_obj",
]

# Dense materialization guard for spectral_upper_bound (dim ** order floats).
_DENSE_LIMIT = 20_000_000


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _orbit_size(key: tuple[int, ...]) -> int:
    """Number of distinct permutations of a sorted multi-index."""
    count = math.factorial(len(key))
    for i in set(key):
        count //= math.factorial(key.count(i))
    return count


@dataclass(frozen=True)
class SymTensor:
    """Symmetric hypermatrix of order 2, 3 or 4 over R^dim.

    `entries` maps each canonical (sorted, 1-based) multi-index to the
    coefficient shared by all of its permutations.  Instances are immutable
    after construction and safe to share across workers.
    """

    order: int
    dim: int
    entries: dict[tuple[int, ...], Fraction]

    def __post_init__(self):
        if self.order not in (2, 3, 4):
            raise ValueError(f"order must be 2, 3 or 4, got {self.order}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, value in self.entries.items():
            key = tuple(key)
            if len(key) != self.order:
                raise ValueError(f"index {key} has length {len(key)}, expected {self.order}")
            if any(i < 1 or i > self.dim for i in key):
                raise ValueError(f"index {key} out of range 1..{self.dim}")
            if tuple(sorted(key)) != key:
                raise ValueError(f"index {key} is not canonical (nondecreasing)")
            value = _as_fraction(value)
            if value != 0:
                clean[key] = value
        object.__setattr__(self, "entries", clean)

    @cached_property
    def _packed(self) -> tuple[np.ndarray, np.ndarray, list[tuple[tuple[int, ...], int, float]]]:
        """Float views: (0-based index array K x d, orbit_count*value weights, python list)."""
        keys = sorted(self.entries)
        rows = [(key, _orbit_size(key), float(self.entries[key])) for key in keys]
        if keys:
            idx = np.array(keys, dtype=np.intp) - 1
            weights = np.array([c * v for _, c, v in rows], dtype=float)
        else:
            idx = np.zeros((0, self.order), dtype=np.intp)
            weights = np.zeros(0, dtype=float)
        return idx, weights, rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.order, self.dim, self.entries) == (other.order, other.dim, other.entries)

    def __hash__(self):
        return hash((self.order, self.dim, tuple(sorted(self.entries.items()))))


def sym_from_entries(order: int, dim: int, raw_entries: Iterable[tuple[Sequence[int], object]]) -> SymTensor:
    """Build a symmetric tensor from raw (index, coefficient) records.

    Indices may arrive in any permutation; records whose sorted indices
    coincide are summed.  Zero totals are dropped, so the result is always
    in canonical form.
    """
    acc: dict[tuple[int, ...], Fraction] = {}
    for key, value in raw_entries:
        key = tuple(key)
        if len(key) != order:
            raise ValueError(f"index {key} has length {len(key)}, expected {order}")
        if any(i < 1 or i > dim for i in key):
            raise ValueError(f"index {key} out of range 1..{dim}")
        canon = tuple(sorted(key))
        acc[canon] = acc.get(canon, Fraction(0)) + _as_fraction(value)
    return SymTensor(order, dim, acc)


def _check_dim(A: SymTensor, length: int):
    if length != A.dim:
        raise ValueError(f"vector of dim {length} does not match tensor dim {A.dim}")


def eval_form(A: SymTensor, h) -> float:
    """Floating-point value of the homogeneous form A(h, ..., h)."""
    h = np.asarray(h, dtype=float)
    _check_dim(A, h.shape[0])
    idx, weights, _ = A._packed
    if idx.shape[0] == 0:
        return 0.0
    return float(weights @ np.prod(h[idx], axis=1))


def eval_form_batch(A: SymTensor, points: np.ndarray, chunk: int = 262_144) -> np.ndarray:
    """Form values at many points at once; `points` has shape (N, dim)."""
    points = np.asarray(points, dtype=float)
    _check_dim(A, points.shape[1])
    idx, weights, _ = A._packed
    out = np.zeros(points.shape[0])
    if idx.shape[0] == 0:
        return out
    for lo in range(0, points.shape[0], chunk):
        block = points[lo:lo + chunk]
        prod = block[:, idx[:, 0]].copy()
        for t in range(1, A.order):
            prod *= block[:, idx[:, t]]
        out[lo:lo + block.shape[0]] = prod @ weights
    return out


def eval_form_exact(A: SymTensor, h: Sequence) -> Fraction:
    """Exact rational value of A(h, ..., h) for rational h."""
    _check_dim(A, len(h))
    hq = [_as_fraction(x) for x in h]
    total = Fraction(0)
    for key, value in A.entries.items():
        term = value * _orbit_size(key)
        for i in key:
            term *= hq[i - 1]
        total += term
    return total


def grad_form(A: SymTensor, h) -> np.ndarray:
    """Gradient of h -> A(h, ..., h), i.e. order * A(h, ..., h, .).

    Satisfies the Euler identity <grad, h> = order * A(h, ..., h).
    """
    h = np.asarray(h, dtype=float)
    _check_dim(A, h.shape[0])
    _, _, rows = A._packed
    g = np.zeros(A.dim)
    for key, count, value in rows:
        w = count * value
        for j in set(key):
            m = key.count(j)
            prod = 1.0
            skipped = False
            for i in key:
                if i == j and not skipped:
                    skipped = True
                    continue
                prod *= h[i - 1]
            g[j - 1] += w * m * prod
    return g


def eval_multilinear(A: SymTensor, vectors: Sequence) -> float:
    """A(h1, ..., hd) with possibly distinct arguments."""
    if len(vectors) != A.order:
        raise ValueError(f"expected {A.order} vectors, got {len(vectors)}")
    vs = [np.asarray(v, dtype=float) for v in vectors]
    for v in vs:
        _check_dim(A, v.shape[0])
    total = 0.0
    for key, value in A.entries.items():
        fval = float(value)
        for perm in set(permutations(key)):
            prod = fval
            for pos, i in enumerate(perm):
                prod *= vs[pos][i - 1]
            total += prod
    return total


def contract_all_but_one(A: SymTensor, vectors: Sequence, pos: int) -> np.ndarray:
    """Vector g with g_p = A(h1, ..., e_p at slot `pos`, ..., hd).

    `vectors[pos]` is ignored; the remaining arguments are contracted so
    that <g, x> = A(..., x at slot pos, ...) for every x.
    """
    if len(vectors) != A.order:
        raise ValueError(f"expected {A.order} vectors, got {len(vectors)}")
    vs = [None if q == pos else np.asarray(vectors[q], dtype=float) for q in range(A.order)]
    g = np.zeros(A.dim)
    for key, value in A.entries.items():
        fval = float(value)
        for perm in set(permutations(key)):
            prod = fval
            for q, i in enumerate(perm):
                if q != pos:
                    prod *= vs[q][i - 1]
            g[perm[pos] - 1] += prod
    return g


def frobenius(A: SymTensor) -> float:
    """Frobenius norm over the full hypermatrix (orbit value^2 times orbit size)."""
    total = Fraction(0)
    for key, value in A.entries.items():
        total += _orbit_size(key) * value * value
    return math.sqrt(float(total))


def _dense(A: SymTensor) -> np.ndarray:
    if A.dim ** A.order > _DENSE_LIMIT:
        raise ValueError(f"dense materialization of dim {A.dim} order {A.order} exceeds limit")
    full = np.zeros((A.dim,) * A.order)
    for key, value in A.entries.items():
        fval = float(value)
        for perm in set(permutations(key)):
            full[tuple(i - 1 for i in perm)] = fval
    return full


def spectral_upper_bound(A: SymTensor) -> float:
    """Sound upper bound on max over unit h of |A(h, ..., h)|.

    Minimum of the Frobenius norm and the largest singular value of every
    mode unfolding.  Each unfolding bounds the multilinear maximum because
    A(h1, ..., hd) = h1^T M (h2 x ... x hd) and the Kronecker factor is a
    unit vector; the single-argument maximum cannot exceed the multilinear
    one.
    """
    bound = frobenius(A)
    if not A.entries:
        return bound
    full = _dense(A)
    for mode in range(A.order):
        M = np.moveaxis(full, mode, 0).reshape(A.dim, -1)
        sigma = float(np.linalg.svd(M, compute_uv=False)[0])
        bound = min(bound, sigma)
    return bound


# ---------------------------------------------------------------------------
# Serialization: line-oriented text and JSON, bit-exact round trip.
# Text: header "order dim", then one record per canonical entry of the form
# "i1 ... id p/q" with 1-based indices.


def tensor_to_text(A: SymTensor) -> str:
    lines = [f"{A.order} {A.dim}"]
    for key in sorted(A.entries):
        lines.append(" ".join(str(i) for i in key) + " " + str(A.entries[key]))
    return "\n".join(lines) + "\n"


def tensor_from_text(text: str) -> SymTensor:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty tensor text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed tensor header {lines[0]!r}, expected 'order dim'")
    order, dim = int(head[0]), int(head[1])
    raw = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != order + 1:
            raise ValueError(f"malformed tensor record {ln!r}")
        raw.append((tuple(int(p) for p in parts[:order]), Fraction(parts[order])))
    return sym_from_entries(order, dim, raw)


def tensor_to_json_obj(A: SymTensor) -> dict:
    return {
        "order": A.order,
        "dim": A.dim,
        "entries": [[list(key), str(A.entries[key])] for key in sorted(A.entries)],
    }


def tensor_from_json_obj(obj: dict) -> SymTensor:
    raw = [(tuple(key), Fraction(value)) for key, value in obj["entries"]]
    return sym_from_entries(int(obj["order"]), int(obj["dim"]), raw)


def tensor_to_json(A: SymTensor) -> str:
    return json.dumps(tensor_to_json_obj(A))


def tensor_from_json(text: str) -> SymTensor:
    return tensor_from_json_obj(json.loads(text))
