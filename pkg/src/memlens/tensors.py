"""Tensorised views of sequences and their singular spectra.

A length-l^K window of a sequence is folded into an order-K tensor whose
mode-k index reads the k-th base-l digit of the time index (mode 1 is the
least significant digit).  The pooled singular values of the K mode
flattenings drive the rank counts and truncation bounds used by the
approximation-rate machinery.

Singular values are computed from the l x l Gram matrix of each
flattening with a cyclic Jacobi eigensolver: every flattening is short
and wide, so no general SVD machinery is needed and the results are
reproducible at high precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sequences import Scalar, Sequence

JACOBI_OFF_TOL = 1e-14


def jacobi_eigh(mat, tol=JACOBI_OFF_TOL, max_sweeps=60):
    """Eigen-decomposition of a small symmetric matrix by cyclic Jacobi.

    Sweeps plane rotations over all off-diagonal positions until the
    off-diagonal mass drops below tol relative to the matrix scale.
    Returns (eigenvalues descending, eigenvectors as columns).
    """
    a = np.array(mat, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))

    def off_mass():
        return math.sqrt(sum(a[i, j] ** 2
                             for i in range(n) for j in range(n) if i != j))

    for _ in range(max_sweeps):
        if off_mass() <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


@dataclass(frozen=True, eq=False)
class Tensor:
    """Dense order-K tensor with all mode lengths l.

    data is the canonical linearisation with mode 1 fastest: the flat
    position of multi-index (i_1, ..., i_K) (1-based) is
    sum_k (i_k - 1) * l^(k-1), i.e. exactly the time index the entry
    came from under tensorisation.
    """

    l: int
    order: int
    data: np.ndarray

    def __post_init__(self):
        if self.l < 2:
            raise ValueError("mode length must be >= 2")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.data.shape != (self.l ** self.order,):
            raise ValueError("data must hold exactly l^K entries")

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def entry(self, index) -> float:
        """Value at a 1-based multi-index (i_1, ..., i_K)."""
        if len(index) != self.order:
            raise ValueError("multi-index length must equal the order")
        pos, stride = 0, 1
        for i in index:
            if not 1 <= i <= self.l:
                raise ValueError("multi-index out of range")
            pos += (i - 1) * stride
            stride *= self.l
        return float(self.data[pos])


@dataclass(frozen=True)
class Spectrum:
    """Pooled singular values of all mode flattenings of a tensor.

    entries holds (value, mode) pairs sorted by descending value with
    ties broken by ascending mode index.  Each mode contributes
    min(l, l^(K-1)) values, zero padded per mode to l when K >= 2, so the
    total length is l*K for K >= 2 and 1 for K = 1.
    """

    entries: tuple

    @classmethod
    def from_mode_values(cls, per_mode) -> "Spectrum":
        pairs = []
        for mode, values in enumerate(per_mode, start=1):
            pairs.extend((float(v), mode) for v in values)
        pairs.sort(key=lambda p: (-p[0], p[1]))
        return cls(entries=tuple(pairs))

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.entries])

    def per_mode(self, k: int) -> np.ndarray:
        return np.array(sorted((v for v, m in self.entries if m == k), reverse=True))

    def __len__(self):
        return len(self.entries)


def _digit_rows_cols(dims, k):
    """Row and column index of every flat position under mode-k flattening.

    Implements the index map: the (i_1, ..., i_K) entry lands at row i_k,
    column 1 + sum over s != k of (i_s - 1) times the product of the mode
    lengths I_s' for s' < s, s' != k (all zero-based here).
    """
    total = 1
    for d in dims:
        total *= d
    idx = np.arange(total)
    digits = []
    rem = idx
    for d in dims:
        digits.append(rem % d)
        rem = rem // d
    rows = digits[k - 1]
    cols = np.zeros(total, dtype=int)
    stride = 1
    for s in range(len(dims)):
        if s == k - 1:
            continue
        cols += digits[s] * stride
        stride *= dims[s]
    return rows, cols


def mode_flatten_general(data, dims, k) -> np.ndarray:
    """Mode-k flattening of a dense tensor in first-index-fastest layout.

    Supports arbitrary mode lengths; the library paths only ever use
    equal mode lengths, the general form exists for conformance checks.
    """
    dims = tuple(int(d) for d in dims)
    if not 1 <= k <= len(dims):
        raise ValueError("mode index out of range")
    flat = np.asarray(data, dtype=float).reshape(-1)
    total = 1
    for d in dims:
        total *= d
    if flat.shape != (total,):
        raise ValueError("data size does not match dims")
    rows, cols = _digit_rows_cols(dims, k)
    out = np.empty((dims[k - 1], total // dims[k - 1]))
    out[rows, cols] = flat
    return out


def mode_refold_general(mat, dims, k) -> np.ndarray:
    """Inverse of mode_flatten_general, back to the flat canonical layout."""
    dims = tuple(int(d) for d in dims)
    rows, cols = _digit_rows_cols(dims, k)
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (dims[k - 1], int(np.prod(dims)) // dims[k - 1]):
        raise ValueError("matrix shape does not match dims")
    return mat[rows, cols]


def mode_flatten(t: Tensor, k: int) -> np.ndarray:
    """The l x l^(K-1) mode-k flattening of an all-modes-l tensor."""
    return mode_flatten_general(t.data, (t.l,) * t.order, k)


def tensorize(rho: Sequence, l: int, K: int) -> Tensor:
    """Fold rho restricted to [0, l^K - 1] into an order-K tensor.

    The entry at time t goes to the multi-index whose mode-k digit is the
    k-th base-l digit of t.  Sequences reaching beyond the window are
    rejected; callers split off the tail first.
    """
    if rho.dim != 1:
        raise ValueError("tensorisation applies to one-dimensional sequences")
    if l < 2 or K < 1:
        raise ValueError("need l >= 2 and K >= 1")
    size = l ** K
    if rho.kind == "generated" and rho.horizon is None:
        raise ValueError("sequence support exceeds the tensor window")
    r = rho.radius()
    if r is not None and r > size - 1:
        raise ValueError("sequence support exceeds the tensor window")
    return Tensor(l=l, order=K, data=rho.flat_values(size))


def matrix_singular_values(mat) -> np.ndarray:
    """Singular values (descending) of a matrix via the Gram-Jacobi path."""
    a = np.asarray(mat, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    if a.shape[0] > a.shape[1]:
        a = a.T
    w, _ = jacobi_eigh(a @ a.T)
    return np.sqrt(np.clip(w, 0.0, None))


def singular_values(t: Tensor) -> Spectrum:
    """Pooled spectrum of all K mode flattenings."""
    keep = min(t.l, t.l ** (t.order - 1))
    per_mode = []
    for k in range(1, t.order + 1):
        sig = matrix_singular_values(mode_flatten(t, k))[:keep]
        if t.order >= 2 and len(sig) < t.l:
            sig = np.concatenate([sig, np.zeros(t.l - len(sig))])
        per_mode.append(sig)
    return Spectrum.from_mode_values(per_mode)


def tensor_rank(t: Tensor, tol=1e-8) -> int:
    """Number of spectrum entries above tol relative to the largest."""
    values = singular_values(t).values
    if len(values) == 0 or values[0] <= 0.0:
        return 0
    return int(np.sum(values > tol * values[0]))


def outer_product(vectors) -> Tensor:
    """Order-K tensor with entries prod_k v_k[i_k]; mode k reads v_k."""
    vs = [np.asarray(v, dtype=float).reshape(-1) for v in vectors]
    if not vs:
        raise ValueError("need at least one vector")
    l = len(vs[0])
    if any(len(v) != l for v in vs):
        raise ValueError("all vectors must share one length")
    arr = vs[0]
    for v in vs[1:]:
        arr = np.multiply.outer(arr, v)
    return Tensor(l=l, order=len(vs), data=arr.reshape(-1, order="F"))


def truncation_error_bound(spec: Spectrum, kept_rank: int) -> Scalar:
    """sqrt of the spectrum tail mass beyond the kept_rank largest values.

    This bounds the best approximation error achievable by any tensor
    whose summed mode ranks stay within kept_rank.
    """
    if kept_rank < 0:
        raise ValueError("kept_rank must be >= 0")
    tail = spec.values[kept_rank:]
    return Scalar(math.sqrt(float(np.sum(tail * tail))))


def hosvd(t: Tensor):
    """Orthogonal factor per mode plus the core tensor (flat layout).

    Factors are the Gram eigenvectors of each mode flattening ordered by
    descending eigenvalue; the core is the tensor multiplied by every
    factor transpose, so t reassembles as the factor-weighted sum of
    outer products of factor columns.
    """
    dims = (t.l,) * t.order
    factors = []
    core = t.data.copy()
    for k in range(1, t.order + 1):
        flat = mode_flatten(t, k)
        _, vecs = jacobi_eigh(flat @ flat.T)
        factors.append(vecs)
        a = mode_flatten_general(core, dims, k)
        core = mode_refold_general(vecs.T @ a, dims, k)
    return core, factors
