"""Executable hypothesis classes: linear dilated CNNs and linear RNNs.

A CnnSpec holds the filters of a linear dilated-convolution stack whose
layer-k dilation is l^k; its induced representation is the response to a
unit impulse and is supported inside the receptive field [0, l^K - 1].
Two synthesizers build exact filter banks for a finitely supported
target: a digit-reading construction with one channel path per nonzero
entry, and a rank-decomposition construction with one channel path per
retained core entry.

An RnnSpec holds a linear recurrence whose representation is the power
sum c' W^(s-1) U for s >= 1 (and 0 at s = 0).  Width lower bounds for
impulse targets and depth lower bounds for geometric targets expose the
closed-form comparisons between the two classes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .sequences import Scalar, Sequence, dilated_conv
from . import tensors


def _one_hot(l, pos, scale=1.0):
    w = [0.0] * l
    w[pos] = float(scale)
    return tuple(w)


@dataclass(frozen=True, eq=False)
class CnnSpec:
    """Linear dilated-convolution stack with sparse filter storage.

    channels lists the widths (M_0, M_1, ..., M_K) with M_0 the input
    dimension and M_K = 1 the single output channel.  filters maps
    (layer k, in-channel j, out-channel i) to a length-l filter; missing
    keys are all-zero filters.  Layer k runs at dilation l^k.
    """

    l: int
    K: int
    channels: tuple
    filters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.l < 2 or self.K < 1:
            raise ValueError("need l >= 2 and K >= 1")
        if len(self.channels) != self.K + 1:
            raise ValueError("channels must list K + 1 widths")
        if any(int(m) < 1 for m in self.channels):
            raise ValueError("channel widths must be positive")
        if self.channels[-1] != 1:
            raise ValueError("the output is a single channel")
        for (k, j, i), w in self.filters.items():
            if not (0 <= k < self.K and 0 <= j < self.channels[k]
                    and 0 <= i < self.channels[k + 1]):
                raise ValueError(f"filter index {(k, j, i)} out of range")
            if len(w) != self.l:
                raise ValueError("every filter must have length l")

    @property
    def filter_count(self) -> int:
        """Number of stored (nonzero) filters."""
        return len(self.filters)

    def to_json(self) -> dict:
        keys = sorted(self.filters)
        return {
            "l": self.l,
            "K": self.K,
            "channels": [int(m) for m in self.channels],
            "filters": {f"{k},{j},{i}": [float(x) for x in self.filters[(k, j, i)]]
                        for (k, j, i) in keys},
        }

    @classmethod
    def from_json(cls, obj) -> "CnnSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        filters = {}
        for key, w in obj.get("filters", {}).items():
            k, j, i = (int(p) for p in key.split(","))
            filters[(k, j, i)] = tuple(float(x) for x in w)
        return cls(l=int(obj["l"]), K=int(obj["K"]),
                   channels=tuple(int(m) for m in obj["channels"]),
                   filters=filters)


@dataclass(frozen=True, eq=False)
class RnnSpec:
    """Linear recurrence with readout c, transition W and input map U."""

    m: int
    c: np.ndarray
    W: np.ndarray
    U: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float).reshape(-1))
        object.__setattr__(self, "W", np.asarray(self.W, dtype=float))
        object.__setattr__(self, "U", np.atleast_2d(np.asarray(self.U, dtype=float)))
        if self.c.shape != (self.m,):
            raise ValueError("readout must have length m")
        if self.W.shape != (self.m, self.m):
            raise ValueError("transition must be m x m")
        if self.U.shape[0] != self.m:
            raise ValueError("input map must have m rows")

    @property
    def dim(self) -> int:
        return self.U.shape[1]

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.W))))

    def to_json(self) -> dict:
        return {"m": self.m,
                "c": [float(x) for x in self.c],
                "W": [[float(x) for x in row] for row in self.W],
                "U": [[float(x) for x in row] for row in self.U]}

    @classmethod
    def from_json(cls, obj) -> "RnnSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(m=int(obj["m"]), c=obj["c"], W=obj["W"], U=obj["U"])


def _filter_sequence(spec: CnnSpec, k: int, j: int, i: int):
    w = spec.filters.get((k, j, i))
    if w is None:
        return None
    return Sequence.from_values(w)


def cnn_representation(spec: CnnSpec) -> Sequence:
    """Induced representation: the network response to a unit impulse.

    Channel paths are evaluated layer by layer in ascending channel
    order, which fixes the floating-point summation order.  The result
    has one component per input channel.
    """
    d = spec.channels[0]
    columns = []
    for c in range(d):
        prev = [Sequence.impulse(0) if j == c else Sequence.zero()
                for j in range(d)]
        for k in range(spec.K):
            dilation = spec.l ** k
            nxt = []
            for i in range(spec.channels[k + 1]):
                acc = Sequence.zero()
                for j in range(spec.channels[k]):
                    w = _filter_sequence(spec, k, j, i)
                    if w is None or prev[j].radius() is None:
                        continue
                    acc = acc.plus(dilated_conv(w, prev[j], dilation))
                nxt.append(acc)
            prev = nxt
        columns.append(prev[0])
    if d == 1:
        return columns[0]
    entries = {}
    for c, col in enumerate(columns):
        for t, v in col.entries().items():
            vec = entries.setdefault(t, np.zeros(d))
            vec[c] = v[0]
    return Sequence(dim=d, entries=entries)


def effective_filters(channels, l: int, d: int = 1) -> float:
    """Normalised pairwise-channel parameter count of a filter stack.

    Accepts a CnnSpec or the raw width list (M_1, ..., M_K); returns
    (sum over consecutive width products - l*K) / d.  A single layer has
    no width pairs and returns 0.  The value can be negative for very
    narrow stacks.
    """
    if isinstance(channels, CnnSpec):
        widths = list(channels.channels[1:])
        d = channels.channels[0]
        l = channels.l
    else:
        widths = [int(m) for m in channels]
    K = len(widths)
    if K < 1:
        raise ValueError("need at least one width")
    if K == 1:
        return 0.0
    pair_sum = sum(widths[k] * widths[k - 1] for k in range(1, K))
    return (pair_sum - l * K) / d


def _depth_for_radius(l: int, r: int) -> int:
    K = 1
    while l ** K <= r:
        K += 1
    return K


def synthesize_radix(target: Sequence, l: int) -> CnnSpec:
    """Exact filter bank reading base-l digits of the support positions.

    Depth is the smallest K with l^K > radius(target).  Each nonzero
    entry at time t gets its own channel path of K one-hot filters, hot
    at the successive base-l digits of t (least significant digit on the
    first layer) and scaled by the entry value on the first layer.  The
    stored filter count is at most K times the target sparsity.
    """
    if target.dim != 1:
        raise ValueError("synthesis applies to one-dimensional targets")
    if target.kind != "finite":
        raise ValueError("synthesis needs a finitely supported target")
    if l < 2:
        raise ValueError("need l >= 2")
    r = target.radius()
    if r is None:
        return CnnSpec(l=l, K=1, channels=(1, 1), filters={})
    K = _depth_for_radius(l, r)
    tol = target.zero_tol()
    support = [(t, float(v[0])) for t, v in sorted(target.entries().items())
               if abs(float(v[0])) > tol]
    if K == 1:
        w = [0.0] * l
        for t, v in support:
            w[t] = v
        return CnnSpec(l=l, K=1, channels=(1, 1), filters={(0, 0, 0): tuple(w)})
    P = len(support)
    filters = {}
    for p, (t, v) in enumerate(support):
        digits = []
        rem = t
        for _ in range(K):
            digits.append(rem % l)
            rem //= l
        filters[(0, 0, p)] = _one_hot(l, digits[0], v)
        for k in range(1, K - 1):
            filters[(k, p, p)] = _one_hot(l, digits[k])
        filters[(K - 1, p, 0)] = _one_hot(l, digits[K - 1])
    channels = (1,) + (P,) * (K - 1) + (1,)
    return CnnSpec(l=l, K=K, channels=channels, filters=filters)


def synthesize_lowrank(target: Sequence, l: int, K: int,
                       core_rel_tol: float = 1e-12) -> CnnSpec:
    """Exact filter bank from the orthogonal rank decomposition.

    The tensorised target is expanded over its factor bases; every core
    entry above core_rel_tol times the tensor norm becomes one
    single-channel path whose layer-k filter is the matching mode-(k+1)
    factor column, with the core value absorbed into the first layer.
    """
    if target.dim != 1:
        raise ValueError("synthesis applies to one-dimensional targets")
    if target.kind != "finite":
        raise ValueError("synthesis needs a finitely supported target")
    t = tensors.tensorize(target, l, K)
    norm = t.norm()
    if norm == 0.0:
        return CnnSpec(l=l, K=K, channels=(1,) * (K + 1), filters={})
    if K == 1:
        return CnnSpec(l=l, K=1, channels=(1, 1),
                       filters={(0, 0, 0): tuple(float(x) for x in t.data)})
    core, factors = tensors.hosvd(t)
    retained = [pos for pos in range(core.shape[0])
                if abs(core[pos]) > core_rel_tol * norm]
    if not retained:
        return CnnSpec(l=l, K=K, channels=(1,) * (K + 1), filters={})
    filters = {}
    for p, pos in enumerate(retained):
        digits = []
        rem = pos
        for _ in range(K):
            digits.append(rem % l)
            rem //= l
        first = core[pos] * factors[0][:, digits[0]]
        filters[(0, 0, p)] = tuple(float(x) for x in first)
        for k in range(1, K - 1):
            col = factors[k][:, digits[k]]
            filters[(k, p, p)] = tuple(float(x) for x in col)
        last = factors[K - 1][:, digits[K - 1]]
        filters[(K - 1, p, 0)] = tuple(float(x) for x in last)
    P = len(retained)
    channels = (1,) + (P,) * (K - 1) + (1,)
    return CnnSpec(l=l, K=K, channels=channels, filters=filters)


def rnn_representation(spec: RnnSpec, horizon: int) -> Sequence:
    """Representation c' W^(s-1) U for 1 <= s <= horizon; zero at s = 0."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    d = spec.dim
    entries = {}
    v = spec.U.copy()
    for s in range(1, horizon + 1):
        entries[s] = spec.c @ v
        v = spec.W @ v
    if d == 1:
        entries = {s: (float(val[0]),) for s, val in entries.items()}
        return Sequence(dim=1, entries=entries)
    return Sequence(dim=d, entries=entries)


def power_sum_delta_bound(m_terms: int, t: int, sup_val: float) -> Scalar:
    """Step-size bound 2 * m * sup / t for an m-term power sum.

    Callers modelling a width-m recurrence pass m * m terms, since the
    matrix power expands into at most m^2 exponentials.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if m_terms < 1:
        raise ValueError("m_terms must be >= 1")
    if sup_val < 0:
        raise ValueError("sup_val must be >= 0")
    return Scalar(2.0 * m_terms * sup_val / t)


def rnn_min_width_impulse(K: int, eps: float) -> int:
    """Smallest width m with m^2 > 2^(K-1) (1 - 2 eps) / (1 + eps).

    This is the width a linear recurrence needs to track a unit impulse
    at the end of a length-2^K window to accuracy eps.  The bound is
    vacuous for eps >= 1/2, which is reported as an error.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if not 0.0 < eps < 0.5:
        raise ValueError("the width bound needs 0 < eps < 1/2")
    budget = 2.0 ** (K - 1) * (1.0 - 2.0 * eps) / (1.0 + eps)
    m = 1
    while m * m <= budget:
        m += 1
    return m


def cnn_min_depth_expdecay(gamma: float, eps: float, l: int) -> int:
    """Smallest depth K with l^K >= log(eps) / log(gamma).

    A depth-K stack can only reach accuracy eps on the geometric target
    gamma^t once its receptive field covers the slow tail; the required
    depth diverges as gamma approaches 1.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("need 0 < gamma < 1")
    if not 0.0 < eps < 1.0:
        raise ValueError("need 0 < eps < 1")
    if l < 2:
        raise ValueError("need l >= 2")
    ratio = math.log(eps) / math.log(gamma)
    K = 1
    while l ** K < ratio:
        K += 1
    return K
