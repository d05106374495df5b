"""Complexity measure, approximation-rate intervals and error curves.

The complexity of a target relative to a decay budget g is the smallest
constant c such that every spectrum tail mass of every tensorised window
stays below c * g(s).  Together with the window tail norm it yields the
two-sided approximation bound for a dilated-convolution stack, and the
per-(K, M) error curves that compare targets at equal parameter budgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sequences import Scalar, Sequence
from .models import CnnSpec, effective_filters
from . import tensors

COMPLEXITY_NOISE_REL_TOL = 1e-12


@dataclass(frozen=True)
class DecayProfile:
    """Non-increasing positive envelope g with zero limit at infinity.

    family "exponential" is a * b^s with 0 < b < 1; family "power" is
    a / (s + 1)^p with p > 0; family "table" is an explicit
    non-increasing list extended by its last value up to a cutoff and
    zero beyond it.
    """

    family: str
    a: float = 1.0
    b: float = 0.5
    p: float = 1.0
    values: tuple = ()
    cutoff: int = 0

    def __post_init__(self):
        if self.family == "exponential":
            if self.a <= 0 or not 0.0 < self.b < 1.0:
                raise ValueError("exponential profile needs a > 0 and 0 < b < 1")
        elif self.family == "power":
            if self.a <= 0 or self.p <= 0:
                raise ValueError("power profile needs a > 0 and p > 0")
        elif self.family == "table":
            vals = tuple(float(v) for v in self.values)
            if not vals or any(v <= 0 for v in vals):
                raise ValueError("table profile needs positive values")
            if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
                raise ValueError("table profile must be non-increasing")
            if self.cutoff < len(vals) - 1:
                raise ValueError("cutoff must cover the listed values")
            object.__setattr__(self, "values", vals)
        else:
            raise ValueError(f"unknown profile family {self.family!r}")

    @classmethod
    def exponential(cls, b: float, a: float = 1.0) -> "DecayProfile":
        return cls(family="exponential", a=a, b=b)

    @classmethod
    def power(cls, p: float, a: float = 1.0) -> "DecayProfile":
        return cls(family="power", a=a, p=p)

    @classmethod
    def table(cls, values, cutoff: int) -> "DecayProfile":
        return cls(family="table", values=tuple(values), cutoff=cutoff)

    def __call__(self, s: int) -> float:
        if s < 0:
            raise ValueError("the profile is defined on s >= 0")
        if self.family == "exponential":
            return self.a * self.b ** s
        if self.family == "power":
            return self.a / (s + 1) ** self.p
        if s > self.cutoff:
            return 0.0
        return self.values[min(s, len(self.values) - 1)]


@dataclass(frozen=True)
class CurveRow:
    K: int
    M: int
    rank_term: float
    tail_term: float
    upper_bound: float


@dataclass(frozen=True)
class ErrorCurveTable:
    """Per-(K, M) split of the approximation bound for one target.

    Every row satisfies upper_bound = rank_term + tail_term, and within
    one depth the rows are non-increasing in M.  Bracketed tail norms
    enter through their upper end so the bound stays valid.
    """

    target: str
    l: int
    rows: tuple

    def curve(self, K: int):
        """(M values, upper bounds) for one depth, ascending in M."""
        picked = [(r.M, r.upper_bound) for r in self.rows if r.K == K]
        picked.sort()
        return [m for m, _ in picked], [u for _, u in picked]

    def to_csv(self) -> str:
        lines = ["target,l,K,M,rank_term,tail_term,upper_bound"]
        for r in self.rows:
            lines.append(f"{self.target},{self.l},{r.K},{r.M},"
                         f"{r.rank_term!r},{r.tail_term!r},{r.upper_bound!r}")
        return "\n".join(lines) + "\n"


def _coverage_depth(l: int, radius: int) -> int:
    K = 1
    while l ** K <= radius:
        K += 1
    return K


def _window_spectrum(rho: Sequence, l: int, K: int) -> np.ndarray:
    window = rho.truncate(l ** K)
    return tensors.singular_values(tensors.tensorize(window, l, K)).values


def tail_sum_profile(rho: Sequence, l: int, K: int):
    """Square roots of the spectrum tail masses, indexed by the offset s.

    Entry s is sqrt of the sum of squared spectrum values from position
    s + K (one-based) to the end of the pooled spectrum of the length
    l^K window; support beyond the window is excluded here and accounted
    separately through tail norms.
    """
    if l < 2 or K < 1:
        raise ValueError("need l >= 2 and K >= 1")
    values = _window_spectrum(rho, l, K)
    total = l * K
    padded = np.zeros(total)
    padded[:len(values)] = values
    out = []
    for s in range(total - K + 1):
        tail = padded[s + K - 1:]
        out.append(Scalar(math.sqrt(float(np.sum(tail * tail)))))
    return out


def complexity_measure(rho: Sequence, l: int, g: DecayProfile,
                       k_cap=None) -> Scalar:
    """Smallest constant bounding every spectrum tail mass by c * g(s).

    The supremum runs over offsets s >= 0 and window depths K from 1 up
    to the coverage depth (the smallest K whose window holds the whole
    support); deeper windows only duplicate tail masses, so the cap does
    not change the value.  Tail masses below round-off relative to the
    sequence norm are treated as exact zeros.  Returns infinity when a
    nonzero tail mass meets g(s) = 0.
    """
    if rho.kind == "generated":
        if rho.horizon is None:
            raise ValueError("split an infinite target before measuring it")
        rho = rho.truncate(rho.horizon + 1)
    r = rho.radius()
    if r is None:
        return Scalar(0.0)
    k_star = _coverage_depth(l, r)
    cap = k_star if k_cap is None else int(k_cap)
    if cap < k_star:
        raise ValueError("k_cap must cover the support")
    noise = COMPLEXITY_NOISE_REL_TOL * float(rho.norm())
    best = 0.0
    for K in range(1, cap + 1):
        for s, tail in enumerate(tail_sum_profile(rho, l, K)):
            t = tail.value
            if t <= noise:
                continue
            gs = g(s)
            if gs == 0.0:
                return Scalar(math.inf)
            best = max(best, t / gs)
    return Scalar(best)


def stack_effective_filters(channels, l: int, K: int, d: int) -> float:
    """Effective filter count from a CnnSpec or a full channel list.

    A plain list must spell out (M_0, ..., M_K) with M_0 = d and
    M_K = 1; the pair sum then runs over the K - 1 hidden width pairs.
    """
    if isinstance(channels, CnnSpec):
        if channels.K != K or channels.l != l or channels.channels[0] != d:
            raise ValueError("the stack does not match (l, K, d)")
        return effective_filters(channels, l, d)
    seq = tuple(int(m) for m in channels)
    if len(seq) != K + 1:
        raise ValueError("channels must list the K + 1 widths M_0, ..., M_K")
    if seq[0] != d:
        raise ValueError("M_0 must equal the target dimension")
    if seq[-1] != 1:
        raise ValueError("the output is a single channel")
    return effective_filters(seq[1:], l, d)


def rate_bound_interval(rho: Sequence, l: int, K: int, channels,
                        g: DecayProfile):
    """Two-sided approximation bound for a depth-K width-budgeted stack.

    channels is a CnnSpec or the full width list (M_0, ..., M_K); its
    effective filter count M must be at least 1.  The lower bound is the
    sup of the representation beyond the receptive field (scaled by
    1/sqrt(d)); the upper bound is d * g(floor(K * M^(1/K)) - K) *
    complexity + the tail norm beyond the receptive field.
    """
    d = rho.dim
    M = stack_effective_filters(channels, l, K, d)
    if M < 1:
        raise ValueError("effective filter count must be at least 1")
    size = l ** K
    budget = math.floor(K * M ** (1.0 / K))
    g_arg = max(0, budget - K)
    if rho.kind == "generated" and rho.horizon is None:
        measured = rho.truncate(size)
    else:
        measured = rho
    c_val = complexity_measure(measured, l, g)
    tail = rho.tail_norm(size)
    upper = Scalar(d * g(g_arg) * c_val.value + tail.value, tail.halfwidth)
    lower = Scalar(rho.sup_abs_from(size) / math.sqrt(d))
    if lower.value > upper.upper + 1e-12 * max(1.0, upper.upper):
        raise ArithmeticError("bound inversion; this indicates a defect")
    return lower, upper


def error_curve(rho: Sequence, l: int, K_list, M_range,
                target_id: str = "target") -> ErrorCurveTable:
    """Bound split per (K, M): spectrum truncation plus window tail.

    The rank budget at width M is floor(K * M^(1/K)); the rank term is
    the spectrum tail beyond that budget, the tail term is the norm of
    the representation outside the window (upper bracket end when the
    tail is only known as an interval).
    """
    rows = []
    for K in sorted(set(int(k) for k in K_list)):
        values = _window_spectrum(rho, l, K)
        spec = tensors.Spectrum.from_mode_values([values])
        tail = rho.tail_norm(l ** K)
        tail_term = tail.upper
        for M in sorted(set(int(m) for m in M_range)):
            if M < 1:
                raise ValueError("widths must be >= 1")
            budget = math.floor(K * M ** (1.0 / K))
            rank_term = tensors.truncation_error_bound(spec, budget).value
            rows.append(CurveRow(K=K, M=M, rank_term=rank_term,
                                 tail_term=tail_term,
                                 upper_bound=rank_term + tail_term))
    return ErrorCurveTable(target=target_id, l=l, rows=tuple(rows))
