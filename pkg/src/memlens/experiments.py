"""Builtin targets, reference oracles, curve studies and model comparisons.

This module packages the analyses the library exists for: the canned
test targets, an independent best-rank oracle, the per-depth error curve
study with its qualitative checks, the two scenarios where one model
family beats the other, and a conformance suite that replays every
worked example and reports PASS, FAIL or LOGGED per item.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sequences import Scalar, Sequence, dilated_conv
from . import tensors
from .bounds import DecayProfile, complexity_measure, error_curve, tail_sum_profile
from .models import (cnn_min_depth_expdecay, cnn_representation,
                     rnn_min_width_impulse, rnn_representation, RnnSpec,
                     synthesize_radix)

SPARSE_VALUE = math.pi ** 2 / 12.0

# Zero-based window slots; chosen so the length-32 window tensors of the
# two sparse targets have pooled ranks 5 and 10 (one-based listings of
# the same patterns shift every slot up by one and change the ranks).
RHO1_SLOTS = (16, 17, 24, 25)
RHO2_SLOTS = (8, 14, 18, 25)


def make_target(name: str, **params) -> Sequence:
    """Builtin analysis targets.

    "rho1" and "rho2" put the value pi^2 / 12 on four window slots each
    (a low-rank and a full-rank pattern under tensorisation), "rho3" is
    the inverse-time sequence, "exp" takes gamma (gamma = 0 degenerates
    to a unit impulse at 0 via the 0^0 = 1 convention), "impulse" takes
    the position t.  "rho3" and "exp" accept an optional horizon.
    """
    if name == "rho1":
        return Sequence.from_entries({t: (SPARSE_VALUE,) for t in RHO1_SLOTS})
    if name == "rho2":
        return Sequence.from_entries({t: (SPARSE_VALUE,) for t in RHO2_SLOTS})
    if name == "rho3":
        return Sequence.power(horizon=params.get("horizon"))
    if name == "exp":
        if "gamma" not in params:
            raise ValueError("exp target needs gamma")
        gamma = float(params["gamma"])
        if gamma == 0.0:
            return Sequence.impulse(0)
        if not 0.0 < gamma < 1.0:
            raise ValueError("exp target needs 0 <= gamma < 1")
        return Sequence.geometric(gamma, horizon=params.get("horizon"))
    if name == "impulse":
        if "t" not in params:
            raise ValueError("impulse target needs t")
        return Sequence.impulse(int(params["t"]))
    raise ValueError(f"unknown target {name!r}")


def oracle_best_rank_matrix(mat, rank: int) -> Scalar:
    """Frobenius error of the best rank-r approximation of a matrix.

    Computed with the library-independent dense SVD so it can serve as a
    cross-check oracle for the spectrum-based truncation bound.
    """
    a = np.asarray(mat, dtype=float)
    if a.ndim != 2:
        raise ValueError("need a matrix")
    if not 0 <= rank <= min(a.shape):
        raise ValueError("rank out of range")
    s = np.linalg.svd(a, compute_uv=False)
    tail = s[rank:]
    return Scalar(math.sqrt(float(np.sum(tail * tail))))


@dataclass(frozen=True)
class CurveStudy:
    """Error-curve tables for the three builtin targets plus checks.

    The qualitative claim checks (the low-rank target is pointwise
    easier, the decaying target is easier on sweep average) are scoped
    to the smallest swept depth whose window covers both sparse targets;
    shallower windows truncate them to unequal norms and the comparison
    loses its meaning there.
    """

    l: int
    tables: dict
    notes: tuple
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def error_curve_study(l: int = 2, K_list=(4, 5, 6), M_max: int = 64) -> CurveStudy:
    """Bound curves for the builtin targets over a shared (K, M) sweep."""
    if M_max < 1:
        raise ValueError("M_max must be >= 1")
    targets = {"rho1": make_target("rho1"), "rho2": make_target("rho2"),
               "rho3": make_target("rho3")}
    K_list = sorted(set(int(k) for k in K_list))
    M_range = range(1, M_max + 1)
    tables = {name: error_curve(rho, l, K_list, M_range, target_id=name)
              for name, rho in targets.items()}
    notes = []
    checks = {}

    cover = max(targets["rho1"].radius(), targets["rho2"].radius())
    claim_K = next((K for K in K_list if l ** K > cover), None)
    if claim_K is not None:
        r1 = tensors.tensor_rank(tensors.tensorize(targets["rho1"], l, claim_K))
        r2 = tensors.tensor_rank(tensors.tensorize(targets["rho2"], l, claim_K))
        notes.append(f"window tensor ranks at K={claim_K}: rho1 -> {r1}, rho2 -> {r2}")
        _, u1 = tables["rho1"].curve(claim_K)
        _, u2 = tables["rho2"].curve(claim_K)
        _, u3 = tables["rho3"].curve(claim_K)
        checks["low_rank_pointwise_easier"] = all(
            a <= b + 1e-12 for a, b in zip(u1, u2))
        m2, m3 = float(np.mean(u2)), float(np.mean(u3))
        checks["decaying_easier_on_average"] = m3 < m2
        notes.append(f"sweep-average upper bounds at K={claim_K}: "
                     f"rho2 -> {m2:.6f}, rho3 -> {m3:.6f}")
    else:
        checks["low_rank_pointwise_easier"] = False
        checks["decaying_easier_on_average"] = False
        notes.append("no swept depth covers the sparse supports; "
                     "claim checks not evaluable")

    non_inc = True
    plateau = True
    for name, table in tables.items():
        for K in K_list:
            _, uppers = table.curve(K)
            non_inc &= all(uppers[i + 1] <= uppers[i] + 1e-12
                           for i in range(len(uppers) - 1))
            rows = [r for r in table.rows if r.K == K]
            last = max(rows, key=lambda r: r.M)
            if math.floor(K * M_max ** (1.0 / K)) >= l * K:
                plateau &= (last.rank_term == 0.0
                            and last.upper_bound == last.tail_term)
                notes.append(f"plateau({name}, K={K}) = {last.tail_term!r}")
            else:
                notes.append(f"sweep too short to reach the plateau of "
                             f"{name} at K={K}")
    checks["curves_non_increasing"] = non_inc
    checks["plateaus_match_tail_terms"] = plateau

    tail = targets["rho3"].tail_norm(l ** max(K_list))
    notes.append(f"rho3 tail norm beyond the deepest window: "
                 f"[{tail.lower:.6f}, {tail.upper:.6f}] (interval bracket)")
    return CurveStudy(l=l, tables=tables, notes=tuple(notes), checks=checks)


@dataclass(frozen=True)
class ComparisonReport:
    """Head-to-head resource requirements for one scenario.

    Every number is produced by a model-construction or sizing routine;
    the report only collects them and words the verdict.
    """

    scenario: str
    parameters: dict
    cnn_requirement: dict
    rnn_requirement: dict
    verdict: str

    def to_json(self) -> dict:
        return {"scenario": self.scenario, "parameters": dict(self.parameters),
                "cnn_requirement": dict(self.cnn_requirement),
                "rnn_requirement": dict(self.rnn_requirement),
                "verdict": self.verdict}


def comparison_report(scenario: str, **params) -> ComparisonReport:
    """Build the model-family comparison for one canned scenario.

    "exp_decay" (gamma, eps, l, horizon): a geometric memory kernel is
    reproduced exactly by a width-1 recurrence (checked numerically over
    the horizon, matching on t >= 1 where the recurrence is defined),
    while a dilated stack needs its receptive field to outgrow the decay.
    "impulse_copy" (K, eps, l): copying the input from the far end of a
    depth-K receptive field (lag l^K - 1) takes one filter per layer,
    while a linear recurrence needs width growing exponentially in K.
    """
    if scenario == "exp_decay":
        gamma = float(params.get("gamma", 0.99))
        eps = float(params.get("eps", 0.01))
        l = int(params.get("l", 2))
        horizon = int(params.get("horizon", 1000))
        depth = cnn_min_depth_expdecay(gamma, eps, l)
        spec = RnnSpec(m=1, c=[1.0], W=[[gamma]], U=[[gamma]])
        rep = rnn_representation(spec, horizon)
        residual = max(abs(float(rep.value(t)[0]) - gamma ** t)
                       for t in range(1, horizon + 1))
        exact = residual <= 1e-12
        return ComparisonReport(
            scenario=scenario,
            parameters={"gamma": gamma, "eps": eps, "l": l, "horizon": horizon},
            cnn_requirement={"min_depth": depth, "receptive_field": l ** depth},
            rnn_requirement={"width": 1, "residual_sup": residual,
                             "exact": exact, "checked_horizon": horizon},
            verdict=(f"a width-1 recurrence reproduces the geometric kernel "
                     f"exactly (residual {residual:.2e} over t <= {horizon}), "
                     f"while the dilated stack needs depth {depth} to reach "
                     f"tolerance {eps}"))
    if scenario == "impulse_copy":
        K = int(params.get("K", 10))
        eps = float(params.get("eps", 0.1))
        l = int(params.get("l", 2))
        if K < 1:
            raise ValueError("K must be >= 1")
        lag = l ** K - 1
        target = make_target("impulse", t=lag)
        cnn = synthesize_radix(target, l)
        diff = cnn_representation(cnn).plus(target.scaled(-1.0))
        residual = float(diff.norm())
        width = rnn_min_width_impulse(K, eps)
        return ComparisonReport(
            scenario=scenario,
            parameters={"K": K, "eps": eps, "l": l, "lag": lag},
            cnn_requirement={"depth": cnn.K, "filter_count": cnn.filter_count,
                             "channels": list(cnn.channels),
                             "replay_residual": residual},
            rnn_requirement={"min_width": width, "tolerance": eps},
            verdict=(f"a depth-{cnn.K} stack with one channel per layer "
                     f"copies lag {lag} exactly with {cnn.filter_count} "
                     f"filters, while a linear recurrence needs width at "
                     f"least {width} to reach tolerance {eps}"))
    raise ValueError(f"unknown scenario {scenario!r}")


@dataclass(frozen=True)
class ConformanceItem:
    name: str
    status: str
    detail: str


def _check(name: str, ok: bool, detail: str) -> ConformanceItem:
    return ConformanceItem(name=name, status="PASS" if ok else "FAIL",
                           detail=detail)


def _logged(name: str, detail: str) -> ConformanceItem:
    return ConformanceItem(name=name, status="LOGGED", detail=detail)


def conformance_suite():
    """Replay the worked examples; report PASS/FAIL/LOGGED per item.

    LOGGED marks a reference-material discrepancy that is recorded
    rather than enforced; FAIL marks a defect in this library.
    """
    items = []
    sq2 = math.sqrt(2.0)

    t22 = tensors.tensorize(Sequence.from_values([1, 2, 3, 4]), 2, 2)
    ok = (np.array_equal(t22.data, [1.0, 2.0, 3.0, 4.0])
          and t22.entry((1, 2)) == 3.0 and t22.entry((2, 1)) == 2.0)
    items.append(_check(
        "window-layout", ok,
        "window slot t maps to its base-l digits, mode 1 least significant"))

    w1 = Sequence.from_values([1, 2])
    w2 = Sequence.from_values([3, 4])
    chain = dilated_conv(w2, w1, 2)
    got = tuple(chain.flat_values(4))
    left = tensors.tensorize(chain, 2, 2).data
    right = tensors.outer_product([np.array([1.0, 2.0]),
                                   np.array([3.0, 4.0])]).data
    items.append(_check(
        "layer-product-identity",
        got == (3.0, 6.0, 4.0, 8.0) and np.array_equal(left, right),
        "a two-layer chain tensorises to the outer product of its filters"))

    rho = Sequence.from_values([1, 0, 0, 1])
    refs = {2: (1.0, 1.0, 1.0, 1.0),
            3: (sq2, 1.0, 1.0, 1.0, 1.0, 0.0),
            4: (sq2, sq2, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0)}
    ok = True
    for K, ref in refs.items():
        vals = tensors.singular_values(
            tensors.tensorize(rho.truncate(2 ** K), 2, K)).values
        ok &= len(vals) == len(ref)
        ok &= float(np.max(np.abs(vals - np.array(ref)))) <= 1e-9
    items.append(_check(
        "edge-impulse-spectra", ok,
        "pooled spectra of the two-ended impulse pattern match the "
        "reference table for K = 2, 3, 4 to 1e-9"))
    k1 = tensors.singular_values(tensors.tensorize(rho.truncate(2), 2, 1)).values
    items.append(_logged(
        "depth-one-spectrum",
        f"the K = 1 window [1, 0] has the single spectrum value "
        f"{float(k1[0]):g}; the reference table lists two values for this "
        f"row, which has no reading under the depth-one definition"))

    prof = tail_sum_profile(rho, 2, 3)
    ok = (abs(prof[1].value ** 2 - 2.0) <= 1e-9
          and abs(prof[2].value ** 2 - 1.0) <= 1e-9)
    items.append(_check(
        "tail-mass-values", ok,
        "squared tail masses at s = 1 and s = 2 are 2 and 1"))
    items.append(_logged(
        "tail-mass-origin",
        f"the s = 0 squared tail mass is {prof[0].value ** 2:g}; the "
        f"reference case list assigns 0 to every s outside {{1, 2}}"))

    r_alt = tensors.tensor_rank(tensors.tensorize(
        Sequence.from_values([1, 0, 1, 0]), 2, 2))
    r_edge = tensors.tensor_rank(tensors.tensorize(rho, 2, 2))
    rho1 = make_target("rho1")
    rho2 = make_target("rho2")
    r1 = tensors.tensor_rank(tensors.tensorize(rho1, 2, 5))
    r2 = tensors.tensor_rank(tensors.tensorize(rho2, 2, 5))
    items.append(_check(
        "window-ranks", (r_alt, r_edge, r1, r2) == (2, 4, 5, 10),
        f"pooled ranks: alternating pair -> {r_alt}, two-ended pair -> "
        f"{r_edge}, sparse targets at K = 5 -> {r1} and {r2}"))
    items.append(_logged(
        "sparse-slot-indexing",
        "builtin sparse targets live on zero-based window slots "
        f"{list(RHO1_SLOTS)} and {list(RHO2_SLOTS)}; reading the reference "
        "positions as zero-based slots instead gives a depth-5 rank of 7, "
        "not the quoted 5, so the one-based reading is adopted"))

    n1, n2 = float(rho1.norm()), float(rho2.norm())
    items.append(_check(
        "sparse-norm-agreement", n1 == n2,
        f"both sparse targets have norm {n1:.10f}"))
    n3 = make_target("rho3").norm()
    items.append(_logged(
        "decaying-norm-mismatch",
        f"the decaying target's norm lies in [{n3.lower:.6f}, {n3.upper:.6f}] "
        f"while the sparse targets' norm is {n1:.6f}; the three-way norm "
        f"equality claim fails for the decaying target"))

    dims = (4, 3, 2)
    data = np.zeros(24)
    for i3 in range(2):
        for i2 in range(3):
            for i1 in range(4):
                data[i1 + 4 * i2 + 12 * i3] = 1 + 3 * i1 + i2 + 12 * i3
    a1 = tensors.mode_flatten_general(data, dims, 1)
    a2 = tensors.mode_flatten_general(data, dims, 2)
    a3 = tensors.mode_flatten_general(data, dims, 3)
    ok = (list(a1[0]) == [1, 2, 3, 13, 14, 15]
          and list(a2[0]) == [1, 4, 7, 10, 13, 16, 19, 22]
          and list(a3[0]) == [1, 4, 7, 10, 2, 5, 8, 11, 3, 6, 9, 12]
          and list(a3[1]) == [13, 16, 19, 22, 14, 17, 20, 23, 15, 18, 21, 24])
    for k, flat in ((1, a1), (2, a2), (3, a3)):
        ok &= np.array_equal(tensors.mode_refold_general(flat, dims, k), data)
    items.append(_check(
        "flattening-walkthrough", ok,
        "the 4x3x2 worked flattenings and their refolds are reproduced"))

    s2 = tensors.singular_values(tensors.tensorize(rho.truncate(4), 2, 2)).values
    s3 = tensors.singular_values(tensors.tensorize(rho.truncate(8), 2, 3)).values
    merged = sorted(list(s2) + [float(rho.norm()), 0.0], reverse=True)
    ok = float(np.max(np.abs(s3 - np.array(merged)))) <= 1e-10
    g = DecayProfile.exponential(0.5)
    c_base = complexity_measure(rho, 2, g)
    c_capped = complexity_measure(rho, 2, g, k_cap=5)
    ok &= abs(c_base.value - c_capped.value) <= 1e-12 * max(1.0, c_base.value)
    items.append(_check(
        "window-padding-law", ok,
        "deepening the window appends the sequence norm and zeros to the "
        "spectrum, so the complexity cap is immaterial"))

    items.append(_check(
        "complexity-worked-example",
        abs(c_base.value - 4.0) <= 1e-12,
        f"two-ended impulse pattern against g(s) = 2^-s gives {c_base.value:g}"))

    study = error_curve_study()
    failing = sorted(k for k, v in study.checks.items() if not v)
    items.append(_check(
        "curve-shape-claims", not failing,
        "curves are non-increasing, plateau at their tail terms, and the "
        "easier-target orderings hold" if not failing
        else "failing checks: " + ", ".join(failing)))

    return tuple(items)
