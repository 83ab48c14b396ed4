"""Random-coding error-exponent machinery for almost separable codes.

The joint distribution tau lives on A_q^s x Z but is restricted to the
channel support {(x, f(x))}, so it is parameterized by one weight per input
word and the support constraint is structural rather than penalized.
Desk scale only: the polytope dimension is q^s.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize
from scipy.special import xlogy

from .core import InvalidParametersError, type_of
from .channels import ChannelSpec, eval_channel
from .bounds import Distribution, entropy_output

DESK_S = 3
DESK_Q = 3


def _check_desk_scale(channel: ChannelSpec) -> None:
    if channel.s > DESK_S or channel.q > DESK_Q:
        raise InvalidParametersError(
            f"exponent evaluation is desk scale only (s <= {DESK_S}, q <= {DESK_Q}), "
            f"got s={channel.s}, q={channel.q}")


@dataclass(frozen=True)
class JointDistribution:
    """A distribution on input words x output symbols, supported on the
    channel graph {(x, f(x))}. Stored as a map (word, output) -> weight."""

    tau: dict

    def total(self) -> float:
        return float(sum(self.tau.values()))

    def items(self):
        return self.tau.items()


@dataclass(frozen=True)
class ExponentReport:
    value: float
    ensemble: str
    R: float
    m_star: int
    tau_star: JointDistribution
    converged: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "ensemble": self.ensemble,
            "R": self.R,
            "m_star": self.m_star,
            "converged": self.converged,
        }


def _input_words(channel: ChannelSpec) -> list[tuple[int, ...]]:
    return list(itertools.product(range(channel.q), repeat=channel.s))


def _outputs_for(channel: ChannelSpec, words) -> list:
    return [eval_channel(channel, type_of(w, channel.q)) for w in words]


def canonical_tau(p: Distribution, channel: ChannelSpec) -> JointDistribution:
    """The product-input distribution pushed through the channel:
    tau(x, f(x)) = prod_k p(x_k)."""
    if p.q != channel.q:
        raise InvalidParametersError(f"distribution over {p.q} symbols, channel q={channel.q}")
    words = _input_words(channel)
    outs = _outputs_for(channel, words)
    tau = {}
    for w, z in zip(words, outs):
        weight = 1.0
        for a in w:
            weight *= float(p.probs[a])
        tau[(w, z)] = weight
    return JointDistribution(tau)


def eval_H(p: Distribution, tau: JointDistribution, channel: ChannelSpec) -> float:
    """Divergence of tau from the canonical product-input distribution.
    Zero exactly at canonical_tau(p); +inf when tau puts mass off the
    channel support or where the input product law vanishes."""
    total = 0.0
    for (w, z), weight in tau.items():
        if weight <= 0:
            continue
        if eval_channel(channel, type_of(w, channel.q)) != z:
            return math.inf
        denom = 1.0
        for a in w:
            denom *= float(p.probs[a])
        if denom <= 0:
            return math.inf
        total += weight * math.log(weight / denom)
    return total


def eval_I(p: Distribution, tau: JointDistribution, m: int) -> float:
    """Conditional-information functional: mean log ratio of the conditional
    law of the first m inputs given the rest and the output, to the product
    input law on those m coordinates."""
    some_key = next(iter(tau.tau))
    s = len(some_key[0])
    if not 1 <= m <= s:
        raise InvalidParametersError(f"need 1 <= m <= s, got m={m}, s={s}")
    marg: dict = {}
    for (w, z), weight in tau.items():
        marg_key = (w[m:], z)
        marg[marg_key] = marg.get(marg_key, 0.0) + weight
    total = 0.0
    for (w, z), weight in tau.items():
        if weight <= 0:
            continue
        cond = weight / marg[(w[m:], z)]
        denom = 1.0
        for a in w[:m]:
            denom *= float(p.probs[a])
        if denom <= 0:
            return math.inf
        total += weight * math.log(cond / denom)
    return total


class _Objective:
    """Vectorized H and I_m over the support-restricted tau simplex."""

    def __init__(self, channel: ChannelSpec, p: Distribution):
        self.channel = channel
        self.p = p
        self.words = _input_words(channel)
        self.outs = _outputs_for(channel, self.words)
        self.n = len(self.words)
        pf = p.as_floats()
        # floor at exp(-745) instead of -inf so that 0 * log(0) stays 0 in dots
        self.log_prod_p = np.array(
            [sum(math.log(pf[a]) if pf[a] > 0 else -745.0 for a in w) for w in self.words])
        # marginal group index for each m: atoms sharing (x_{m+1}^s, z)
        s = channel.s
        self.group_idx = {}
        self.log_prod_p_head = {}
        for m in range(1, s + 1):
            keys = [(w[m:], z) for w, z in zip(self.words, self.outs)]
            uniq = {k: i for i, k in enumerate(dict.fromkeys(keys))}
            self.group_idx[m] = (np.array([uniq[k] for k in keys]), len(uniq))
            self.log_prod_p_head[m] = np.array(
                [sum(math.log(pf[a]) if pf[a] > 0 else -745.0 for a in w[:m])
                 for w in self.words])
        # per-coordinate input marginal masks for the FC constraint
        self.marg_mask = {}
        for k in range(s):
            for a in range(channel.q):
                self.marg_mask[(k, a)] = np.array(
                    [1.0 if w[k] == a else 0.0 for w in self.words])

    def H(self, x: np.ndarray) -> float:
        return float(np.sum(xlogy(x, x)) - np.dot(x, self.log_prod_p))

    def I(self, x: np.ndarray, m: int) -> float:
        idx, ngroups = self.group_idx[m]
        marg = np.zeros(ngroups)
        np.add.at(marg, idx, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_marg = np.where(marg > 0, np.log(np.maximum(marg, 1e-300)), 0.0)
        return float(np.sum(xlogy(x, x)) - np.dot(x, log_marg[idx])
                     - np.dot(x, self.log_prod_p_head[m]))

    def tau_from_vector(self, x: np.ndarray) -> JointDistribution:
        return JointDistribution({
            (w, z): float(v) for w, z, v in zip(self.words, self.outs, x)})


def _fc_constraints(obj: _Objective) -> list[dict]:
    cons = []
    pf = obj.p.as_floats()
    for k in range(obj.channel.s):
        for a in range(obj.channel.q - 1):  # last one implied by normalization
            mask = obj.marg_mask[(k, a)]
            target = pf[a]
            cons.append({"type": "eq",
                         "fun": (lambda x, mask=mask, target=target:
                                 float(np.dot(mask, x) - target))})
    return cons


def _minimize_over_polytope(obj: _Objective, objective, extra_constraints,
                            ensemble: str, seed: int, n_starts: int = 8):
    n = obj.n
    rng = np.random.default_rng(seed)
    base_cons = [{"type": "eq", "fun": lambda x: float(np.sum(x) - 1.0)}]
    if ensemble == "fc":
        base_cons += _fc_constraints(obj)
    cons = base_cons + list(extra_constraints)
    bnds = [(0.0, 1.0)] * n

    canonical = np.exp(np.where(np.isfinite(obj.log_prod_p), obj.log_prod_p, -745.0))
    canonical /= canonical.sum()
    starts = [canonical, np.full(n, 1.0 / n)]
    for _ in range(n_starts):
        starts.append(rng.dirichlet(np.ones(n)))

    best_val, best_x, ok = math.inf, None, False
    for x0 in starts:
        try:
            res = minimize(objective, x0, method="SLSQP", bounds=bnds,
                           constraints=cons, options={"maxiter": 400, "ftol": 1e-12})
        except (ValueError, FloatingPointError):
            continue
        if not np.isfinite(res.fun):
            continue
        x = np.clip(res.x, 0.0, None)
        if x.sum() <= 0:
            continue
        x /= x.sum()
        feasible = all(abs(c["fun"](x)) < 1e-6 for c in base_cons if c["type"] == "eq")
        feasible = feasible and all(c["fun"](x) > -1e-7 for c in cons if c["type"] == "ineq")
        if not feasible:
            continue
        val = float(objective(x))
        if val < best_val:
            best_val, best_x, ok = val, x, bool(res.success) or ok
    return best_val, best_x, ok


def exponent(channel: ChannelSpec, p: Distribution, R: float,
             ensemble: str = "cr", seed: int = 0) -> ExponentReport:
    """Random-coding error exponent: min over m of the minimum over the tau
    polytope of H + [I_m - mR]^+. The positive-part kink is handled by
    minimizing both branches (I_m <= mR active, and the sum unconstrained on
    I_m >= mR) and taking the smaller."""
    _check_desk_scale(channel)
    ensemble = ensemble.lower()
    if ensemble not in ("cr", "fc"):
        raise InvalidParametersError(f"ensemble must be 'cr' or 'fc', got {ensemble!r}")
    if R < 0:
        raise InvalidParametersError(f"rate must be nonnegative, got {R}")
    obj = _Objective(channel, p)
    s = channel.s

    best = None  # (value, m, x, converged)
    for m in range(1, s + 1):
        # branch A: region I_m <= mR, objective H alone
        val_a, x_a, ok_a = _minimize_over_polytope(
            obj, lambda x: obj.H(x),
            [{"type": "ineq", "fun": (lambda x, m=m: float(m * R - obj.I(x, m)))}],
            ensemble, seed + 101 * m)
        # branch B: region I_m >= mR, objective H + I_m - mR
        val_b, x_b, ok_b = _minimize_over_polytope(
            obj, lambda x, m=m: obj.H(x) + obj.I(x, m) - m * R,
            [{"type": "ineq", "fun": (lambda x, m=m: float(obj.I(x, m) - m * R))}],
            ensemble, seed + 211 * m)
        for val, x, ok in ((val_a, x_a, ok_a), (val_b, x_b, ok_b)):
            if x is None:
                continue
            if best is None or val < best[0]:
                best = (val, m, x, ok)

    if best is None:
        raise InvalidParametersError("exponent minimization failed to converge")
    value, m_star, x_star, converged = best
    value = max(value, 0.0)
    return ExponentReport(value=value, ensemble=ensemble, R=R, m_star=m_star,
                          tau_star=obj.tau_from_vector(x_star), converged=converged)


def rate_lower_bound_general(channel: ChannelSpec, p: Distribution,
                             ensemble: str = "cr", seed: int = 0) -> float:
    """General random-coding lower bound on the separable-code rate:
    min over m of min_tau (H + I_m) / (s + m - 1)."""
    _check_desk_scale(channel)
    ensemble = ensemble.lower()
    if ensemble not in ("cr", "fc"):
        raise InvalidParametersError(f"ensemble must be 'cr' or 'fc', got {ensemble!r}")
    obj = _Objective(channel, p)
    s = channel.s
    best = math.inf
    for m in range(1, s + 1):
        val, x, _ = _minimize_over_polytope(
            obj, lambda x, m=m: obj.H(x) + obj.I(x, m), [], ensemble, seed + 307 * m)
        if x is not None:
            best = min(best, max(val, 0.0) / (s + m - 1))
    return best
