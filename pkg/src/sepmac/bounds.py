"""Rate and capacity bound calculators.

All values are in nats. The list-decoding lower bound keeps its probability
term in exact rational arithmetic end-to-end (the inner alternating sum
cancels badly in floats); the logarithm is taken only at the final step.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, log
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .core import Composition, InvalidParametersError, compositions
from .channels import ChannelSpec, eval_channel


@dataclass(frozen=True)
class Distribution:
    """A probability distribution on the alphabet A_q."""

    probs: tuple

    def __post_init__(self):
        p = self.probs
        if any(x < 0 for x in p):
            raise InvalidParametersError(f"negative probability in {p}")
        total = sum(p)
        if isinstance(total, Fraction):
            if total != 1:
                raise InvalidParametersError(f"probabilities sum to {total}, not 1")
        elif abs(total - 1) > 1e-12:
            raise InvalidParametersError(f"probabilities sum to {total}, not 1")

    @property
    def q(self) -> int:
        return len(self.probs)

    @classmethod
    def uniform(cls, q: int) -> "Distribution":
        return cls(tuple(Fraction(1, q) for _ in range(q)))

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.probs)


@dataclass(frozen=True)
class BoundReport:
    """A named bound value with its parameters and optimizer witness."""

    name: str
    value: float
    params: dict
    witness: Optional[object] = None
    exact: Optional[Fraction] = None
    approximate: bool = False

    def to_dict(self) -> dict:
        d = {"name": self.name, "value": self.value, "params": dict(self.params)}
        if self.witness is not None:
            w = self.witness
            if isinstance(w, Distribution):
                w = [float(x) for x in w.probs]
            d["witness"] = w
        if self.exact is not None:
            d["exact"] = f"{self.exact.numerator}/{self.exact.denominator}"
        if self.approximate:
            d["approximate"] = True
        return d


def multinomial(s: int, counts) -> int:
    num = factorial(s)
    for c in counts:
        num //= factorial(c)
    return num


def composition_probability(comp: Composition, p: Distribution) -> Fraction | float:
    """Probability that s i.i.d. symbols with law p realize this type."""
    prob = multinomial(comp.s, comp.counts)
    for a, c in enumerate(comp.counts):
        if c:
            prob *= p.probs[a] ** c
    return prob


def entropy_output(channel: ChannelSpec, p: Distribution) -> float:
    """Shannon entropy (nats) of the channel output for i.i.d. inputs ~ p."""
    if p.q != channel.q:
        raise InvalidParametersError(f"distribution over {p.q} symbols, channel q={channel.q}")
    out_prob: dict = {}
    for comp in compositions(channel.s, channel.q):
        z = eval_channel(channel, comp)
        out_prob[z] = out_prob.get(z, 0) + float(composition_probability(comp, p))
    h = 0.0
    for pr in out_prob.values():
        if pr > 0:
            h -= pr * log(pr)
    return h


def _maximize_entropy(channel: ChannelSpec, n_starts: int = 16, seed: int = 0,
                      tol: float = 1e-12) -> tuple[float, Distribution, bool]:
    """Multi-start maximization of the output entropy over the simplex."""
    q = channel.q
    rng = np.random.default_rng(seed)

    def neg_entropy(x):
        x = np.clip(x, 0.0, None)
        total = x.sum()
        if total <= 0:
            return 0.0
        return -entropy_output(channel, Distribution(tuple(x / total)))

    starts = [np.full(q, 1.0 / q)]
    for _ in range(n_starts):
        starts.append(rng.dirichlet(np.ones(q)))

    best_val, best_p, converged = -math.inf, None, False
    constraints = [{"type": "eq", "fun": lambda x: x.sum() - 1.0}]
    bnds = [(0.0, 1.0)] * q
    for x0 in starts:
        res = minimize(neg_entropy, x0, method="SLSQP", bounds=bnds,
                       constraints=constraints,
                       options={"maxiter": 500, "ftol": tol})
        x = np.clip(res.x, 0.0, None)
        x /= x.sum()
        val = -neg_entropy(x)
        if val > best_val:
            best_val, best_p = val, Distribution(tuple(float(v) for v in x))
            converged = bool(res.success)
    return best_val, best_p, converged


def capacity_entropy_bound(channel: ChannelSpec, seed: int = 0) -> BoundReport:
    """Entropy upper bound on the rate: max_p H(output) / s."""
    hmax, pstar, converged = _maximize_entropy(channel, seed=seed)
    return BoundReport(
        name="entropy-capacity",
        value=hmax / channel.s,
        params={"channel": channel.name(), "s": channel.s, "q": channel.q},
        witness=pstar,
        approximate=not converged,
    )


def capacity_B_closed_form(s: int, q: int) -> float:
    """Closed-form capacity for the compositional channel: the output-entropy
    maximum is attained at the uniform input distribution."""
    if s < 1 or q < 2:
        raise InvalidParametersError(f"need s >= 1, q >= 2, got s={s}, q={q}")
    total = 0.0
    qs = q ** s
    for comp in compositions(s, q):
        mult = multinomial(s, comp.counts)
        total += (mult / qs) * log(qs / mult)
    return total / s


def comb_upper_bound(s: int, q: int) -> float:
    """Combinatorial upper bound on the separable-code rate for any
    symmetric channel (via the bipartite split-graph girth argument)."""
    if s < 2 or q < 2:
        raise InvalidParametersError(f"need s >= 2, q >= 2, got s={s}, q={q}")
    if s % 2 == 1:
        coef = Fraction(s + 1, 2 * s)
    else:
        coef = Fraction(s + 2, 2 * (s + 1))
    return float(coef) * log(q)


def P_term(q: int, s: int, L: int) -> Fraction:
    """Exact probability that L uniform symbols all lie in the support of
    s uniform symbols, via the inclusion-exclusion closed form."""
    if q < 2 or s < 1 or L < 1:
        raise InvalidParametersError(f"need q >= 2, s >= 1, L >= 1, got {(q, s, L)}")
    total = Fraction(0)
    for m in range(1, min(q, s) + 1):
        inner = Fraction(0)
        for k in range(m + 1):
            inner += (-1) ** k * comb(m, k) * Fraction((m - k) ** s, q ** s)
        total += comb(q, m) * Fraction(m, q) ** L * inner
    return total


def P_term_enumerate(q: int, s: int, L: int) -> Fraction:
    """Brute-force oracle for P_term over all q^(s+L) symbol tuples."""
    good = 0
    for xs in itertools.product(range(q), repeat=s):
        support = set(xs)
        hits = sum(1 for a in range(q) if a in support)
        good += hits ** L
    return Fraction(good, q ** (s + L))


def k_factor(q: int, qprime: int) -> int:
    """Length blow-up of the alphabet-reduction construction."""
    if qprime < q or q < 2:
        raise InvalidParametersError(f"need q' >= q >= 2, got q={q}, q'={qprime}")
    if qprime == q:
        return 1
    return math.ceil(qprime / (q - 1))


def lower_bound_LD(s: int, L: int, q: int, qprime_max: int = 64) -> BoundReport:
    """Random-coding lower bound on the list-decoding rate, maximized over
    the auxiliary alphabet size q'. Ties break toward the smallest q'."""
    if s < 2 or L < 1 or q < 2:
        raise InvalidParametersError(f"need s >= 2, L >= 1, q >= 2, got {(s, L, q)}")
    if qprime_max < q:
        raise InvalidParametersError(f"empty search range: qprime_max={qprime_max} < q={q}")
    best_val, best_qp, best_p = -math.inf, None, None
    for qp in range(q, qprime_max + 1):
        pr = P_term(qp, s, L)
        val = (log(pr.denominator) - log(pr.numerator)) / ((s + L - 1) * k_factor(q, qp))
        if val > best_val + 1e-15:
            best_val, best_qp, best_p = val, qp, pr
    return BoundReport(
        name="ld-lower",
        value=best_val,
        params={"s": s, "L": L, "q": q, "qprime_max": qprime_max,
                "at_cap": best_qp == qprime_max},
        witness=best_qp,
        exact=best_p,
    )


def upper_bound_LD(s: int, L: int, q: int) -> float:
    """Combinatorial upper bound on the list-decoding rate."""
    if s < 2 or L < 1 or q < 2:
        raise InvalidParametersError(f"need s >= 2, L >= 1, q >= 2, got {(s, L, q)}")
    return (L / (s + L - 1)) * log(q)


def upper_bound_A(s: int, q: int) -> float:
    """Upper bound on the separable-code rate for the union channel,
    (2/s) ln q, equal to the (s-1, 2) list-decoding upper bound."""
    if s < 2 or q < 2:
        raise InvalidParametersError(f"need s >= 2, q >= 2, got s={s}, q={q}")
    return (2 / s) * log(q)


_ENUM_GUARD = 10 ** 7


def proof_probability_estimates(q: int, m: int, s: int) -> dict:
    """Exact desk-scale probabilities behind the random-coding estimates:
    type collision of two uniform m-tuples vs the m!/q^m bound, and union
    containment (m-support inside s-support) vs the (s/q)^m bound."""
    if m < 1 or s < m:
        raise InvalidParametersError(f"need 1 <= m <= s, got m={m}, s={s}")
    if q ** (2 * m) > _ENUM_GUARD or q ** (m + s) > _ENUM_GUARD:
        raise InvalidParametersError(
            f"instance too large for enumeration: q^2m={q ** (2 * m)}, q^(m+s)={q ** (m + s)}")

    # collision of types of two independent uniform m-tuples
    type_hits = 0
    type_counts: dict = {}
    for u in itertools.product(range(q), repeat=m):
        key = tuple(sorted(u))
        type_counts[key] = type_counts.get(key, 0) + 1
    type_hits = sum(c * c for c in type_counts.values())
    type_exact = Fraction(type_hits, q ** (2 * m))

    # support of a uniform m-tuple inside the support of a uniform s-tuple
    union_hits = 0
    for xs in itertools.product(range(q), repeat=s):
        support = set(xs)
        union_hits += len(support) ** m
    union_exact = Fraction(union_hits, q ** (m + s))

    return {
        "type_collision_exact": type_exact,
        "type_collision_bound": Fraction(factorial(m), q ** m),
        "union_containment_exact": union_exact,
        "union_containment_bound": Fraction(s, q) ** m,
    }


def reference_asymptotics() -> dict:
    """Documented reference constants/curves from prior asymptotic results.

    Emitted for plotting and comparison only; nothing here is derived by the
    toolkit. Each entry maps a name to a coefficient function of (s, L).
    """
    return {
        # rate lower bound coefficients of ln q, q -> infinity
        "B_lower_coeff": lambda s: s / (2 * s - 1),
        "A_lower_coeff": lambda s: 2 / (s + 1),
        "A_le_coeff": lambda s: 2 / 3 if s == 2 else 1 / (s - 1),
        "hash_coeff": lambda s: 1 / (s - 1),
        "frameproof_coeff": lambda s: 1 / s,
        "ld_lower_coeff": lambda s, L: L / (s + L - 1),
        # s -> infinity envelopes (coefficients of the displayed expressions)
        "disj_lower": lambda s: 2 * (log(2) ** 2) / s ** 2,
        "disj_upper": lambda s: 4 * log(s) / s ** 2,
    }
