"""Problem instance types and the seven closed-form rate functions.

Channel model: a source reaches two relays over noiseless links of capacities
C1 and C2 (bits/channel-use).  The relays transmit X1, X2 with average power
constraints P1, P2 over a Gaussian multiple-access channel to the legitimate
receiver, Y = X1 + X2 + N_Y, while an eavesdropper observes a degraded signal
that is statistically equivalent to Z = sqrt(g)*X1 + sqrt(g)*X2 + N_Z with
unit noise and gain g in [0, 1).  All rates are in bits per channel use; logs
are base 2 throughout.

For jointly Gaussian inputs with correlation coefficient rho the cut-set and
leakage quantities reduce to seven scalar functions of rho:

    f1(rho) = C1 + 0.5*log2(1 + (1 - rho^2)*P2)
    f2(rho) = C2 + 0.5*log2(1 + (1 - rho^2)*P1)
    f3(rho) = C1 + C2 - 0.5*log2(1/(1 - rho^2))          (-inf at |rho| = 1)
    f4(rho) = 0.5*log2(1 + P1 + P2 + 2*rho*sqrt(P1*P2))
    f5(rho) = 0.5*log2(1 + g*(P1 + P2 + 2*rho*sqrt(P1*P2)))
    f6(rho) = 0.5*log2((1 + g*s(rho)) / (1 + g*(1 - rho^2)*P2))
    f7(rho) = 0.5*log2((1 + g*s(rho)) / (1 + g*(1 - rho^2)*P1))

with s(rho) = P1 + P2 + 2*rho*sqrt(P1*P2).  f1, f2, f3, f6, f7 live on
[-1, 1]; f4 and f5 extend to [-rho_bar, 1] with rho_bar = (P1+P2)/(2*sqrt(P1*P2)),
where s(-rho_bar) = 0 and hence f4 = f5 = 0.

Rate values are plain floats under the IEEE extended-real convention: f3
returns -inf at |rho| = 1, ``min`` propagates it and ``max`` discards it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyFeasibleSet, ParameterError

__all__ = [
    "RateValue",
    "ChannelParams",
    "RandomnessBudget",
    "f1",
    "f2",
    "f3",
    "f4",
    "f5",
    "f6",
    "f7",
    "rho_star",
    "rho_bar",
    "f5_inverse",
]

# Extended-real rate in bits/channel-use; -inf marks an impossible rate.
RateValue = float

# Slack for correlation domain checks at interval endpoints.
_DOMAIN_TOL = 1e-12

# Bisection stops when the bracket is this narrow.
_BISECT_TOL = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    """One channel instance.

    p1, p2: relay power constraints, strictly positive.
    c1, c2: source-to-relay link capacities in bits/channel-use, nonnegative.
    g: eavesdropper gain, in [0, 1); g = 0 removes the eavesdropper.
    """

    p1: float
    p2: float
    c1: float
    c2: float
    g: float

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "c1", "c2", "g"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParameterError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.p1 <= 0 or self.p2 <= 0:
            raise ParameterError(f"powers must be positive, got p1={self.p1}, p2={self.p2}")
        if self.c1 < 0 or self.c2 < 0:
            raise ParameterError(f"link capacities must be nonnegative, got c1={self.c1}, c2={self.c2}")
        if not 0.0 <= self.g < 1.0:
            raise ParameterError(f"eavesdropper gain must lie in [0, 1), got g={self.g}")

    @classmethod
    def symmetric(cls, p: float, c: float, g: float) -> "ChannelParams":
        """Shorthand for p1 = p2 = p and c1 = c2 = c."""
        return cls(p1=p, p2=p, c1=c, c2=c, g=g)

    @property
    def is_symmetric(self) -> bool:
        return self.p1 == self.p2 and self.c1 == self.c2


@dataclass(frozen=True)
class RandomnessBudget:
    """Rate of fictitious-message randomness available for stochastic encoding.

    ``r_prime`` is in bits/channel-use; ``math.inf`` means unbounded.
    """

    r_prime: float = math.inf

    def __post_init__(self) -> None:
        v = self.r_prime
        if not isinstance(v, (int, float)) or math.isnan(v):
            raise ParameterError(f"r_prime must be a number, got {v!r}")
        if v < 0:
            raise ParameterError(f"r_prime must be nonnegative, got {v}")
        object.__setattr__(self, "r_prime", float(v))

    @classmethod
    def unbounded(cls) -> "RandomnessBudget":
        return cls(math.inf)

    @classmethod
    def finite(cls, r_prime: float) -> "RandomnessBudget":
        if not math.isfinite(r_prime):
            raise ParameterError(f"finite budget requires a finite rate, got {r_prime}")
        return cls(r_prime)

    @property
    def is_unbounded(self) -> bool:
        return math.isinf(self.r_prime)


def _is_scalar(rho) -> bool:
    return np.ndim(rho) == 0


def _unit_interval(rho):
    # domain [-1, 1], tiny slack for endpoint round-off
    r = np.asarray(rho, dtype=float)
    if np.any(np.isnan(r)) or np.any(np.abs(r) > 1.0 + _DOMAIN_TOL):
        raise DomainError(f"correlation must lie in [-1, 1], got {rho!r}")
    return np.clip(r, -1.0, 1.0)


def _combined_power(params: ChannelParams, rho):
    """s(rho) = P1 + P2 + 2*rho*sqrt(P1*P2), snapped to 0 at round-off scale.

    The snap makes f4(-rho_bar) and f5(-rho_bar) exactly 0 despite the
    rounding in rho_bar itself, and clamps the tiny negative values that the
    same rounding can produce just inside the domain edge.
    """
    s = params.p1 + params.p2 + 2.0 * np.asarray(rho, dtype=float) * math.sqrt(params.p1 * params.p2)
    snap = 32.0 * np.finfo(float).eps * (params.p1 + params.p2)
    return np.where(np.abs(s) < snap, 0.0, np.maximum(s, 0.0))


def _extended_interval(params: ChannelParams, rho):
    # domain [-rho_bar, 1] used by f4 and f5 inside upper-bound optimizations
    r = np.asarray(rho, dtype=float)
    lo = -rho_bar(params)
    if np.any(np.isnan(r)) or np.any(r > 1.0 + _DOMAIN_TOL) or np.any(r < lo - 1e-9):
        raise DomainError(f"correlation must lie in [{lo}, 1] for the combined-power rates, got {rho!r}")
    return np.minimum(r, 1.0)


def _ret(value, rho):
    return float(value) if _is_scalar(rho) else value


def f1(params: ChannelParams, rho) -> RateValue:
    """Cut rate through relay 1's link plus relay 2's clean MAC contribution."""
    r = _unit_interval(rho)
    return _ret(params.c1 + 0.5 * np.log2(1.0 + (1.0 - np.square(r)) * params.p2), rho)


def f2(params: ChannelParams, rho) -> RateValue:
    """Cut rate through relay 2's link plus relay 1's clean MAC contribution."""
    r = _unit_interval(rho)
    return _ret(params.c2 + 0.5 * np.log2(1.0 + (1.0 - np.square(r)) * params.p1), rho)


def f3(params: ChannelParams, rho) -> RateValue:
    """Both-links cut rate net of the correlation cost; -inf at |rho| = 1."""
    r = _unit_interval(rho)
    with np.errstate(divide="ignore"):
        return _ret(params.c1 + params.c2 + 0.5 * np.log2(1.0 - np.square(r)), rho)


def f4(params: ChannelParams, rho) -> RateValue:
    """Coherent-combining rate of the main MAC; 0 at rho = -rho_bar."""
    r = _extended_interval(params, rho)
    return _ret(0.5 * np.log2(1.0 + _combined_power(params, r)), rho)


def f5(params: ChannelParams, rho) -> RateValue:
    """Rate leaked to the eavesdropper from the combined transmission."""
    r = _extended_interval(params, rho)
    return _ret(0.5 * np.log2(1.0 + params.g * _combined_power(params, r)), rho)


def f6(params: ChannelParams, rho) -> RateValue:
    """Eavesdropper's rate about X1 alone (X2 acting as noise)."""
    r = _unit_interval(rho)
    num = 1.0 + params.g * _combined_power(params, r)
    den = 1.0 + params.g * (1.0 - np.square(r)) * params.p2
    return _ret(0.5 * np.log2(num / den), rho)


def f7(params: ChannelParams, rho) -> RateValue:
    """Eavesdropper's rate about X2 alone (X1 acting as noise)."""
    r = _unit_interval(rho)
    num = 1.0 + params.g * _combined_power(params, r)
    den = 1.0 + params.g * (1.0 - np.square(r)) * params.p1
    return _ret(0.5 * np.log2(num / den), rho)


def rho_star(params: ChannelParams) -> float:
    """Correlation above which the correlation cost term is frozen at rho = 0.

    rho_star = sqrt(1 + 1/(4*P1*P2)) - 1/(2*sqrt(P1*P2)); always in (0, 1).
    """
    q = math.sqrt(params.p1 * params.p2)
    return math.sqrt(1.0 + 1.0 / (4.0 * params.p1 * params.p2)) - 1.0 / (2.0 * q)


def rho_bar(params: ChannelParams) -> float:
    """Anticorrelation at which the combined transmit power vanishes.

    rho_bar = (P1+P2)/(2*sqrt(P1*P2)) >= 1, with equality iff P1 = P2.
    """
    if params.p1 == params.p2:
        return 1.0
    return (params.p1 + params.p2) / (2.0 * math.sqrt(params.p1 * params.p2))


def f5_inverse(params: ChannelParams, budget: RandomnessBudget) -> float:
    """Largest rho in [-1, 1] whose leakage f5(rho) stays within the budget.

    f5 is strictly increasing on [-1, 1] (for g > 0), so the feasible set
    {rho : f5(rho) <= r_prime} is [-1, rho_max] and bisection applies.
    Returns 1.0 when the budget is unbounded or g = 0; raises
    EmptyFeasibleSet when even full anticorrelation leaks too much, which
    can only happen for unequal powers.
    """
    if budget.is_unbounded or params.g == 0.0:
        return 1.0
    r_prime = budget.r_prime
    if f5(params, 1.0) <= r_prime:
        return 1.0
    if f5(params, -1.0) > r_prime:
        raise EmptyFeasibleSet(
            f"minimum leakage f5(-1) = {f5(params, -1.0):.6g} exceeds the budget {r_prime:.6g}"
        )
    lo, hi = -1.0, 1.0  # f5(lo) <= r_prime < f5(hi)
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if f5(params, mid) <= r_prime:
            lo = mid
        else:
            hi = mid
    return lo
