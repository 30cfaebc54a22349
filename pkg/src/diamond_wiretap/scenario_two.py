"""Secrecy-rate bounds when only the source can randomize.

With deterministic relays the eavesdropper resolves the fictitious message,
so the leakage f5 is paid on top of every cut.  The upper bound is

    max(T1, T2, T3)

    T1 = max_{-rho_bar <= rho <= 0}  min(f1(0), f2(0), f3(0), f4(rho)) - f5(rho)
    T2 = max_{0 <= rho <= rho*}      min(f1, f2, f3, f4) - f5
    T3 = max_{rho* <= rho <= 1}      min(f1, f2, f3(0), f4) - f5

T1's interval reaches down to -rho_bar, which lies below -1 for unequal
powers; the report flags an achieving correlation outside [-1, 1].

Achievable schemes: decode-and-forward (DF), partial decode-and-forward
where the fictitious message rides only the source-relay links (PDF-DF-M),
and partial decode-and-forward with the fictitious message also multicoded
onto the MAC (PDF-PDF-M).  The last one requires each link to out-rate what
the eavesdropper learns about that relay's signal: C1 > f6(rho) and
C2 > f7(rho), both strict.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rate_functions as rf
from .errors import BudgetInfeasible, EmptyFeasibleSet
from .rate_functions import ChannelParams, RandomnessBudget, RateValue
from .scalar_opt import maximize_min
from .scenario_one import BoundReport

__all__ = [
    "ScenarioTwoBounds",
    "upper_bound",
    "df_rate",
    "pdf_df_m_rate",
    "pdf_pdf_m_rate",
    "multicoding_feasible",
    "scheme_rates",
    "bounds",
]


@dataclass(frozen=True)
class ScenarioTwoBounds:
    """Assembled scenario-2 picture: upper bound, per-scheme lower bounds."""

    upper: BoundReport
    lower_df: BoundReport
    lower_pdf_df_m: BoundReport
    lower_pdf_pdf_m: BoundReport
    lower: RateValue  # best achievable rate, clamped at 0
    rho_max: float | None
    indicator_satisfied: bool  # PDF-PDF-M link conditions at its achieving rho
    note: str | None = None


def upper_bound(params: ChannelParams) -> BoundReport:
    """Converse bound on the scenario-2 secrecy capacity."""
    f10 = rf.f1(params, 0.0)
    f20 = rf.f2(params, 0.0)
    f30 = rf.f3(params, 0.0)

    def const(v):
        return lambda r: v + 0.0 * np.asarray(r, dtype=float)

    def minus_f5(fn):
        return lambda r: fn(r) - rf.f5(params, r)

    t1 = maximize_min(
        [("f1(0)-f5", minus_f5(const(f10))), ("f2(0)-f5", minus_f5(const(f20))),
         ("f3(0)-f5", minus_f5(const(f30))), ("f4-f5", minus_f5(lambda r: rf.f4(params, r)))],
        -rf.rho_bar(params), 0.0,
    )
    rs = rf.rho_star(params)
    t2 = maximize_min(
        [("f1-f5", minus_f5(lambda r: rf.f1(params, r))),
         ("f2-f5", minus_f5(lambda r: rf.f2(params, r))),
         ("f3-f5", minus_f5(lambda r: rf.f3(params, r))),
         ("f4-f5", minus_f5(lambda r: rf.f4(params, r)))],
        0.0, rs,
    )
    t3 = maximize_min(
        [("f1-f5", minus_f5(lambda r: rf.f1(params, r))),
         ("f2-f5", minus_f5(lambda r: rf.f2(params, r))),
         ("f3(0)-f5", minus_f5(const(f30))),
         ("f4-f5", minus_f5(lambda r: rf.f4(params, r)))],
        rs, 1.0,
    )

    branch, opt = max(
        (("T1", t1), ("T2", t2), ("T3", t3)),
        key=lambda item: item[1].value,
    )
    # max() keeps the first of equal values, so ties resolve to the lowest index
    return BoundReport(
        value=opt.value,
        rho=opt.rho,
        binding=opt.binding,
        raw_value=opt.value,
        branch=branch,
        sub_reports={"T1": t1, "T2": t2, "T3": t3},
        rho_in_unit_interval=opt.rho >= -1.0,
    )


def _require_budget(params: ChannelParams, budget: RandomnessBudget, rho: float) -> None:
    leak = rf.f5(params, rho)
    if leak > budget.r_prime:
        raise BudgetInfeasible(
            f"rho={rho} leaks f5={leak:.6g} bits/use, above the budget {budget.r_prime:.6g}"
        )


def df_rate(params: ChannelParams, budget: RandomnessBudget, rho: float) -> RateValue:
    """Decode-and-forward rate min(C1, C2, f4) - f5 at ``rho``, clamped at 0."""
    _require_budget(params, budget, rho)
    raw = min(params.c1, params.c2, rf.f4(params, rho)) - rf.f5(params, rho)
    return max(0.0, raw)


def pdf_df_m_rate(params: ChannelParams, budget: RandomnessBudget, rho: float) -> RateValue:
    """PDF with the fictitious message on the links only, clamped at 0."""
    _require_budget(params, budget, rho)
    f5v = rf.f5(params, rho)
    raw = min(
        rf.f1(params, rho),
        rf.f2(params, rho),
        rf.f3(params, rho) - f5v,
        rf.f4(params, rho),
    ) - f5v
    return max(0.0, raw)


def multicoding_feasible(params: ChannelParams, rho) -> bool:
    """Strict link conditions C1 > f6(rho) and C2 > f7(rho) for PDF-PDF-M."""
    ok = (params.c1 > rf.f6(params, rho)) & (params.c2 > rf.f7(params, rho))
    return bool(ok) if np.ndim(rho) == 0 else ok


def pdf_pdf_m_rate(params: ChannelParams, budget: RandomnessBudget, rho: float) -> RateValue:
    """PDF with the fictitious message multicoded onto the MAC, clamped at 0.

    The rate is 0 whenever either strict link condition fails; no tolerance
    is applied to the comparison.
    """
    _require_budget(params, budget, rho)
    if not multicoding_feasible(params, rho):
        return 0.0
    raw = min(
        rf.f1(params, rho),
        rf.f2(params, rho),
        rf.f3(params, rho),
        rf.f4(params, rho),
    ) - rf.f5(params, rho)
    return max(0.0, raw)


def _scheme_report(opt, feasible_note: str | None = None) -> BoundReport:
    return BoundReport(
        value=max(0.0, opt.value), rho=opt.rho, binding=opt.binding,
        raw_value=opt.value, note=feasible_note,
    )


def _achievability(
    params: ChannelParams, budget: RandomnessBudget,
) -> tuple[BoundReport, BoundReport, BoundReport, float | None, bool, str | None]:
    """(df, pdfdfm, pdfpdfm, rho_max, indicator_ok, note)."""
    try:
        rho_max = rf.f5_inverse(params, budget)
    except EmptyFeasibleSet:
        note = "randomness budget below the minimum leakage f5(-1): no feasible correlation"
        zero = BoundReport(value=0.0, rho=0.0, binding=(), raw_value=0.0, note=note)
        return zero, zero, zero, None, False, note

    def minus_f5(fn):
        return lambda r: fn(r) - rf.f5(params, r)

    def const(v):
        return lambda r: v + 0.0 * np.asarray(r, dtype=float)

    df_opt = maximize_min(
        [("C1-f5", minus_f5(const(params.c1))), ("C2-f5", minus_f5(const(params.c2))),
         ("f4-f5", minus_f5(lambda r: rf.f4(params, r)))],
        -1.0, rho_max,
    )
    df = _scheme_report(df_opt)

    pdfdfm_opt = maximize_min(
        [("f1-f5", minus_f5(lambda r: rf.f1(params, r))),
         ("f2-f5", minus_f5(lambda r: rf.f2(params, r))),
         ("f3-2f5", lambda r: rf.f3(params, r) - 2.0 * rf.f5(params, r)),
         ("f4-f5", minus_f5(lambda r: rf.f4(params, r)))],
        -1.0, rho_max,
    )
    pdfdfm = _scheme_report(pdfdfm_opt)

    def indicator(r):
        on = multicoding_feasible(params, r)
        return np.where(on, np.inf, 0.0)

    pdfpdfm_opt = maximize_min(
        [("f1-f5", minus_f5(lambda r: rf.f1(params, r))),
         ("f2-f5", minus_f5(lambda r: rf.f2(params, r))),
         ("f3-f5", minus_f5(lambda r: rf.f3(params, r))),
         ("f4-f5", minus_f5(lambda r: rf.f4(params, r))),
         ("indicator", indicator)],
        -1.0, rho_max,
    )
    ind_ok = multicoding_feasible(params, pdfpdfm_opt.rho)
    pdfpdfm = _scheme_report(
        pdfpdfm_opt,
        None if ind_ok else "link conditions C1 > f6, C2 > f7 not met at the optimum",
    )

    return df, pdfdfm, pdfpdfm, rho_max, bool(ind_ok), None


def scheme_rates(params: ChannelParams, budget: RandomnessBudget) -> dict[str, float]:
    """Clamped rate of each achievability scheme, skipping the upper bound."""
    df, pdfdfm, pdfpdfm, _, _, _ = _achievability(params, budget)
    return {"df": df.value, "pdfdfm": pdfdfm.value, "pdfpdfm": pdfpdfm.value}


def bounds(params: ChannelParams, budget: RandomnessBudget) -> ScenarioTwoBounds:
    """Upper bound plus the best achievable rate over all scenario-2 schemes.

    All schemes are optimized over the budget-feasible correlations
    [-1, rho_max].  An empty feasible set reports 0 with a diagnostic.
    """
    ub = upper_bound(params)
    df, pdfdfm, pdfpdfm, rho_max, ind_ok, note = _achievability(params, budget)
    lower = max(0.0, df.value, pdfdfm.value, pdfpdfm.value)
    return ScenarioTwoBounds(
        upper=ub, lower_df=df, lower_pdf_df_m=pdfdfm, lower_pdf_pdf_m=pdfpdfm,
        lower=lower, rho_max=rho_max, indicator_satisfied=ind_ok, note=note,
    )
