"""Vector fields for the two compartment models.

Pure functions: given parameters and a state they return the instantaneous
rates of change.  The population is closed, so each derivative vector sums
to zero (up to float rounding); nothing here integrates or mutates.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .core import Params, StateMA, StateMB
from .errors import NonFiniteError

__all__ = ["DerivMA", "DerivMB", "rhs_ma", "rhs_mb"]


class DerivMA(NamedTuple):
    """Rates of change for model MA (counts per unit time)."""

    dS1: float
    dS2: float
    dIs: float
    dIa: float
    dR: float


class DerivMB(NamedTuple):
    """Rates of change for model MB."""

    dS1: float
    dS2: float
    dA1: float
    dA2: float
    dIs: float
    dR: float


def rhs_ma(p: Params, s: StateMA) -> DerivMA:
    """Model MA right-hand side.

    Class membership is fixed.  Both infective classes (Ia, Is) infect both
    susceptible classes; new infections split lam : (1-lam) into symptomatic
    and asymptomatic; asymptomatics develop symptoms at rate gamma; everyone
    recovers at rate kappa.

    Raises NonFiniteError when any input component is not finite.
    """
    S1, S2, Is, Ia, R = s
    if not (
        math.isfinite(S1)
        and math.isfinite(S2)
        and math.isfinite(Is)
        and math.isfinite(Ia)
        and math.isfinite(R)
    ):
        raise NonFiniteError(f"non-finite state {s!r}")

    infectives = Ia + Is
    force1 = p.beta1 * S1 / p.N
    force2 = p.beta2 * S2 / p.N
    incidence = (force1 + force2) * infectives

    return DerivMA(
        dS1=-force1 * infectives,
        dS2=-force2 * infectives,
        dIs=p.lam * incidence + p.gamma * Ia - p.kappa * Is,
        dIa=(1.0 - p.lam) * incidence - (p.gamma + p.kappa) * Ia,
        dR=p.kappa * infectives,
    )


def rhs_mb(p: Params, s: StateMB) -> DerivMB:
    """Model MB right-hand side.

    Like MA, but susceptibles and asymptomatics switch class at rates
    alpha1 (1 -> 2) and alpha2 (2 -> 1).  Susceptible switch terms are
    scaled by 1/N; asymptomatic switch terms are not, unless
    p.transition_normalization == "uniform", which divides them by N too.
    Either way the switches cancel pairwise, so the total is conserved.

    Raises NonFiniteError when any input component is not finite.
    """
    S1, S2, A1, A2, Is, R = s
    if not (
        math.isfinite(S1)
        and math.isfinite(S2)
        and math.isfinite(A1)
        and math.isfinite(A2)
        and math.isfinite(Is)
        and math.isfinite(R)
    ):
        raise NonFiniteError(f"non-finite state {s!r}")

    infectives = A1 + A2 + Is
    asympt = A1 + A2
    s1n = S1 / p.N
    s2n = S2 / p.N

    if p.transition_normalization == "uniform":
        switch_in_1 = p.alpha2 * A2 / p.N
        switch_out_1 = p.alpha1 * A1 / p.N
    else:
        switch_in_1 = p.alpha2 * A2
        switch_out_1 = p.alpha1 * A1

    return DerivMB(
        dS1=p.alpha2 * S2 / p.N - (p.alpha1 + p.beta1 * infectives) * s1n,
        dS2=p.alpha1 * S1 / p.N - (p.alpha2 + p.beta2 * infectives) * s2n,
        dA1=(1.0 - p.lam) * p.beta1 * infectives * s1n
        + switch_in_1
        - switch_out_1
        - (p.gamma + p.kappa) * A1,
        dA2=(1.0 - p.lam) * p.beta2 * infectives * s2n
        + switch_out_1
        - switch_in_1
        - (p.gamma + p.kappa) * A2,
        dIs=p.lam * (p.beta1 * s1n + p.beta2 * s2n) * infectives
        + p.gamma * asympt
        - p.kappa * Is,
        dR=p.kappa * infectives,
    )
