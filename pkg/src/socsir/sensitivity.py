"""Normalized forward sensitivity indices of r0 and their ordering.

The index of r0 with respect to a parameter p is (p/r0) * d(r0)/dp: the
relative change of r0 per relative change of p.  Writing B for the mixed
rate rho*beta1 + (1-rho)*beta2 (so r0 = B/kappa), the closed forms are

    U_rho   = rho*(beta1-beta2)/B        = 1 - beta2/B
    U_beta1 = rho*beta1/B                = 1 - (1-rho)*beta2/B
    U_beta2 = (1-rho)*beta2/B            = 1 - rho*beta1/B

and, for model MB where rho = alpha2/(alpha1+alpha2),

    U_alpha1 = -rho*(1-rho)*(beta1-beta2)/B
    U_alpha2 = +rho*(1-rho)*(beta1-beta2)/B.

U_beta1 + U_beta2 = 1 always, U_rho < U_beta1 always, and for MB
U_alpha1 < 0 < U_alpha2 < U_rho always.  The relative position of U_beta2
depends on where rho sits against the breakpoints beta2/(beta1+beta2),
beta2/beta1 and beta2/(beta1-beta2), which is what ordering_case labels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ModelKind, Params
from .errors import RangeError
from .ngm import b_rho, r0, rho_from_alphas

__all__ = [
    "SensitivityIndices",
    "OrderingCase",
    "sensitivity_indices",
    "ordering_case",
    "finite_diff_check",
]

# A rho sitting within this distance of a breakpoint is reported BOUNDARY:
# the ordering statements use strict inequalities only, so ties are
# surfaced instead of being broken arbitrarily.
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class SensitivityIndices:
    """The indices of one parameter set; alpha entries are None for MA."""

    model: ModelKind
    upsilon_rho: float
    upsilon_beta1: float
    upsilon_beta2: float
    upsilon_alpha1: float | None = None
    upsilon_alpha2: float | None = None

    def as_dict(self) -> dict[str, float]:
        out = {
            "rho": self.upsilon_rho,
            "beta1": self.upsilon_beta1,
            "beta2": self.upsilon_beta2,
        }
        if self.upsilon_alpha1 is not None:
            out["alpha1"] = self.upsilon_alpha1
            out["alpha2"] = self.upsilon_alpha2
        return out


@dataclass(frozen=True)
class OrderingCase:
    """Which ordering chain the indices follow.

    label is "A".."D" or "BOUNDARY"; chain lists the parameter names in
    increasing order of their index (empty for BOUNDARY); thresholds maps
    each breakpoint expression to its value.
    """

    label: str
    chain: tuple[str, ...]
    thresholds: dict[str, float]


def sensitivity_indices(model: ModelKind, p: Params) -> SensitivityIndices:
    """Closed-form indices for the model's parameters."""
    mixed = b_rho(p.beta1, p.beta2, p.rho)
    u_rho = p.rho * (p.beta1 - p.beta2) / mixed
    u_beta1 = p.rho * p.beta1 / mixed
    u_beta2 = (1.0 - p.rho) * p.beta2 / mixed
    if model is not ModelKind.MB:
        return SensitivityIndices(
            model=model,
            upsilon_rho=u_rho,
            upsilon_beta1=u_beta1,
            upsilon_beta2=u_beta2,
        )
    swing = p.rho * (1.0 - p.rho) * (p.beta1 - p.beta2) / mixed
    return SensitivityIndices(
        model=model,
        upsilon_rho=u_rho,
        upsilon_beta1=u_beta1,
        upsilon_beta2=u_beta2,
        upsilon_alpha1=-swing,
        upsilon_alpha2=swing,
    )


def ordering_case(model: ModelKind, p: Params) -> OrderingCase:
    """Label the inequality chain the indices satisfy.

    MA:  A: U_rho < U_beta1 < U_beta2          (rho < beta2/(beta1+beta2))
         B: U_rho < U_beta2 < U_beta1          (... < rho < beta2/beta1)
         C: U_beta2 < U_rho < U_beta1          (rho > beta2/beta1)
    MB prepends U_alpha1 < U_alpha2 and gains a fourth case when U_beta2
    drops below U_alpha2:
         A: Ua1 < Ua2 < U_rho < U_beta1 < U_beta2
         B: Ua1 < Ua2 < U_rho < U_beta2 < U_beta1
         C: Ua1 < Ua2 < U_beta2 < U_rho < U_beta1
                                            (beta2/beta1 < rho < beta2/(beta1-beta2))
         D: Ua1 < U_beta2 < Ua2 < U_rho < U_beta1
                                            (rho > beta2/(beta1-beta2))
    BOUNDARY when rho sits within BOUNDARY_TOL of a relevant breakpoint.
    """
    t_sum = p.beta2 / (p.beta1 + p.beta2)
    t_ratio = p.beta2 / p.beta1
    t_diff = p.beta2 / (p.beta1 - p.beta2)
    thresholds = {
        "beta2/(beta1+beta2)": t_sum,
        "beta2/beta1": t_ratio,
        "beta2/(beta1-beta2)": t_diff,
    }

    relevant = [t_sum, t_ratio]
    if model is ModelKind.MB:
        relevant.append(t_diff)
    if any(abs(p.rho - t) <= BOUNDARY_TOL for t in relevant):
        return OrderingCase(label="BOUNDARY", chain=(), thresholds=thresholds)

    if p.rho < t_sum:
        label, tail = "A", ("rho", "beta1", "beta2")
    elif p.rho < t_ratio:
        label, tail = "B", ("rho", "beta2", "beta1")
    elif model is not ModelKind.MB or p.rho < t_diff:
        label, tail = "C", ("beta2", "rho", "beta1")
    else:
        label, tail = "D", ("beta2", "rho", "beta1")

    if model is not ModelKind.MB:
        return OrderingCase(label=label, chain=tail, thresholds=thresholds)

    if label == "C":
        chain = ("alpha1", "alpha2", "beta2", "rho", "beta1")
    elif label == "D":
        chain = ("alpha1", "beta2", "alpha2", "rho", "beta1")
    else:
        chain = ("alpha1", "alpha2") + tail
    return OrderingCase(label=label, chain=chain, thresholds=thresholds)


def finite_diff_check(model: ModelKind, p: Params, h: float = 1e-6) -> float:
    """Max relative deviation of the closed forms from central differences.

    Each index is re-derived as (param/r0) * d(r0)/d(param) with a central
    difference of relative step h; the alpha indices differentiate through
    rho(alpha1, alpha2), perturbing the switch rates themselves.  Returns
    the worst relative error over all indices of the model.
    """
    if not 1e-10 < h <= 1e-2:
        raise RangeError(f"h must lie in (1e-10, 1e-2], got {h}")

    closed = sensitivity_indices(model, p)
    base = r0(p.beta1, p.beta2, p.rho, p.kappa)
    two_h = 2.0 * h

    def rel_index(plus: float, minus: float) -> float:
        # (param/r0) * (f(+) - f(-)) / (2*h*param) with the param cancelled.
        return (plus - minus) / (two_h * base)

    estimates = {
        "rho": rel_index(
            r0(p.beta1, p.beta2, p.rho * (1.0 + h), p.kappa),
            r0(p.beta1, p.beta2, p.rho * (1.0 - h), p.kappa),
        ),
        "beta1": rel_index(
            r0(p.beta1 * (1.0 + h), p.beta2, p.rho, p.kappa),
            r0(p.beta1 * (1.0 - h), p.beta2, p.rho, p.kappa),
        ),
        "beta2": rel_index(
            r0(p.beta1, p.beta2 * (1.0 + h), p.rho, p.kappa),
            r0(p.beta1, p.beta2 * (1.0 - h), p.rho, p.kappa),
        ),
    }
    if model is ModelKind.MB:
        a1, a2 = p.alpha1, p.alpha2
        estimates["alpha1"] = rel_index(
            r0(p.beta1, p.beta2, rho_from_alphas(a1 * (1.0 + h), a2), p.kappa),
            r0(p.beta1, p.beta2, rho_from_alphas(a1 * (1.0 - h), a2), p.kappa),
        )
        estimates["alpha2"] = rel_index(
            r0(p.beta1, p.beta2, rho_from_alphas(a1, a2 * (1.0 + h)), p.kappa),
            r0(p.beta1, p.beta2, rho_from_alphas(a1, a2 * (1.0 - h)), p.kappa),
        )

    closed_map = closed.as_dict()
    return max(
        abs(estimates[name] - closed_map[name]) / abs(closed_map[name])
        for name in estimates
    )
