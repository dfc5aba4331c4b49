"""Basic reproduction number, next-generation matrices, DFE, stability.

The linearized infection subsystem of either model factors as
K = -T * Sigma^{-1} with a new-infection matrix T whose rows are constant:
every new infection is distributed over the infected compartments by one
fixed vector, so K has rank one.  The matrix route is kept numerically
honest by doing the inversion and the characteristic polynomial in exact
rational arithmetic (floats are rationals); the char poly then reduces to
lambda^(n-1) * (lambda - trace) with exactly zero low-order coefficients,
and the spectrum is read off in closed form rather than iterated for.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import ModelKind, Params, State, StateMA, StateMB, exact_complement
from .errors import OrderError, SingularMatrixError

__all__ = [
    "NgmResult",
    "StabilityReport",
    "StabilityVerdict",
    "r0",
    "rho_from_alphas",
    "dfe_of",
    "ngm",
    "stability",
]

Matrix = tuple[tuple[float, ...], ...]

# |r0 - 1| <= this is reported as MARGINAL rather than arbitrating the
# threshold case, where the strict and non-strict stability statements of
# the underlying theory disagree.
MARGINAL_TOL = 1e-12


def r0(beta1: float, beta2: float, rho: float, kappa: float) -> float:
    """Basic reproduction number (rho*beta1 + (1-rho)*beta2) / kappa.

    Pure formula; argument validation is the caller's job.  For model MB
    pass rho = rho_from_alphas(alpha1, alpha2).
    """
    return (rho * beta1 + (1.0 - rho) * beta2) / kappa


def b_rho(beta1: float, beta2: float, rho: float) -> float:
    """The class-mixed infection rate rho*beta1 + (1-rho)*beta2."""
    return rho * beta1 + (1.0 - rho) * beta2


def rho_from_alphas(alpha1: float, alpha2: float) -> float:
    """Equilibrium class-1 fraction alpha2 / (alpha1 + alpha2).

    Because alpha1 > alpha2 > 0 is required, the result lies in (0, 1/2).
    Raises OrderError when the rates are not strictly ordered.
    """
    if not alpha1 > alpha2 > 0:
        raise OrderError(
            f"need alpha1 > alpha2 > 0, got alpha1={alpha1}, alpha2={alpha2}"
        )
    return alpha2 / (alpha1 + alpha2)


def dfe_of(model: ModelKind, p: Params) -> State:
    """The disease-free equilibrium state of the model.

    All infective compartments are zero and the susceptibles are split
    rho : (1-rho) between the classes (for MB, rho comes from the switch
    rates).  The class-2 share is built as an exact complement so the state
    sums to N exactly; it may differ from literal (1-rho)*N by one ulp.
    """
    s1 = p.rho * p.N
    s2 = exact_complement(p.N, s1)
    if model is ModelKind.MB:
        return StateMB(S1=s1, S2=s2, A1=0.0, A2=0.0, Is=0.0, R=0.0)
    return StateMA(S1=s1, S2=s2, Is=0.0, Ia=0.0, R=0.0)


def _build_matrices(model: ModelKind, p: Params) -> tuple[Matrix, Matrix]:
    """New-infection matrix T and transition matrix Sigma.

    MA orders the infected compartments (Is, Ia); MB orders them
    (A1, A2, Is).
    """
    b = b_rho(p.beta1, p.beta2, p.rho)
    if model is ModelKind.MB:
        t1 = (1.0 - p.lam) * p.beta1 * p.rho
        t2 = (1.0 - p.lam) * p.beta2 * (1.0 - p.rho)
        t3 = p.lam * b
        T: Matrix = ((t1, t1, t1), (t2, t2, t2), (t3, t3, t3))
        a1, a2 = p.alpha1, p.alpha2
        Sigma: Matrix = (
            (-(a1 + p.gamma + p.kappa), a2, 0.0),
            (a1, -(a2 + p.gamma + p.kappa), 0.0),
            (p.gamma, p.gamma, -p.kappa),
        )
    else:
        lam_b = p.lam * b
        rest_b = (1.0 - p.lam) * b
        T = ((lam_b, lam_b), (rest_b, rest_b))
        Sigma = ((-p.kappa, p.gamma), (0.0, -(p.gamma + p.kappa)))
    return T, Sigma


def _exact(m: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _exact_inverse(m: tuple[tuple[Fraction, ...], ...]):
    """Adjugate inverse of a 2x2 or 3x3 rational matrix."""
    n = len(m)
    if n == 2:
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det == 0:
            raise SingularMatrixError("transition matrix is singular")
        return (
            (m[1][1] / det, -m[0][1] / det),
            (-m[1][0] / det, m[0][0] / det),
        )
    (a, b, c), (d, e, f), (g, h, i) = m
    ca, cb, cc = e * i - f * h, f * g - d * i, d * h - e * g
    det = a * ca + b * cb + c * cc
    if det == 0:
        raise SingularMatrixError("transition matrix is singular")
    return (
        (ca / det, (c * h - b * i) / det, (b * f - c * e) / det),
        (cb / det, (a * i - c * g) / det, (c * d - a * f) / det),
        (cc / det, (b * g - a * h) / det, (a * e - b * d) / det),
    )


def _char_poly_coeffs(k: tuple[tuple[Fraction, ...], ...]):
    """(trace, second elementary symmetric, det) of a 2x2/3x3 matrix."""
    n = len(k)
    if n == 2:
        tr = k[0][0] + k[1][1]
        det = k[0][0] * k[1][1] - k[0][1] * k[1][0]
        return tr, det, None
    tr = k[0][0] + k[1][1] + k[2][2]
    e2 = (
        (k[0][0] * k[1][1] - k[0][1] * k[1][0])
        + (k[0][0] * k[2][2] - k[0][2] * k[2][0])
        + (k[1][1] * k[2][2] - k[1][2] * k[2][1])
    )
    det = (
        k[0][0] * (k[1][1] * k[2][2] - k[1][2] * k[2][1])
        - k[0][1] * (k[1][0] * k[2][2] - k[1][2] * k[2][0])
        + k[0][2] * (k[1][0] * k[2][1] - k[1][1] * k[2][0])
    )
    return tr, e2, det


@dataclass(frozen=True)
class NgmResult:
    """Next-generation analysis of the linearized infection subsystem."""

    T: Matrix
    Sigma: Matrix
    K: Matrix
    eigenvalues: tuple[float, ...]
    dominant: float
    dimension: int


def ngm(model: ModelKind, p: Params) -> NgmResult:
    """Build T and Sigma, form K = -T * Sigma^{-1}, and take its spectrum.

    The inverse and the characteristic polynomial are evaluated in exact
    rational arithmetic, so the rank-one structure of K survives: the
    non-dominant eigenvalues are exact zeros and the dominant one is the
    exactly computed trace (correctly rounded to float).

    Raises SingularMatrixError if Sigma cannot be inverted (impossible for
    validated parameters, where kappa > 0; checked defensively).
    """
    T, Sigma = _build_matrices(model, p)
    t_exact = _exact(T)
    sigma_inv = _exact_inverse(_exact(Sigma))

    n = len(T)
    k_exact = tuple(
        tuple(
            -sum(t_exact[i][m] * sigma_inv[m][j] for m in range(n))
            for j in range(n)
        )
        for i in range(n)
    )

    tr, e2, det = _char_poly_coeffs(k_exact)
    # T's rows are constant vectors, so K = -T Sigma^{-1} is an outer
    # product: in exact arithmetic every 2x2 minor vanishes and the
    # characteristic polynomial is lambda^(n-1) * (lambda - trace).
    low_order = (e2, det) if n == 3 else (e2,)
    if any(c != 0 for c in low_order):  # pragma: no cover - structurally impossible
        raise SingularMatrixError(
            "next-generation matrix unexpectedly has rank above one"
        )
    dominant = float(tr)
    eigenvalues = (0.0,) * (n - 1) + (dominant,)

    k_float: Matrix = tuple(tuple(float(x) for x in row) for row in k_exact)
    return NgmResult(
        T=T,
        Sigma=Sigma,
        K=k_float,
        eigenvalues=eigenvalues,
        dominant=dominant,
        dimension=n,
    )


class StabilityVerdict(enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"


@dataclass(frozen=True)
class StabilityReport:
    """Stability of the disease-free equilibrium."""

    r0: float
    verdict: StabilityVerdict
    dfe: State
    b_rho: float


def stability(model: ModelKind, p: Params) -> StabilityReport:
    """Classify the DFE: STABLE iff r0 < 1, UNSTABLE iff r0 > 1.

    Within MARGINAL_TOL of r0 = 1 the verdict is MARGINAL; the threshold
    case is genuinely ambiguous between the strict and non-strict forms of
    the stability statements, so it is reported, not arbitrated.
    """
    value = r0(p.beta1, p.beta2, p.rho, p.kappa)
    if abs(value - 1.0) <= MARGINAL_TOL:
        verdict = StabilityVerdict.MARGINAL
    elif value < 1.0:
        verdict = StabilityVerdict.STABLE
    else:
        verdict = StabilityVerdict.UNSTABLE
    return StabilityReport(
        r0=value,
        verdict=verdict,
        dfe=dfe_of(model, p),
        b_rho=b_rho(p.beta1, p.beta2, p.rho),
    )
