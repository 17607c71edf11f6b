r"""Bargmann invariants ``tr(rho_1 rho_2 ... rho_n)`` of Gaussian states.

For ``n >= 2`` ordered ``m``-mode states with means ``x_j`` and covariances ``V_j``::

    tr(rho_1 ... rho_n) = 2^{m(n-1)} exp(-Lambda^T M^{-1} Lambda / 2) / sqrt(det M)

with the ``(n-1) x (n-1)`` block matrix ``M`` whose diagonal blocks are ``V_n + V_j``,
whose blocks above the diagonal are ``V_n + i Omega`` and below ``V_n - i Omega``, and
``Lambda`` the stacked differences ``x_j - x_n``.

Square-root branch
------------------
``M`` is complex symmetric with a positive-definite real part ``A``.  Writing
``M = A + iB`` and ``mu_k`` for the eigenvalues of the pencil ``(B, A)``::

    sqrt(det M) = sqrt(det A) * prod_k sqrt(1 + i mu_k)

is the branch obtained by continuously deforming ``B`` to zero, which is the branch
the Gaussian integral produces.  Taking ``arg det M`` in ``[0, 2 pi)`` and halving it
(:func:`sqrt_branch`) agrees with this only when the continuous argument lies in
``(-pi, pi]`` modulo ``4 pi``; otherwise the sign flips.  :func:`bargmann_invariant`
uses the continuous branch and records in its result whether the ``[0, 2 pi)`` rule
would have disagreed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate
from scipy.linalg import eigh, lu_factor, lu_solve

from .gaussian import (
    DomainError,
    GaussianState,
    ShapeError,
    symplectic_eigenvalues,
    symplectic_form,
)

__all__ = [
    "IllConditionedError",
    "SingularValueError",
    "InvariantResult",
    "assemble_M",
    "assemble_Lambda",
    "sqrt_branch",
    "lu_logdet",
    "continuous_half_arg",
    "sqrt_det",
    "bargmann_invariant",
    "overlap",
    "trace_power_det",
    "trace_power_symplectic",
    "det_Nk_identity_check",
    "pure_block_inverse",
    "gaussian_integral_closed_form",
    "lemma1_quadrature_check",
]

TWO_PI = 2.0 * math.pi
COND_LIMIT = 1e14


class SingularValueError(ZeroDivisionError):
    """The square root or inverse of zero was requested."""


class IllConditionedError(ArithmeticError):
    """``M`` is numerically singular; ``diagnostics`` holds what was computed."""

    def __init__(self, message, diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class InvariantResult:
    value: complex
    det_M: complex
    arg_det_M: float
    log_magnitude: float
    condition_estimate: float
    branch_note: str
    n: int
    m: int
    continuous_arg_det_M: float = 0.0
    branch_flipped: bool = False
    branch_suspect: bool = False

    def as_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "det_M": [self.det_M.real, self.det_M.imag],
            "arg_det_M": self.arg_det_M,
            "continuous_arg_det_M": self.continuous_arg_det_M,
            "log_magnitude": self.log_magnitude,
            "condition_estimate": self.condition_estimate,
            "branch_note": self.branch_note,
            "branch_flipped": self.branch_flipped,
            "branch_suspect": self.branch_suspect,
            "n": self.n,
            "m": self.m,
        }


def _check_states(states: Sequence[GaussianState]) -> tuple[int, int]:
    n = len(states)
    if n < 2:
        raise DomainError(f"need at least two states, got {n}")
    m = states[0].modes
    if any(s.modes != m for s in states):
        raise ShapeError(f"states have different mode counts: {[s.modes for s in states]}")
    return n, m


def assemble_M(states: Sequence[GaussianState]) -> np.ndarray:
    """The complex symmetric ``2m(n-1)`` square block matrix ``M``."""
    n, m = _check_states(states)
    d = 2 * m
    om = 1j * symplectic_form(m)
    vn = states[-1].cov
    upper, lower = vn + om, vn - om
    M = np.empty(((n - 1) * d, (n - 1) * d), dtype=complex)
    for j in range(n - 1):
        rj = slice(j * d, (j + 1) * d)
        for k in range(n - 1):
            rk = slice(k * d, (k + 1) * d)
            if j == k:
                M[rj, rk] = vn + states[j].cov
            else:
                M[rj, rk] = upper if j < k else lower
    return M


def assemble_Lambda(states: Sequence[GaussianState]) -> np.ndarray:
    _check_states(states)
    xn = states[-1].mean
    return np.concatenate([s.mean - xn for s in states[:-1]]).astype(complex)


def sqrt_branch(z: complex) -> complex:
    """``sqrt(r) e^{i theta/2}`` with ``z = r e^{i theta}``, ``theta`` in ``[0, 2 pi)``."""
    z = complex(z)
    if z == 0:
        raise SingularValueError("square root branch undefined at 0")
    theta = math.atan2(z.imag, z.real) % TWO_PI
    return math.sqrt(abs(z)) * complex(math.cos(theta / 2), math.sin(theta / 2))


def lu_logdet(M: np.ndarray, lu_piv=None) -> tuple[float, float]:
    """``(log|det M|, arg det M)`` from a pivoted LU factorisation, arg in ``[0, 2 pi)``.

    The phase is summed pivot by pivot and wrapped once at the end.
    """
    lu, piv = lu_piv if lu_piv is not None else lu_factor(M)
    d = np.diag(lu)
    if np.any(d == 0):
        return -math.inf, 0.0
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    phase = float(np.sum(np.angle(d))) + math.pi * (swaps % 2)
    return float(np.sum(np.log(np.abs(d)))), phase % TWO_PI


def continuous_half_arg(M: np.ndarray) -> float:
    """Half the argument of ``det M`` followed continuously from ``Im M = 0``.

    Requires ``M`` complex symmetric with positive-definite real part.
    """
    A = 0.5 * (M.real + M.real.T)
    B = 0.5 * (M.imag + M.imag.T)
    try:
        mu = eigh(B, A, eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise DomainError("real part of the matrix is not positive definite") from exc
    return 0.5 * float(np.sum(np.arctan(mu)))


def sqrt_det(Q: np.ndarray) -> complex:
    """Continuous-branch ``sqrt(det Q)`` for complex symmetric ``Q`` with ``Re Q > 0``."""
    Q = np.asarray(Q, dtype=complex)
    log_abs, _ = lu_logdet(Q)
    half = continuous_half_arg(Q)
    return complex(np.exp(0.5 * log_abs + 1j * half))


def _wrap(x: float) -> float:
    """Map an angle into ``(-pi, pi]``."""
    y = math.remainder(x, TWO_PI)
    return math.pi if y == -math.pi else y


def bargmann_invariant(
    states: Sequence[GaussianState],
    *,
    cond_limit: float = COND_LIMIT,
    reference: complex | None = None,
) -> InvariantResult:
    """Compute ``tr(rho_1 ... rho_n)`` from means and covariances.

    ``reference`` is an independently computed value (e.g. from a Fock-space oracle);
    when given, ``branch_suspect`` is set if its argument differs from the result's by
    more than ``1e-4`` rad.
    """
    n, m = _check_states(states)
    M = assemble_M(states)
    lam = assemble_Lambda(states)
    lu_piv = lu_factor(M, check_finite=True)
    log_abs, arg_det = lu_logdet(M, lu_piv)
    cond = float(np.linalg.cond(M))
    det_M = complex(np.exp(log_abs + 1j * arg_det)) if math.isfinite(log_abs) else 0j
    if not math.isfinite(cond) or cond > cond_limit:
        raise IllConditionedError(
            f"block matrix is ill-conditioned (condition estimate {cond:.3g})",
            {
                "det_M": [det_M.real, det_M.imag],
                "log_abs_det_M": log_abs,
                "arg_det_M": arg_det,
                "condition_estimate": cond,
                "n": n,
                "m": m,
            },
        )
    x = lu_solve(lu_piv, lam)
    x = x + lu_solve(lu_piv, lam - M @ x)  # one step of iterative refinement
    quad = complex(lam @ x)

    half = continuous_half_arg(M)
    if abs(_wrap(2 * half - arg_det)) > 1e-6 * max(1.0, abs(half)):
        raise ArithmeticError("LU and eigenvalue phases of det M disagree")
    flipped = abs(_wrap(half - 0.5 * arg_det)) > 0.5 * math.pi
    log_value = m * (n - 1) * math.log(2.0) - 0.5 * quad - 0.5 * log_abs - 1j * half
    value = complex(np.exp(log_value))
    suspect = False
    if reference is not None and reference != 0 and value != 0:
        suspect = abs(_wrap(np.angle(reference) - np.angle(value))) > 1e-4
    return InvariantResult(
        value=value,
        det_M=det_M,
        arg_det_M=arg_det,
        log_magnitude=float(log_value.real),
        condition_estimate=cond,
        branch_note="continuity" if flipped else "principal_0_2pi",
        n=n,
        m=m,
        continuous_arg_det_M=2 * half,
        branch_flipped=flipped,
        branch_suspect=suspect,
    )


def overlap(a: GaussianState, b: GaussianState) -> float:
    """``tr(rho_a rho_b)`` for two Gaussian states; a real number in ``(0, 1]``."""
    if a.modes != b.modes:
        raise ShapeError("states have different mode counts")
    W = a.cov + b.cov
    delta = a.mean - b.mean
    c = np.linalg.cholesky(W)
    y = np.linalg.solve(c, delta)
    log_det = 2.0 * np.sum(np.log(np.diag(c)))
    return float(np.exp(a.modes * math.log(2.0) - 0.5 * y @ y - 0.5 * log_det))


def trace_power_det(s: GaussianState, n: int, *, imag_tol: float = 1e-9) -> InvariantResult:
    """``tr(rho^n)`` through the block determinant with all states equal."""
    res = bargmann_invariant([s] * int(n))
    v = res.value
    if abs(v.imag) > imag_tol * abs(v):
        raise ArithmeticError(f"tr(rho^n) came out complex: {v}")
    return InvariantResult(
        value=complex(v.real, 0.0),
        det_M=res.det_M,
        arg_det_M=res.arg_det_M,
        log_magnitude=res.log_magnitude,
        condition_estimate=res.condition_estimate,
        branch_note=res.branch_note,
        n=res.n,
        m=res.m,
        continuous_arg_det_M=res.continuous_arg_det_M,
        branch_flipped=res.branch_flipped,
    )


def trace_power_symplectic(s: GaussianState, n: int) -> float:
    """``tr(rho^n) = prod_k 2^n / ((nu_k + 1)^n - (nu_k - 1)^n)`` (thermal decomposition)."""
    if n < 2:
        raise DomainError("n must be at least 2")
    nu = symplectic_eigenvalues(s.cov)
    # log-space: 2^n / ((nu+1)^n - (nu-1)^n) = 1 / ((nu+1)/2)^n / (1 - ((nu-1)/(nu+1))^n)
    logs = -n * np.log((nu + 1) / 2) - np.log1p(-(((nu - 1) / (nu + 1)) ** n))
    return float(np.exp(np.sum(logs)))


def det_Nk_identity_check(nu: float, n: int) -> tuple[float, float, float]:
    """Compare ``det N`` with ``((nu+1)^n - (nu-1)^n) / 2``.

    ``N`` is ``(n-1) x (n-1)`` with ``2 nu`` on the diagonal, ``nu - 1`` above and
    ``nu + 1`` below.  Returns ``(lhs, rhs, relative defect)``.
    """
    if nu < 1:
        raise DomainError("nu must be >= 1")
    if n < 2:
        raise DomainError("n must be >= 2")
    k = n - 1
    N = np.triu(np.full((k, k), nu - 1.0), 1) + np.tril(np.full((k, k), nu + 1.0), -1)
    N += np.diag(np.full(k, 2.0 * nu))
    lhs = float(np.linalg.det(N))
    rhs = ((nu + 1) ** n - (nu - 1) ** n) / 2
    return lhs, rhs, abs(lhs - rhs) / abs(rhs)


def pure_block_inverse(V: np.ndarray, n: int) -> np.ndarray:
    """Closed-form inverse of ``M`` for ``n`` copies of one pure covariance ``V``.

    Block tridiagonal, scaled by 1/4: ``2 V^{-1}`` on the diagonal,
    ``-(V^{-1} + i Omega)`` above and ``-(V^{-1} - i Omega)`` below.
    """
    V = np.asarray(V, dtype=float)
    d = V.shape[0]
    om = 1j * symplectic_form(d // 2)
    vi = np.linalg.inv(V)
    k = n - 1
    out = np.zeros((k * d, k * d), dtype=complex)
    for j in range(k):
        out[j * d : (j + 1) * d, j * d : (j + 1) * d] = 2 * vi
        if j + 1 < k:
            out[j * d : (j + 1) * d, (j + 1) * d : (j + 2) * d] = -(vi + om)
            out[(j + 1) * d : (j + 2) * d, j * d : (j + 1) * d] = -(vi - om)
    return out / 4


def _check_integral_inputs(Q, L):
    Q = np.atleast_2d(np.asarray(Q, dtype=complex))
    L = np.atleast_1d(np.asarray(L, dtype=complex))
    d = Q.shape[0]
    if Q.shape != (d, d) or L.shape != (d,):
        raise ShapeError("Q must be d x d and L of length d")
    if np.max(np.abs(Q - Q.T)) > 1e-12 * (1 + np.max(np.abs(Q))):
        raise ShapeError("Q must be complex symmetric")
    A = Q.real
    if np.linalg.eigvalsh(0.5 * (A + A.T))[0] <= 0:
        raise DomainError("Re Q is not positive definite")
    return Q, L, d


def gaussian_integral_closed_form(Q, L) -> complex:
    """``sqrt((2 pi)^d / det Q) exp(L^T Q^{-1} L / 2)`` with the continuous branch."""
    Q, L, d = _check_integral_inputs(Q, L)
    return complex((2 * math.pi) ** (d / 2) / sqrt_det(Q) * np.exp(0.5 * L @ np.linalg.solve(Q, L)))


def lemma1_quadrature_check(Q, L, *, epsabs: float = 1e-11, epsrel: float = 1e-10):
    """Integrate ``exp(-x^T Q x / 2 + L^T x)`` over ``R^d`` and compare with the closed form.

    Adaptive quadrature on a box centred at the peak of the modulus, wide enough that
    the neglected mass is below ``e^-40`` of the peak.  Returns
    ``(numeric, closed_form, relative defect)``.
    """
    Q, L, d = _check_integral_inputs(Q, L)
    if d > 3:
        raise DomainError("quadrature check supports d <= 3")
    A = 0.5 * (Q.real + Q.real.T)
    lam_min = np.linalg.eigvalsh(A)[0]
    centre = np.linalg.solve(A, L.real)
    half = math.sqrt(2 * 40.0 / lam_min)
    ranges = [(c - half, c + half) for c in centre]
    peak = 0.5 * centre @ A @ centre  # log of the modulus at the centre, up to const

    def f(*x):
        x = np.array(x)
        return np.exp(-0.5 * x @ Q @ x + L @ x - peak)

    opts = {"epsabs": epsabs, "epsrel": epsrel, "limit": 200}
    re, _ = integrate.nquad(lambda *x: f(*x).real, ranges, opts=opts)
    im, _ = integrate.nquad(lambda *x: f(*x).imag, ranges, opts=opts)
    numeric = complex(re, im) * math.exp(peak)
    closed = gaussian_integral_closed_form(Q, L)
    return numeric, closed, abs(numeric - closed) / abs(closed)
