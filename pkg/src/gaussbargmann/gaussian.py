r"""Gaussian states described by a mean vector and a covariance matrix.

Conventions
-----------
Quadratures are ordered ``(q_1, p_1, ..., q_m, p_m)`` with ``q = a + a^\dagger`` and
``p = -i (a - a^\dagger)``.  With this scaling the vacuum has covariance ``V = I``
(not ``I/2`` as in several other libraries) and a coherent state ``|alpha>`` has mean
``2 (Re alpha, Im alpha)``.  The symplectic form is ``Omega = diag(omega, ..., omega)``
with ``omega = [[0, 1], [-1, 0]]`` and physical covariances satisfy ``V + i Omega >= 0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

__all__ = [
    "DomainError",
    "PhysicalityError",
    "ShapeError",
    "GaussianState",
    "ValidationReport",
    "symplectic_form",
    "make_squeezed_coherent",
    "make_coherent",
    "make_squeezed",
    "make_vacuum",
    "make_thermal",
    "tensor",
    "conjugate",
    "validate_state",
    "default_tolerance",
    "symplectic_eigenvalues",
    "is_pure",
    "characteristic_function",
    "random_symplectic",
    "random_state",
]


class ShapeError(ValueError):
    """Array shapes are inconsistent with the number of modes."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PhysicalityError(ValueError):
    """A covariance matrix violates the uncertainty principle."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


_OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(m: int) -> np.ndarray:
    """Return the ``2m x 2m`` symplectic form ``Omega``."""
    if int(m) != m or m < 1:
        raise DomainError(f"number of modes must be a positive integer, got {m!r}")
    return np.kron(np.eye(int(m)), _OMEGA_1)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GaussianState:
    """An ``m``-mode Gaussian state ``rho(mean, cov)``.

    Construction only checks shapes and symmetry; use :func:`validate_state` for
    the uncertainty principle.  The arrays are stored read-only.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = _readonly(self.mean).reshape(-1)
        cov = _readonly(self.cov)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
            raise ShapeError(f"covariance must be square, got shape {cov.shape}")
        if cov.shape[0] == 0 or cov.shape[0] % 2:
            raise ShapeError(f"covariance dimension must be even and positive, got {cov.shape[0]}")
        if mean.shape != (cov.shape[0],):
            raise ShapeError(f"mean has length {mean.size}, expected {cov.shape[0]}")
        if not (np.all(np.isfinite(cov)) and np.all(np.isfinite(mean))):
            raise DomainError("mean and covariance must be finite")
        scale = 1.0 + np.max(np.abs(cov))
        if np.max(np.abs(cov - cov.T)) > 1e-12 * scale:
            raise ShapeError("covariance matrix is not symmetric")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def modes(self) -> int:
        return self.cov.shape[0] // 2

    def __eq__(self, other):
        if not isinstance(other, GaussianState):
            return NotImplemented
        return np.array_equal(self.mean, other.mean) and np.array_equal(self.cov, other.cov)

    def __hash__(self):
        return hash((self.mean.tobytes(), self.cov.tobytes()))

    def allclose(self, other: "GaussianState", atol: float = 1e-12) -> bool:
        return (
            self.modes == other.modes
            and np.allclose(self.mean, other.mean, rtol=0, atol=atol)
            and np.allclose(self.cov, other.cov, rtol=0, atol=atol)
        )


def make_squeezed_coherent(zeta: complex, alpha: complex) -> GaussianState:
    r"""One-mode squeezed coherent state ``|zeta, alpha>``.

    Mean ``2 (Re alpha, Im alpha)``; with ``zeta = |zeta| e^{i phi}`` the covariance is::

        V11 = cosh 2|zeta| + cos(phi) sinh 2|zeta|
        V12 = sin(phi) sinh 2|zeta|
        V22 = cosh 2|zeta| - cos(phi) sinh 2|zeta|

    Note that this covariance belongs to ``D(alpha) S(-zeta)|0>`` when the squeezing
    operator is ``S(zeta) = exp[(zeta* a^2 - zeta a^{dagger 2}) / 2]``; see
    :func:`gaussbargmann.fock.fock_state_for_spec`.
    """
    zeta = complex(zeta)
    alpha = complex(alpha)
    r = abs(zeta)
    phi = np.angle(zeta)
    ch, sh = np.cosh(2 * r), np.sinh(2 * r)
    cov = np.array(
        [
            [ch + np.cos(phi) * sh, np.sin(phi) * sh],
            [np.sin(phi) * sh, ch - np.cos(phi) * sh],
        ]
    )
    return GaussianState(2.0 * np.array([alpha.real, alpha.imag]), cov)


def make_coherent(alpha: complex) -> GaussianState:
    return make_squeezed_coherent(0.0, alpha)


def make_squeezed(zeta: complex) -> GaussianState:
    return make_squeezed_coherent(zeta, 0.0)


def make_vacuum(m: int = 1) -> GaussianState:
    symplectic_form(m)  # argument check
    return GaussianState(np.zeros(2 * m), np.eye(2 * m))


def make_thermal(nbar: float) -> GaussianState:
    """One-mode thermal state with mean occupation ``nbar`` (``V = (2 nbar + 1) I``)."""
    nbar = float(nbar)
    if not nbar >= 0:
        raise DomainError(f"nbar must be non-negative, got {nbar}")
    return GaussianState(np.zeros(2), (2 * nbar + 1) * np.eye(2))


def tensor(*states: GaussianState) -> GaussianState:
    """Tensor product: means concatenate, covariances form a block diagonal."""
    if not states:
        raise DomainError("tensor needs at least one state")
    mean = np.concatenate([s.mean for s in states])
    dim = mean.size
    cov = np.zeros((dim, dim))
    i = 0
    for s in states:
        k = s.cov.shape[0]
        cov[i : i + k, i : i + k] = s.cov
        i += k
    return GaussianState(mean, cov)


def conjugate(s: GaussianState) -> GaussianState:
    """Complex conjugate of the state in the Fock basis (flips every ``p``)."""
    z = np.tile([1.0, -1.0], s.modes)
    return GaussianState(z * s.mean, s.cov * np.outer(z, z))


@dataclass(frozen=True)
class ValidationReport:
    symmetry_defect: float
    min_eig_uncertainty: float
    min_eig_cov: float
    tol: float
    passed: bool
    clamped: bool = False
    messages: tuple = field(default_factory=tuple)


def default_tolerance(cov: np.ndarray) -> float:
    return 1e-9 * (1.0 + float(np.max(np.abs(cov))))


def validate_state(s, tol: float | None = None) -> ValidationReport:
    """Check symmetry, ``V + i Omega >= 0`` and ``V > 0``.

    ``s`` may be a :class:`GaussianState` or a bare covariance matrix.  States that
    violate the uncertainty bound by less than ``10 * tol`` pass with ``clamped=True``
    (pure states sit exactly on the boundary, so round-off can push them just outside).
    """
    cov = np.asarray(s.cov if isinstance(s, GaussianState) else s, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 or cov.size == 0:
        raise ShapeError(f"covariance must be square with even dimension, got {cov.shape}")
    if tol is None:
        tol = default_tolerance(cov)
    m = cov.shape[0] // 2
    sym = float(np.max(np.abs(cov - cov.T)))
    vs = 0.5 * (cov + cov.T)
    min_unc = float(np.linalg.eigvalsh(vs + 1j * symplectic_form(m))[0])
    min_cov = float(np.linalg.eigvalsh(vs)[0])
    messages = []
    sym_ok = sym <= 1e-12 * (1.0 + np.max(np.abs(cov)))
    if not sym_ok:
        messages.append(f"covariance not symmetric (defect {sym:.3g})")
    if min_cov <= 0:
        messages.append(f"covariance not positive definite (min eigenvalue {min_cov:.3g})")
    clamped = False
    if min_unc < -tol:
        if min_unc >= -10 * tol:
            clamped = True
            messages.append(f"uncertainty bound grazed (min eigenvalue {min_unc:.3g}); accepted")
        else:
            messages.append(f"uncertainty principle violated (min eigenvalue {min_unc:.3g})")
    passed = sym_ok and min_cov > 0 and min_unc >= -10 * tol
    return ValidationReport(sym, min_unc, min_cov, tol, passed, clamped, tuple(messages))


def require_physical(s: GaussianState, tol: float | None = None) -> GaussianState:
    report = validate_state(s, tol)
    if not report.passed:
        raise PhysicalityError("; ".join(report.messages), report)
    if report.clamped:
        warnings.warn(report.messages[-1], RuntimeWarning, stacklevel=2)
    return s


def symplectic_eigenvalues(V) -> np.ndarray:
    """Sorted symplectic eigenvalues of a positive-definite ``2m x 2m`` matrix.

    The spectrum of ``i Omega V`` is ``{+nu_k, -nu_k}``; it is computed from the
    Hermitian similar matrix ``V^{1/2} (i Omega) V^{1/2}`` and the absolute values are
    paired off.
    """
    V = np.asarray(V.cov if isinstance(V, GaussianState) else V, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2 or V.size == 0:
        raise ShapeError(f"expected a 2m x 2m matrix, got {V.shape}")
    V = 0.5 * (V + V.T)
    w, U = np.linalg.eigh(V)
    if w[0] <= 0:
        raise DomainError("matrix is not positive definite")
    m = V.shape[0] // 2
    root = (U * np.sqrt(w)) @ U.T
    spec = np.sort(np.abs(np.linalg.eigvalsh(root @ (1j * symplectic_form(m)) @ root)))
    lo, hi = spec[0::2], spec[1::2]
    if np.any(np.abs(hi - lo) > 1e-8 * (1.0 + hi)):
        raise ArithmeticError("spectrum of i*Omega*V did not pair up")
    return 0.5 * (lo + hi)


def is_pure(s: GaussianState) -> bool:
    return abs(np.linalg.det(s.cov) - 1.0) <= 1e-8 * 2.0 ** (2 * s.modes)


def characteristic_function(s: GaussianState, xi) -> complex:
    """``exp[-xi^T (Omega V Omega^T) xi / 2 - i (Omega mean)^T xi]``."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if xi.shape != s.mean.shape:
        raise ShapeError(f"xi has length {xi.size}, expected {s.mean.size}")
    om = symplectic_form(s.modes)
    quad = xi @ om @ s.cov @ om.T @ xi
    lin = (om @ s.mean) @ xi
    return complex(np.exp(-0.5 * quad - 1j * lin))


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_symplectic(m: int, seed=None, max_squeeze: float = 1.0) -> np.ndarray:
    """``S = expm(Omega H)`` for a random symmetric ``H`` with spectral norm ``max_squeeze``."""
    rng = _rng(seed)
    om = symplectic_form(m)
    if max_squeeze <= 0:
        return np.eye(2 * m)
    g = rng.normal(size=(2 * m, 2 * m))
    h = 0.5 * (g + g.T)
    h *= max_squeeze * rng.uniform() / np.linalg.norm(h, 2)
    return expm(om @ h)


def random_state(
    m: int,
    seed=None,
    max_squeeze: float = 1.0,
    max_nbar: float = 1.0,
    max_displacement: float = 0.0,
) -> GaussianState:
    """Random ``m``-mode state ``V = S diag(nu_k I_2) S^T``.

    ``nu_k`` is uniform on ``[1, 1 + 2 max_nbar]``; each mean component is uniform on
    ``[-2 max_displacement, 2 max_displacement]``.  A given seed always gives the same
    state.
    """
    if max_squeeze < 0 or max_nbar < 0 or max_displacement < 0:
        raise DomainError("bounds must be non-negative")
    rng = _rng(seed)
    nu = rng.uniform(1.0, 1.0 + 2.0 * max_nbar, size=m)
    S = random_symplectic(m, rng, max_squeeze)
    cov = S @ np.diag(np.repeat(nu, 2)) @ S.T
    cov = 0.5 * (cov + cov.T)
    mean = rng.uniform(-2.0 * max_displacement, 2.0 * max_displacement, size=2 * m)
    return GaussianState(mean, cov)
