r"""Truncated Fock-space oracle.

Brute-force construction of one-mode coherent, squeezed, squeezed-coherent and
thermal states in the number basis ``|0>, ..., |N-1>``, products of them, and the
multivariate trace ``tr(rho_1 ... rho_n)`` by explicit matrix products.  Nothing here
uses covariance matrices, so it serves as an independent check of
:mod:`gaussbargmann.invariant`.

The squeezing operator is ``S(zeta) = exp[(zeta* a^2 - zeta a^{dagger 2}) / 2]``.  The
covariance produced by :func:`gaussbargmann.gaussian.make_squeezed_coherent` for
``zeta`` belongs to ``D(alpha) S(-zeta)|0>``; :func:`fock_state_for_spec` applies that
sign so both sides describe the same physical state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln
from scipy.stats import poisson

from .gaussian import DomainError, ShapeError
from . import statespec as ss

__all__ = [
    "FockState",
    "coherent_vector",
    "squeezed_vector",
    "displacement_matrix",
    "squeezed_coherent_vector",
    "thermal_density",
    "tensor_density",
    "multivariate_trace_fock",
    "coherent_overlap",
    "squeezed_overlap",
    "fock_state_for_spec",
    "oracle_invariant",
    "DEFAULT_TRUNCATION",
    "MAX_TRUNCATION",
]

DEFAULT_TRUNCATION = 60
MAX_TRUNCATION = 512
MAX_PRODUCT_DIM = 4096


@dataclass(frozen=True)
class FockState:
    """A truncated state: a vector (pure) or a density matrix, plus the lost weight."""

    data: np.ndarray
    tail_mass: float

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def is_vector(self) -> bool:
        return self.data.ndim == 1

    def density(self) -> np.ndarray:
        if self.is_vector:
            return np.outer(self.data, self.data.conj())
        return self.data

    def trace(self) -> float:
        if self.is_vector:
            return float(np.vdot(self.data, self.data).real)
        return float(np.trace(self.data).real)


def _check_dim(N):
    if int(N) != N or N < 1:
        raise DomainError(f"truncation must be a positive integer, got {N!r}")
    return int(N)


def coherent_vector(alpha: complex, N: int = DEFAULT_TRUNCATION) -> FockState:
    """``e^{-|alpha|^2/2} sum_l alpha^l / sqrt(l!) |l>`` for ``l < N``."""
    N = _check_dim(N)
    alpha = complex(alpha)
    l = np.arange(N)
    if alpha == 0:
        v = np.zeros(N, dtype=complex)
        v[0] = 1.0
        return FockState(v, 0.0)
    mag = np.exp(l * math.log(abs(alpha)) - 0.5 * gammaln(l + 1) - 0.5 * abs(alpha) ** 2)
    v = mag * np.exp(1j * l * np.angle(alpha))
    return FockState(v, float(poisson.sf(N - 1, abs(alpha) ** 2)))


def squeezed_vector(zeta: complex, N: int = DEFAULT_TRUNCATION) -> FockState:
    r"""``S(zeta)|0> = cosh(|zeta|)^{-1/2} sum_l (-e^{i phi} tanh|zeta|)^l sqrt((2l)!)/(2^l l!) |2l>``."""
    N = _check_dim(N)
    zeta = complex(zeta)
    r, phi = abs(zeta), np.angle(zeta)
    v = np.zeros(N, dtype=complex)
    l = np.arange((N + 1) // 2)
    if r == 0:
        v[0] = 1.0
        return FockState(v, 0.0)
    t = math.tanh(r)
    log_mag = l * math.log(t) + 0.5 * gammaln(2 * l + 1) - l * math.log(2) - gammaln(l + 1)
    log_mag -= 0.5 * math.log(math.cosh(r))
    v[0::2] = np.exp(log_mag) * np.exp(1j * l * (phi + math.pi))
    tail = max(0.0, 1.0 - math.fsum(np.exp(2 * log_mag)))
    return FockState(v, tail)


def _ladder(N):
    return np.diag(np.sqrt(np.arange(1, N, dtype=float)), 1)


def _pad(alpha):
    return int(math.ceil(8 * abs(alpha))) + 8


def displacement_matrix(alpha: complex, N: int = DEFAULT_TRUNCATION) -> np.ndarray:
    r"""``D(alpha) = exp(alpha a^\dagger - alpha^* a)`` restricted to ``N`` levels.

    Exponentiated at ``N + pad`` levels (``pad = ceil(8|alpha|) + 8``) and then cut, so
    the kept block is not polluted by the truncation edge.
    """
    N = _check_dim(N)
    alpha = complex(alpha)
    if alpha == 0:
        return np.eye(N, dtype=complex)
    K = N + _pad(alpha)
    a = _ladder(K)
    D = expm(alpha * a.T - np.conj(alpha) * a)
    return D[:N, :N]


def squeezed_coherent_vector(zeta: complex, alpha: complex, N: int = DEFAULT_TRUNCATION) -> FockState:
    """``D(alpha) S(zeta)|0>`` truncated to ``N`` levels."""
    N = _check_dim(N)
    if complex(alpha) == 0:
        return squeezed_vector(zeta, N)
    K = N + _pad(alpha)
    sq = squeezed_vector(zeta, K)
    v = (displacement_matrix(alpha, K) @ sq.data)[:N]
    return FockState(v, max(0.0, 1.0 - float(np.vdot(v, v).real)))


def thermal_density(nbar: float, N: int = DEFAULT_TRUNCATION) -> FockState:
    """Diagonal ``nbar^l / (nbar+1)^{l+1}``; the lost weight is ``(nbar/(nbar+1))^N``."""
    N = _check_dim(N)
    if not nbar >= 0:
        raise DomainError(f"nbar must be non-negative, got {nbar}")
    if nbar == 0:
        p = np.zeros(N)
        p[0] = 1.0
        return FockState(np.diag(p).astype(complex), 0.0)
    q = nbar / (nbar + 1)
    l = np.arange(N)
    p = (1 - q) * q**l
    return FockState(np.diag(p).astype(complex), float(q**N))


def tensor_density(*parts: FockState) -> FockState:
    """Kronecker product of one-mode states (total dimension at most 4096)."""
    dim = math.prod(p.dim for p in parts)
    if dim > MAX_PRODUCT_DIM:
        raise ShapeError(f"product dimension {dim} exceeds {MAX_PRODUCT_DIM}")
    rho = np.ones((1, 1), dtype=complex)
    kept = 1.0
    for p in parts:
        rho = np.kron(rho, p.density())
        kept *= 1.0 - p.tail_mass
    return FockState(rho, 1.0 - kept)


def _as_matrix(x) -> np.ndarray:
    if isinstance(x, FockState):
        return x.density()
    x = np.asarray(x)
    return np.outer(x, x.conj()) if x.ndim == 1 else x


def multivariate_trace_fock(mats: Sequence) -> complex:
    """``tr(rho_1 rho_2 ... rho_n)`` by sequential matrix products."""
    if not mats:
        raise DomainError("need at least one state")
    ms = [_as_matrix(x) for x in mats]
    N = ms[0].shape[0]
    if any(x.shape != (N, N) for x in ms):
        raise ShapeError(f"dimension mismatch: {[x.shape for x in ms]}")
    prod = ms[0]
    for x in ms[1:-1]:
        prod = prod @ x
    if len(ms) == 1:
        return complex(np.trace(prod))
    return complex(np.sum(prod * ms[-1].T))


def coherent_overlap(a1: complex, a2: complex) -> complex:
    """``<a1|a2> = exp(a1* a2 - (|a1|^2 + |a2|^2) / 2)``."""
    a1, a2 = complex(a1), complex(a2)
    return complex(np.exp(np.conj(a1) * a2 - 0.5 * (abs(a1) ** 2 + abs(a2) ** 2)))


def squeezed_overlap(z1: complex, z2: complex) -> complex:
    """``<z1|z2> = (cosh r1 cosh r2 - e^{i(phi2 - phi1)} sinh r1 sinh r2)^{-1/2}``.

    The radicand always has positive real part; the root with positive real part is
    taken.
    """
    z1, z2 = complex(z1), complex(z2)
    r1, r2 = abs(z1), abs(z2)
    w = math.cosh(r1) * math.cosh(r2) - np.exp(1j * (np.angle(z2) - np.angle(z1))) * math.sinh(r1) * math.sinh(r2)
    if w == 0:
        raise ZeroDivisionError("degenerate squeezed overlap")
    return complex(1.0 / np.sqrt(w))


def fock_state_for_spec(spec, N: int = DEFAULT_TRUNCATION) -> FockState:
    """Fock representation of the same state that ``spec.build()`` describes."""
    if isinstance(spec, ss.Vacuum):
        return coherent_vector(0, N)
    if isinstance(spec, ss.Coherent):
        return coherent_vector(spec.alpha, N)
    if isinstance(spec, ss.Squeezed):
        return squeezed_vector(-spec.zeta, N)
    if isinstance(spec, ss.SqueezedCoherent):
        return squeezed_coherent_vector(-spec.zeta, spec.alpha, N)
    if isinstance(spec, ss.Thermal):
        return thermal_density(spec.nbar, N)
    if isinstance(spec, ss.Tensor):
        return tensor_density(*(fock_state_for_spec(p, N) for p in spec.parts))
    raise TypeError(f"no Fock representation for {type(spec).__name__}")


def oracle_supported(spec) -> bool:
    if isinstance(spec, ss.Tensor):
        return all(oracle_supported(p) and not isinstance(p, ss.Tensor) for p in spec.parts)
    return isinstance(spec, (ss.Vacuum, ss.Coherent, ss.Squeezed, ss.SqueezedCoherent, ss.Thermal))


def _mode_count(spec) -> int:
    if isinstance(spec, ss.Tensor):
        return sum(_mode_count(p) for p in spec.parts)
    return 1


def oracle_invariant(
    specs: Sequence,
    N: int = DEFAULT_TRUNCATION,
    *,
    tail_tol: float = 1e-10,
    max_N: int = MAX_TRUNCATION,
) -> tuple[complex, int, float]:
    """Multivariate trace of state descriptions by brute force.

    The truncation starts at ``N`` and doubles until every state's lost weight is below
    ``tail_tol`` (or ``max_N`` is reached).  Returns ``(value, N_used, max tail)``.
    """
    N = _check_dim(N)
    modes = max(_mode_count(s) for s in specs)
    max_N = min(max_N, int(round(MAX_PRODUCT_DIM ** (1.0 / modes) + 1e-9)))
    N = min(N, max_N)
    while True:
        states = [fock_state_for_spec(s, N) for s in specs]
        tail = max(s.tail_mass for s in states)
        if tail < tail_tol or N >= max_N:
            return multivariate_trace_fock(states), N, tail
        N = min(2 * N, max_N)
