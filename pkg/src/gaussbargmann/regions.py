"""Permissible-value regions of Bargmann invariants in the complex plane.

Curves, for ``n >= 3`` and polar coordinates ``z = r e^{i theta}``:

* ``Bn``: boundary of all permissible values in any dimension,
  ``r = cos^n(pi/n) sec^n((pi - theta)/n)``, ``theta`` in ``[0, 2 pi)``.
* ``En``: boundary of the values reached by rotated displaced squeezed states
  (example 1), ``r = exp(-|theta| tan(pi/n))``, ``theta`` in ``[-pi, pi]``.
* ``Fn``: values reached by rotated squeezed vacua (example 2),
  ``r = (cos((2 theta + pi)/n) sec(pi/n))^{n/2}``, ``theta`` in ``[0, (n-2) pi/4)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .gaussian import DomainError

__all__ = [
    "RegionCurve",
    "InequalityReport",
    "bn_boundary",
    "en_boundary",
    "en_spiral",
    "fn_curve",
    "fn_theta_max",
    "fn_theta_from_zeta",
    "example1_invariant",
    "example2_invariant",
    "example2_det_M",
    "membership_En",
    "check_inequalities",
    "sample_curves",
    "write_curve_csv",
    "CURVE_IDS",
    "CSV_HEADER",
]

CURVE_IDS = ("Bn_boundary", "En_boundary", "Fn", "unit_circle")
CSV_HEADER = ("curve", "n", "theta", "r", "re", "im")


def _n3(n):
    if int(n) != n or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
    return int(n)


def bn_radius(n, theta):
    return (math.cos(math.pi / n) / np.cos((math.pi - np.asarray(theta, dtype=float)) / n)) ** n


def bn_boundary(n: int, theta):
    """Boundary point of the full Bargmann region at angle ``theta`` in ``[0, 2 pi)``."""
    n = _n3(n)
    theta = np.asarray(theta, dtype=float)
    return bn_radius(n, theta) * np.exp(1j * theta)


def en_radius(n, theta):
    theta = np.asarray(theta, dtype=float)
    return np.exp(-np.abs(theta) * math.tan(math.pi / n))


def en_boundary(n: int, theta):
    """``e^{i theta} e^{-theta sgn(theta) tan(pi/n)}``, ``theta`` in ``[-pi, pi]``."""
    n = _n3(n)
    theta = np.asarray(theta, dtype=float)
    return en_radius(n, theta) * np.exp(1j * theta)


def en_spiral(n: int, theta, t=1.0):
    """Unreduced spiral family ``e^{i theta} e^{-t theta tan(pi/n)}``, ``theta >= 0``, ``t >= 1``."""
    n = _n3(n)
    theta = np.asarray(theta, dtype=float)
    return np.exp(1j * theta - np.asarray(t) * theta * math.tan(math.pi / n))


def fn_theta_max(n: int) -> float:
    return (_n3(n) - 2) * math.pi / 4


def fn_radius(n, theta):
    theta = np.asarray(theta, dtype=float)
    return (np.cos((2 * theta + math.pi) / n) / math.cos(math.pi / n)) ** (n / 2)


def fn_curve(n: int, theta):
    """Point of the squeezed-vacuum curve at ``theta`` in ``[0, (n-2) pi/4)``."""
    n = _n3(n)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta >= fn_theta_max(n)):
        raise DomainError(f"theta outside [0, {fn_theta_max(n)})")
    return fn_radius(n, theta) * np.exp(1j * theta)


def _w(n, zeta_abs):
    return math.cosh(zeta_abs) ** 2 - np.exp(2j * math.pi / n) * math.sinh(zeta_abs) ** 2


def fn_theta_from_zeta(n: int, zeta_abs: float) -> float:
    """Polar angle of the example-2 invariant as a function of ``|zeta|``.

    With ``s e^{i beta} = cosh^2|zeta| - e^{2 pi i/n} sinh^2|zeta|`` and
    ``beta`` in ``(pi/n - pi/2, 0]``, the angle is ``-n beta / 2``.
    """
    return -0.5 * n * float(np.angle(_w(n, zeta_abs)))


def example1_invariant(n: int, alpha_abs: float, zeta_abs: float) -> complex:
    """Invariant of ``|zeta, |alpha| e^{2 pi i j/n}>``, ``j = 1..n`` (independent of arg zeta)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    s = math.sin(math.pi / n)
    c = math.cos(math.pi / n)
    a2 = alpha_abs**2
    return complex(np.exp(-2 * n * a2 * (s * s * math.cosh(2 * zeta_abs) - 1j * s * c)))


def example2_invariant(n: int, zeta_abs: float) -> complex:
    """Invariant of squeezed vacua ``zeta_j = |zeta| e^{2 pi i j/n}``, ``j = 1..n``."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return complex(1.0 / np.sqrt(_w(n, zeta_abs)) ** n)


def example2_det_M(n: int, zeta_abs: float) -> complex:
    return complex(4.0 ** (n - 1) * _w(n, zeta_abs) ** n)


def membership_En(z: complex, n: int) -> bool:
    """Whether ``z`` lies in the example-1 region (``|z| <= e^{-|arg z| tan(pi/n)}``, ``z != 0``)."""
    n = _n3(n)
    z = complex(z)
    if z == 0:
        return False
    return abs(z) <= math.exp(-abs(math.atan2(z.imag, z.real)) * math.tan(math.pi / n)) * (1 + 1e-12)


@dataclass(frozen=True)
class InequalityReport:
    n: int
    resolution: int
    bn_en_max_violation: float
    en_fn_max_violation: float
    bn_en_min_slack_off_zero: float
    en_fn_min_slack_off_zero: float
    equality_at_zero: bool

    @property
    def passed(self) -> bool:
        return (
            self.bn_en_max_violation <= 1e-12
            and self.en_fn_max_violation <= 1e-12
            and self.bn_en_min_slack_off_zero > 0
            and self.en_fn_min_slack_off_zero > 0
            and self.equality_at_zero
        )


def check_inequalities(n: int, grid_resolution: int = 10_000) -> InequalityReport:
    """Check ``rE <= rB`` on ``[0, pi]`` and ``rF <= rE`` on ``[0, min((n-2)pi/4, pi))``.

    Violations are measured on the radii; strictness away from ``theta = 0`` is checked
    on the logarithms, which keep their relative precision near ``theta = 0``.
    """
    n = _n3(n)
    t = math.tan(math.pi / n)
    th1 = np.linspace(0.0, math.pi, grid_resolution)
    rb, re_ = bn_radius(n, th1), en_radius(n, th1)
    log_gap1 = (n * math.log(math.cos(math.pi / n)) - n * np.log(np.cos((math.pi - th1) / n))) + th1 * t

    hi = min(fn_theta_max(n), math.pi)
    th2 = np.linspace(0.0, hi, grid_resolution, endpoint=False)
    rf, re2 = fn_radius(n, th2), en_radius(n, th2)
    log_gap2 = -th2 * t - 0.5 * n * (np.log(np.cos((2 * th2 + math.pi) / n)) - math.log(math.cos(math.pi / n)))

    eq0 = abs(rb[0] - re_[0]) <= 1e-15 and abs(re2[0] - rf[0]) <= 1e-15
    return InequalityReport(
        n=n,
        resolution=grid_resolution,
        bn_en_max_violation=float(max(0.0, np.max(re_ - rb))),
        en_fn_max_violation=float(max(0.0, np.max(rf - re2))),
        bn_en_min_slack_off_zero=float(np.min(log_gap1[1:])),
        en_fn_min_slack_off_zero=float(np.min(log_gap2[1:])),
        equality_at_zero=bool(eq0),
    )


@dataclass(frozen=True)
class RegionCurve:
    n: int
    curve_id: str
    theta: np.ndarray
    r: np.ndarray

    @property
    def resolution(self) -> int:
        return self.theta.size

    @property
    def points(self) -> np.ndarray:
        return self.r * np.exp(1j * self.theta)

    def rows(self):
        pts = self.points
        for th, r, z in zip(self.theta, self.r, pts):
            yield (self.curve_id, self.n, float(th), float(r), float(z.real), float(z.imag))


def sample_curves(n: int, resolution: int = 1000) -> list[RegionCurve]:
    """Uniform samples of the ``Bn``, ``En`` and ``Fn`` curves plus the unit circle.

    ``Fn`` is clipped to ``theta <= pi`` (its domain is half-open, so the open end is
    excluded).  The ``En`` grid is symmetric about ``theta = 0`` and contains it exactly,
    so it has ``resolution`` points when ``resolution`` is odd and one more otherwise.
    """
    n = _n3(n)
    if resolution < 2:
        raise DomainError("resolution must be >= 2")
    th_b = math.pi * (2.0 * np.arange(resolution) / resolution)
    half = np.linspace(0.0, math.pi, resolution // 2 + 1)
    th_e = np.concatenate([-half[:0:-1], half])
    fmax = fn_theta_max(n)
    if fmax <= math.pi:
        th_f = np.linspace(0.0, fmax, resolution, endpoint=False)
    else:
        th_f = np.linspace(0.0, math.pi, resolution)
    th_u = th_b
    return [
        RegionCurve(n, "Bn_boundary", th_b, bn_radius(n, th_b)),
        RegionCurve(n, "En_boundary", th_e, en_radius(n, th_e)),
        RegionCurve(n, "Fn", th_f, fn_radius(n, th_f)),
        RegionCurve(n, "unit_circle", th_u, np.ones_like(th_u)),
    ]


def _fmt(x):
    return x if isinstance(x, str) else (str(x) if isinstance(x, int) else format(x, ".17g"))


def write_curve_csv(curve: RegionCurve, path) -> Path:
    """Write ``curve,n,theta,r,re,im`` rows with 17 significant digits and LF endings."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in curve.rows():
            w.writerow([_fmt(x) for x in row])
    return path
