"""Randomised cross-check battery behind ``gaussbargmann validate``.

Each case draws its inputs from ``numpy.random.default_rng([seed, case_index])`` so
the report depends only on ``(seed, cases)``.  Kinds are assigned round-robin.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import fock, regions
from . import statespec as ss
from .gaussian import GaussianState, conjugate, make_squeezed_coherent, random_state
from .invariant import (
    assemble_M,
    bargmann_invariant,
    det_Nk_identity_check,
    lu_logdet,
    overlap,
    pure_block_inverse,
    trace_power_det,
    trace_power_symplectic,
)

__all__ = ["CheckResult", "CHECKS", "run_validation"]


@dataclass(frozen=True)
class CheckResult:
    case: int
    kind: str
    defect: float
    tolerance: float
    passed: bool


def _perturb(s: GaussianState, eps: float) -> GaussianState:
    if eps == 0:
        return s
    cov = np.array(s.cov)
    cov[0, 0] += eps
    return GaussianState(s.mean, cov)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def _engine_vs_fock(rng, eps):
    n = int(rng.integers(2, 6))
    specs = []
    for _ in range(n):
        zeta = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        alpha = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        specs.append(ss.SqueezedCoherent(complex(zeta), complex(alpha)))
    states = [_perturb(s.build(), eps) for s in specs]
    engine = bargmann_invariant(states).value
    oracle, _, _ = fock.oracle_invariant(specs)
    return abs(engine - oracle)


def _trace_power_routes(rng, eps):
    m = int(rng.integers(1, 4))
    n = int(rng.integers(2, 11))
    s = random_state(m, rng, max_squeeze=1.0, max_nbar=10.0)
    return _rel(trace_power_det(_perturb(s, eps), n).value.real, trace_power_symplectic(s, n))


def _overlap(rng, eps):
    m = int(rng.integers(1, 3))
    a = random_state(m, rng, max_squeeze=1.0, max_nbar=2.0, max_displacement=1.0)
    b = random_state(m, rng, max_squeeze=1.0, max_nbar=2.0, max_displacement=1.0)
    return _rel(bargmann_invariant([_perturb(a, eps), b]).value, overlap(a, b))


def _example1(rng, eps):
    n = int(rng.integers(3, 9))
    za, aa, phi = rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 2 * math.pi)
    states = [
        _perturb(make_squeezed_coherent(za * np.exp(1j * phi), aa * np.exp(2j * math.pi * j / n)), eps)
        for j in range(1, n + 1)
    ]
    return _rel(bargmann_invariant(states).value, regions.example1_invariant(n, aa, za))


def _example2(rng, eps):
    n = int(rng.integers(2, 9))
    za = rng.uniform(0, 1)
    states = [_perturb(make_squeezed_coherent(za * np.exp(2j * math.pi * j / n), 0), eps) for j in range(1, n + 1)]
    return _rel(bargmann_invariant(states).value, regions.example2_invariant(n, za))


def _pure_inverse(rng, eps):
    n = int(rng.integers(2, 11))
    s = _perturb(make_squeezed_coherent(rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * math.pi)), 0), eps)
    M = assemble_M([s] * n)
    log_abs, arg = lu_logdet(M)
    det_defect = _rel(np.exp(log_abs + 1j * arg), 4.0 ** (n - 1))
    resid = float(np.max(np.abs(M @ pure_block_inverse(s.cov, n) - np.eye(M.shape[0]))))
    return max(det_defect, resid)


def _det_nk(rng, eps):
    return det_Nk_identity_check(float(rng.uniform(1, 10)), int(rng.integers(2, 13)))[2]


def _inequalities(rng, eps):
    rep = regions.check_inequalities(int(rng.integers(3, 41)), 10_000)
    ok = rep.bn_en_min_slack_off_zero > 0 and rep.en_fn_min_slack_off_zero > 0 and rep.equality_at_zero
    return max(rep.bn_en_max_violation, rep.en_fn_max_violation) if ok else math.inf


def _random_tuple(rng):
    n = int(rng.integers(2, 7))
    m = int(rng.integers(1, 3))
    return [random_state(m, rng, max_squeeze=0.8, max_nbar=1.0, max_displacement=1.0) for _ in range(n)]


def _cyclic(rng, eps):
    states = _random_tuple(rng)
    v = bargmann_invariant(states).value
    w = bargmann_invariant([_perturb(states[-1], eps)] + states[:-1]).value
    return _rel(w, v)


def _conjugation(rng, eps):
    states = _random_tuple(rng)
    v = bargmann_invariant(states).value
    c = bargmann_invariant([_perturb(conjugate(s), eps) for s in states]).value
    r = bargmann_invariant(states[::-1]).value
    return max(_rel(c, v.conjugate()), _rel(r, v.conjugate()))


CHECKS = {
    "engine_vs_fock": (_engine_vs_fock, 1e-6),
    "trace_power_vs_symplectic": (_trace_power_routes, 1e-9),
    "overlap_identity": (_overlap, 1e-10),
    "example1_closed_form": (_example1, 1e-9),
    "example2_closed_form": (_example2, 1e-9),
    "pure_block_det_inverse": (_pure_inverse, 1e-9),
    "det_Nk_identity": (_det_nk, 1e-9),
    "inequalities": (_inequalities, 1e-12),
    "cyclic_invariance": (_cyclic, 1e-9),
    "conjugation_reversal": (_conjugation, 1e-9),
}


def _jsonable(d):
    if not math.isfinite(d["defect"]):
        d["defect"] = None
    return d


def run_validation(seed: int = 0, cases: int = 30, tolerance: float | None = None, perturb_cov: float = 0.0) -> dict:
    """Run ``cases`` checks; ``perturb_cov`` adds to ``cov[0, 0]`` of engine inputs (negative control)."""
    kinds = list(CHECKS)
    results = []
    for i in range(cases):
        kind = kinds[i % len(kinds)]
        fn, tol = CHECKS[kind]
        tol = tol if tolerance is None else tolerance
        rng = np.random.default_rng([seed, i])
        try:
            defect = float(fn(rng, perturb_cov))
        except (ArithmeticError, ValueError) as exc:  # physicality or conditioning failures
            defect = math.inf
            kind = f"{kind} ({type(exc).__name__})"
        results.append(CheckResult(i, kind, defect, tol, bool(defect <= tol)))
    return {
        "seed": seed,
        "cases": cases,
        "passed": all(r.passed for r in results),
        "checks": [_jsonable(asdict(r)) for r in results],
    }
