"""Declarative state descriptions and their JSON form.

JSON schema (one object per state)::

    {"type": "coherent", "alpha": [re, im]}
    {"type": "squeezed", "zeta": [re, im]}
    {"type": "squeezed_coherent", "zeta": [re, im], "alpha": [re, im]}
    {"type": "thermal", "nbar": x}
    {"type": "vacuum"}
    {"type": "explicit", "mean": [...], "cov": [[...], ...]}
    {"type": "tensor", "parts": [<state>, ...]}

Complex numbers may also be given as a bare real number.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import (
    DomainError,
    GaussianState,
    make_squeezed_coherent,
    make_thermal,
    make_vacuum,
    require_physical,
    tensor,
)

__all__ = [
    "SpecError",
    "Coherent",
    "Squeezed",
    "SqueezedCoherent",
    "Thermal",
    "Vacuum",
    "Explicit",
    "Tensor",
    "parse_state_spec",
    "spec_to_json",
]


class SpecError(ValueError):
    """A state description does not match the schema."""


@dataclass(frozen=True)
class Coherent:
    alpha: complex

    def build(self) -> GaussianState:
        return make_squeezed_coherent(0.0, self.alpha)


@dataclass(frozen=True)
class Squeezed:
    zeta: complex

    def build(self) -> GaussianState:
        return make_squeezed_coherent(self.zeta, 0.0)


@dataclass(frozen=True)
class SqueezedCoherent:
    zeta: complex
    alpha: complex

    def build(self) -> GaussianState:
        return make_squeezed_coherent(self.zeta, self.alpha)


@dataclass(frozen=True)
class Thermal:
    nbar: float

    def __post_init__(self):
        if not self.nbar >= 0:
            raise DomainError(f"nbar must be non-negative, got {self.nbar}")

    def build(self) -> GaussianState:
        return make_thermal(self.nbar)


@dataclass(frozen=True)
class Vacuum:
    def build(self) -> GaussianState:
        return make_vacuum(1)


@dataclass(frozen=True)
class Explicit:
    mean: tuple
    cov: tuple

    def build(self) -> GaussianState:
        return require_physical(GaussianState(np.array(self.mean), np.array(self.cov)))


@dataclass(frozen=True)
class Tensor:
    parts: tuple

    def build(self) -> GaussianState:
        return tensor(*(p.build() for p in self.parts))


def _complex(value, name):
    if isinstance(value, bool):
        raise SpecError(f"{name}: expected a number or [re, im]")
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise SpecError(f"{name}: expected a number or [re, im], got {value!r}")


def _keys(obj, allowed):
    extra = set(obj) - set(allowed) - {"type"}
    if extra:
        raise SpecError(f"unexpected keys for {obj['type']!r}: {sorted(extra)}")
    missing = [k for k in allowed if k not in obj]
    if missing:
        raise SpecError(f"missing keys for {obj['type']!r}: {missing}")


def parse_state_spec(obj):
    """Turn a decoded JSON object into a state description."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise SpecError(f"state must be an object with a 'type' key, got {obj!r}")
    kind = obj["type"]
    try:
        if kind == "coherent":
            _keys(obj, ["alpha"])
            return Coherent(_complex(obj["alpha"], "alpha"))
        if kind == "squeezed":
            _keys(obj, ["zeta"])
            return Squeezed(_complex(obj["zeta"], "zeta"))
        if kind == "squeezed_coherent":
            _keys(obj, ["zeta", "alpha"])
            return SqueezedCoherent(_complex(obj["zeta"], "zeta"), _complex(obj["alpha"], "alpha"))
        if kind == "thermal":
            _keys(obj, ["nbar"])
            nbar = obj["nbar"]
            if isinstance(nbar, bool) or not isinstance(nbar, (int, float)):
                raise SpecError(f"nbar must be a number, got {nbar!r}")
            return Thermal(float(nbar))
        if kind == "vacuum":
            _keys(obj, [])
            return Vacuum()
        if kind == "explicit":
            _keys(obj, ["mean", "cov"])
            mean = np.asarray(obj["mean"], dtype=float)
            cov = np.asarray(obj["cov"], dtype=float)
            if mean.ndim != 1 or cov.ndim != 2:
                raise SpecError("explicit state needs a vector mean and a matrix cov")
            return Explicit(tuple(mean.tolist()), tuple(map(tuple, cov.tolist())))
        if kind == "tensor":
            _keys(obj, ["parts"])
            parts = obj["parts"]
            if not isinstance(parts, list) or not parts:
                raise SpecError("tensor needs a non-empty list of parts")
            return Tensor(tuple(parse_state_spec(p) for p in parts))
    except DomainError as exc:
        raise SpecError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"malformed {kind!r} state: {exc}") from exc
    raise SpecError(f"unknown state type {kind!r}")


def _pair(z):
    return [z.real, z.imag]


def spec_to_json(spec) -> dict:
    if isinstance(spec, Coherent):
        return {"type": "coherent", "alpha": _pair(spec.alpha)}
    if isinstance(spec, Squeezed):
        return {"type": "squeezed", "zeta": _pair(spec.zeta)}
    if isinstance(spec, SqueezedCoherent):
        return {"type": "squeezed_coherent", "zeta": _pair(spec.zeta), "alpha": _pair(spec.alpha)}
    if isinstance(spec, Thermal):
        return {"type": "thermal", "nbar": spec.nbar}
    if isinstance(spec, Vacuum):
        return {"type": "vacuum"}
    if isinstance(spec, Explicit):
        return {"type": "explicit", "mean": list(spec.mean), "cov": [list(r) for r in spec.cov]}
    if isinstance(spec, Tensor):
        return {"type": "tensor", "parts": [spec_to_json(p) for p in spec.parts]}
    raise TypeError(f"not a state description: {spec!r}")
