"""How often does halving arg(det M) taken in [0, 2 pi) give the wrong sign?

For random tuples of one-mode squeezed coherent states, compares the naive
``2^{n-1} exp(...) / sqrt(det M)`` (argument of ``det M`` in ``[0, 2 pi)``) and the
continuous-branch engine value against the Fock oracle, per tuple length ``n``.

    python scripts/branch_study.py --samples 100 --max-n 6
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

import numpy as np

from gaussbargmann import fock
from gaussbargmann import statespec as ss
from gaussbargmann.invariant import bargmann_invariant


@dataclass
class BranchStudyConfig:
    samples: int = 100
    max_n: int = 6
    max_zeta: float = 1.0
    max_alpha: float = 1.0
    seed: int = 0


def _disc(rng, r):
    return complex(r * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def run(cfg: BranchStudyConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in range(2, cfg.max_n + 1):
        naive_wrong = engine_wrong = 0
        for _ in range(cfg.samples):
            specs = [ss.SqueezedCoherent(_disc(rng, cfg.max_zeta), _disc(rng, cfg.max_alpha)) for _ in range(n)]
            oracle, _, _ = fock.oracle_invariant(specs)
            res = bargmann_invariant([s.build() for s in specs])
            naive = -res.value if res.branch_flipped else res.value
            naive_wrong += abs(naive - oracle) > 1e-6
            engine_wrong += abs(res.value - oracle) > 1e-6
        rows.append(dict(n=n, samples=cfg.samples, naive_branch_wrong=naive_wrong, engine_wrong=engine_wrong))
    return {"config": asdict(cfg), "by_n": rows}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in BranchStudyConfig.__dataclass_fields__.values():
        p.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    print(json.dumps(run(BranchStudyConfig(**vars(p.parse_args()))), indent=2))


if __name__ == "__main__":
    main()
