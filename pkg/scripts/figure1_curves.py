"""Write the region curves (Bn, En, Fn, unit circle) as CSV and optionally plot them.

    python scripts/figure1_curves.py --out figure1 [--plot figure1.png]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from gaussbargmann import regions


@dataclass
class Figure1Config:
    orders: list[int] = field(default_factory=lambda: [3, 6, 10, 40])
    resolution: int = 1000
    out: Path = Path("figure1")
    plot: Path | None = None


def run(cfg: Figure1Config) -> list[Path]:
    cfg.out.mkdir(parents=True, exist_ok=True)
    written = []
    curves = {}
    for n in cfg.orders:
        curves[n] = regions.sample_curves(n, cfg.resolution)
        for c in curves[n]:
            written.append(regions.write_curve_csv(c, cfg.out / f"{c.curve_id}_n{n}.csv"))
    if cfg.plot is not None:
        _plot(curves, cfg.plot)
    return written


def _plot(curves, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    styles = {
        "Bn_boundary": dict(color="tab:blue", ls="--"),
        "En_boundary": dict(color="tab:red", ls="-"),
        "Fn": dict(color="tab:purple", ls="--"),
        "unit_circle": dict(color="tab:green", ls="-"),
    }
    fig, axes = plt.subplots(1, len(curves), figsize=(4 * len(curves), 4))
    for ax, (n, cs) in zip(axes, curves.items()):
        for c in cs:
            z = c.points
            ax.plot(z.real, z.imag, lw=1, label=c.curve_id, **styles[c.curve_id])
            if c.curve_id == "Fn":
                ax.plot(z.real, -z.imag, lw=1, **styles[c.curve_id])
        ax.set_aspect("equal")
        ax.set_title(f"n = {n}")
    axes[0].legend(fontsize=7, loc="lower left")
    fig.tight_layout()
    fig.savefig(path, dpi=150)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--resolution", type=int, default=1000)
    p.add_argument("--out", type=Path, default=Path("figure1"))
    p.add_argument("--plot", type=Path)
    a = p.parse_args()
    cfg = Figure1Config(a.n or [3, 6, 10, 40], a.resolution, a.out, a.plot)
    for path in run(cfg):
        print(path)


if __name__ == "__main__":
    main()
