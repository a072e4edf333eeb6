"""Matplotlib drawings of Hasse diagrams, for ``spcls render --figure``."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from spcls.bits import members  # noqa: E402
from spcls.categorical import closed_set_lattice, functor_F_obj  # noqa: E402
from spcls.core import ClosureSpace, FiniteLattice, StatePropertySystem  # noqa: E402


def ranks(lattice: FiniteLattice) -> list[int]:
    """Length of the longest chain from the bottom to each element."""
    rank = [0] * len(lattice)
    order = sorted(range(len(lattice)), key=lambda x: bin(lattice.down[x]).count("1"))
    for y in order:
        below = lattice.down[y] & ~(1 << y)
        rank[y] = max((rank[x] + 1 for x in members(below)), default=0)
    return rank


def layout(lattice: FiniteLattice) -> dict[int, tuple[float, float]]:
    rank = ranks(lattice)
    rows: dict[int, list[int]] = {}
    for x, r in enumerate(rank):
        rows.setdefault(r, []).append(x)
    pos = {}
    for r, xs in rows.items():
        for i, x in enumerate(xs):
            pos[x] = (i - (len(xs) - 1) / 2, float(r))
    return pos


def draw_hasse(ax, lattice: FiniteLattice, title: str) -> None:
    pos = layout(lattice)
    for lo, hi in lattice.covers():
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="0.4", lw=1, zorder=1)
    for x, (px, py) in pos.items():
        ax.text(
            px, py, lattice.names[x], ha="center", va="center", fontsize=9,
            bbox=dict(boxstyle="round,pad=0.3", fc="white", ec="0.2"), zorder=2,
        )
    ax.set_title(title)
    ax.margins(0.25)
    ax.axis("off")


def render_figure(obj: StatePropertySystem | ClosureSpace, path: str) -> None:
    """Write the property lattice and the closed-set diagram side by side."""
    if isinstance(obj, StatePropertySystem):
        lattice, cs = obj.lattice, functor_F_obj(obj)
    else:
        cs = obj
        lattice = closed_set_lattice(cs)
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 5))
    draw_hasse(left, lattice, "property lattice")
    draw_hasse(right, closed_set_lattice(cs), "closed sets")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
