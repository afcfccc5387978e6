"""Matplotlib renderings of bench results, written next to the CSV output."""

from __future__ import annotations

from .bench import BenchRow


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_sweep_figure(rows: list[BenchRow], path: str) -> None:
    """Grouped bars: one group per variable count, one bar per budget."""
    plt = _plt()
    ns = sorted({r.n for r in rows})
    ks = sorted({r.k for r in rows})
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(ns)), 4))
    bar_w = 0.8 / max(1, len(ks))
    for j, k in enumerate(ks):
        xs, ys = [], []
        for i, n in enumerate(ns):
            match = [r for r in rows if r.n == n and r.k == k]
            if match:
                xs.append(i + j * bar_w)
                ys.append(match[0].q_depth_mean)
        ax.bar(xs, ys, width=bar_w, label=f"k={k}")
    ax.set_xticks([i + 0.4 - bar_w / 2 for i in range(len(ns))])
    ax.set_xticklabels([str(n) for n in ns])
    ax.set_xlabel("variables")
    ax.set_ylabel("mean oracle depth")
    ax.set_title("Space-depth trade-off")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_compare_figure(rows: list[BenchRow], path: str) -> None:
    """Per variable count: mean depth by level for both methods."""
    plt = _plt()
    ns = sorted({r.n for r in rows})
    fig, axes = plt.subplots(1, len(ns), figsize=(4 * len(ns), 3.5), squeeze=False)
    for ax, n in zip(axes[0], ns):
        levels = sorted({r.level for r in rows if r.n == n})
        for method, marker in (("asdt", "o"), ("wcycle", "s")):
            xs, ys = [], []
            for level in levels:
                cells = [
                    r.q_depth_mean
                    for r in rows
                    if r.n == n and r.level == level and r.method == method and r.feasible
                ]
                if cells:
                    xs.append(level)
                    ys.append(sum(cells) / len(cells))
            ax.plot(xs, ys, marker=marker, label=method)
        ax.set_title(f"n={n}")
        ax.set_xlabel("level")
        ax.set_ylabel("mean oracle depth")
        ax.set_xticks(levels)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
