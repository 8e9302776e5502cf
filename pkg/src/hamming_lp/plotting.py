"""Matplotlib rendering of the bound comparison (gap and degree-1 weight)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

CURVES = (
    ("fwy_gap", "Fu-Wei-Yeung 1/(4a)", "-"),
    ("improved_gap", "improved LP", "-"),
    ("chang_gap", "Chang ln(1/a)", "--"),
    ("hyper_gap", "hypercontractivity", "-."),
)


def plot_bounds(grid, subcubes, balls, path, n=None):
    """Two stacked panels: the gap n/2 - D against a, and W_1 = 8a^2 * gap."""
    xs = [float(r["a"]) for r in grid]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.4, 8.0), sharex=True)
    for key, label, style in CURVES:
        ys = [float(r[key]) for r in grid]
        top.plot(xs, ys, style, label=label)
        bottom.plot(xs, [8 * x * x * y for x, y in zip(xs, ys)], style, label=label)

    sub = [p for p in subcubes if p["a"] <= 0.5 and p["a"] >= xs[0]]
    if sub:
        sa = [float(p["a"]) for p in sub]
        top.plot(sa, [float(p["gap"]) for p in sub], "o", mfc="none", color="k", label="subcubes")
        bottom.plot(sa, [float(p["w1"]) for p in sub], "o", mfc="none", color="k", label="subcubes")
    ball = [p for p in balls if p["a"] <= 0.5 and p["a"] >= xs[0]]
    if ball:
        ba = [float(p["a"]) for p in ball]
        label = "Hamming balls" + (f" (n={n})" if n else "")
        top.plot(ba, [float(p["gap"]) for p in ball], "s:", ms=3, color="gray", label=label)
        bottom.plot(ba, [float(p["w1"]) for p in ball], "s:", ms=3, color="gray", label=label)

    top.set_ylabel("n/2 - D(A)")
    top.set_ylim(0, max(4.0, max(float(r["improved_gap"]) for r in grid[-len(grid) // 2:])))
    bottom.set_ylabel("W_1")
    bottom.set_xlabel("a")
    bottom.set_ylim(0, 1.05)
    top.legend(fontsize=8)
    bottom.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
