"""Figures for the bounds table, rendered from the JSON records."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SERIES = ("O_n", "SO_n", "PO_n", "Spin")
MARKERS = {"O_n": "o", "SO_n": "s", "PO_n": "^", "Spin": "D"}
# SO_n and PO_n share their bounds, so one of them is dashed
STYLES = {"PO_n": "--"}


def plot_bounds(records: list[dict], path: str) -> None:
    """Two panels: bounds against n for the series, and a bar per remaining row."""
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.2))

    for fam in SERIES:
        rows = [r for r in records if r["group_family"] == fam]
        if rows:
            xs = [r["params"]["n"] for r in rows]
            left.plot(xs, [r["rank"] for r in rows], marker=MARKERS[fam],
                      linestyle=STYLES.get(fam, "-"), label=fam)
    left.set_xlabel("n")
    left.set_ylabel("lower bound for ed(G;2)")
    left.spines["right"].set_visible(False)
    left.spines["top"].set_visible(False)
    if left.lines:
        left.legend(frameon=False)

    rest = [r for r in records if r["group_family"] not in SERIES]
    colors = ["0.6" if r["group_family"] == "cited_only" else "C0" for r in rest]
    right.bar(range(len(rest)), [r["rank"] for r in rest], color=colors)
    right.set_xticks(range(len(rest)))
    right.set_xticklabels([f"{r['group']} (p={r['prime']})" for r in rest], rotation=70, ha="right", fontsize=8)
    right.set_ylabel("lower bound for ed(G;p)")
    right.set_title("verified (blue) and cited (grey)", fontsize=9)
    right.spines["right"].set_visible(False)
    right.spines["top"].set_visible(False)

    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
