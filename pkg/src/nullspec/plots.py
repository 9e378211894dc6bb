"""Matplotlib rendering of Hasse diagrams for lattices and closed-set
families, written to image files next to the delimited/DOT reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _ranks(n: int, covers: list[tuple[int, int]]) -> list[int]:
    """Longest-path rank from the minimal elements, for layered layout."""
    rank = [0] * n
    changed = True
    while changed:
        changed = False
        for lo, hi in covers:
            if rank[hi] < rank[lo] + 1:
                rank[hi] = rank[lo] + 1
                changed = True
    return rank


def hasse_figure(labels: list[str], covers: list[tuple[int, int]], title: str = ""):
    n = len(labels)
    rank = _ranks(n, covers)
    levels: dict[int, list[int]] = {}
    for i in range(n):
        levels.setdefault(rank[i], []).append(i)
    pos = {}
    for r, nodes in levels.items():
        nodes.sort(key=lambda i: labels[i])
        width = len(nodes)
        for k, i in enumerate(nodes):
            pos[i] = (k - (width - 1) / 2.0, r)

    fig, ax = plt.subplots(figsize=(max(4, 1.8 * max(len(v) for v in levels.values())),
                                    max(3, 1.3 * (max(rank) + 1))))
    for lo, hi in covers:
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="gray", zorder=1, linewidth=1.2)
    for i in range(n):
        x, y = pos[i]
        ax.text(x, y, labels[i], ha="center", va="center", zorder=2, fontsize=10,
                bbox=dict(boxstyle="round,pad=0.35", facecolor="#eef2fa", edgecolor="#365"))
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_lattice_figure(lattice, path: str, title: str = "nullity-class lattice"):
    labels = [f"{node.label}\n{{{','.join(sorted(node.support))}}}" for node in lattice.nodes]
    verdict = "distributive" if lattice.distributive else "non-distributive (pentagon)"
    fig = hasse_figure(labels, lattice.covers(), f"{title} [{verdict}]")
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_closed_sets_figure(sets: list[frozenset], path: str, title: str = "closed subsets"):
    ordered = sorted(sets, key=lambda s: (len(s), sorted(s)))
    labels = ["{" + ",".join(sorted(s)) + "}" if s else "{}" for s in ordered]
    n = len(ordered)
    covers = []
    for i in range(n):
        for j in range(n):
            if i == j or not ordered[i] < ordered[j]:
                continue
            if any(k != i and k != j and ordered[i] < ordered[k] < ordered[j] for k in range(n)):
                continue
            covers.append((i, j))
    fig = hasse_figure(labels, covers, title)
    fig.savefig(path, dpi=150)
    plt.close(fig)
