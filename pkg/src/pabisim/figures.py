"""Matplotlib renderings written straight to image files."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .dist import format_prob, project  # noqa: E402
from .lattice import extreme_points  # noqa: E402
from .partition import Partition, state_key  # noqa: E402


def _coords(points, keys):
    """2-D coordinates: raw masses for <= 2 blocks, barycentric for 3."""
    if len(keys) <= 2:
        ks = list(keys) + [None] * (2 - len(keys))
        return [(float(p[ks[0]]) if ks[0] is not None else 0.0, float(p[ks[1]]) if ks[1] is not None else 0.0)
                for p in points]
    corners = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    out = []
    for p in points:
        w = [float(p[k]) for k in keys[:3]]
        out.append((sum(wi * c[0] for wi, c in zip(w, corners)), sum(wi * c[1] for wi, c in zip(w, corners))))
    return out


def plot_reachable_set(p, state, action, path, partition=None, title=None):
    """Draw the projected one-step distributions of ``(state, action)``.

    Extreme points are filled, interior points hollow, and the hull boundary
    is drawn through the extreme points. Returns the list of extreme points.
    """
    partition = partition or Partition.discrete(p.states)
    trs = p.outgoing(state, action)
    if not trs:
        raise ValueError(f"state {state} has no {action}-transitions")
    points = list(dict.fromkeys(project(t.target, partition) for t in trs))
    ext = extreme_points(points)
    keys = sorted(set().union(*(set(q) for q in points)), key=state_key)

    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    xy = _coords(points, keys)
    exy = _coords(ext, keys)
    if len(keys) <= 2:
        ax.plot([0, 1], [1, 0], color="0.8", lw=1, zorder=0)
        ax.set_xlim(-0.05, 1.05)
        ax.set_ylim(-0.05, 1.05)
        ax.set_xlabel(f"mass on {keys[0]}")
        ax.set_ylabel(f"mass on {keys[1]}" if len(keys) > 1 else "")
    else:
        tri = _coords([{k: 1} for k in keys[:3]], keys)
        ax.add_patch(plt.Polygon(tri, fill=False, color="0.8"))
        for (x, y), k in zip(tri, keys[:3]):
            ax.annotate(str(k), (x, y), textcoords="offset points", xytext=(4, 4))
        ax.set_axis_off()
    if len(exy) > 1:
        cx = sum(x for x, _ in exy) / len(exy)
        cy = sum(y for _, y in exy) / len(exy)
        ring = sorted(exy, key=lambda c: math.atan2(c[1] - cy, c[0] - cx))
        ax.fill(*zip(*ring), alpha=0.15, color="tab:blue")
        ax.plot(*zip(*(ring + ring[:1])), color="tab:blue", lw=1.2)
    ext_set = set(ext)
    for pt, (x, y) in zip(points, xy):
        filled = pt in ext_set
        ax.scatter([x], [y], s=40, zorder=3, color="tab:blue" if filled else "white", edgecolors="tab:blue")
        label = ", ".join(f"{k}:{format_prob(w)}" for k, w in pt.items())
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(5, -10), fontsize=7)
    ax.set_title(title or f"{action}-transitions of state {state}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return ext


def plot_hasse(report, path, title=None):
    """Hasse diagram of the order recorded in a lattice report."""
    names = report.names
    below = {n: set() for n in names}
    for a, b in report.order:
        below[b].add(a)
    covers = []
    for b in names:
        for a in below[b]:
            if not any(a in below[c] for c in below[b] if c != a):
                covers.append((a, b))
    level = {}

    def depth(n):
        if n not in level:
            level[n] = 1 + max((depth(a) for a in below[n]), default=-1)
        return level[n]

    for n in names:
        depth(n)
    rows = {}
    for n in names:
        rows.setdefault(level[n], []).append(n)
    pos = {}
    for lv, ns in rows.items():
        for i, n in enumerate(ns):
            pos[n] = ((i + 1) / (len(ns) + 1), lv)

    fig, ax = plt.subplots(figsize=(5, 1.5 + 1.2 * len(rows)))
    for a, b in covers:
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.4", lw=1, zorder=1)
    for n, (x, y) in pos.items():
        color = "tab:green" if n == report.bottom else "tab:orange" if n == report.top else "tab:blue"
        ax.scatter([x], [y], s=60, color=color, zorder=2)
        ax.annotate(n, (x, y), textcoords="offset points", xytext=(6, 4), fontsize=8)
    ax.set_xlim(0, 1)
    ax.set_ylim(-0.5, max(rows) + 0.5)
    ax.set_axis_off()
    ax.set_title(title or f"{report.kind} quotient set")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return covers
