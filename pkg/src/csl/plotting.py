"""Figures written next to scan tables and layer reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _label(row: dict, q: int) -> str:
    return ",".join(str(row[f"h{i + 1}"]) for i in range(q))


def _num(v):
    return v if isinstance(v, int) else None


def plot_scan(rows: list, q: int, path, title: str = "") -> None:
    """Constructed |X|, the bound and the oracle minimum for each h of a scan."""
    fig, ax = plt.subplots(figsize=(max(6, 0.35 * len(rows) + 2), 4))
    xs = list(range(len(rows)))
    for key, style, name in (
        ("bound", "k--", "bound"),
        ("size", "o-", "constructed |X|"),
        ("oracle_min", "s:", "oracle minimum"),
    ):
        pts = [(x, _num(r.get(key))) for x, r in zip(xs, rows)]
        pts = [(x, y) for x, y in pts if y is not None]
        if pts:
            ax.plot([p[0] for p in pts], [p[1] for p in pts], style, label=name, markersize=4)
    failed = [x for x, r in zip(xs, rows) if r.get("status") == "failed"]
    if failed:
        ax.scatter(failed, [0] * len(failed), marker="x", color="red", label="failed", zorder=3)
    ax.set_xticks(xs)
    ax.set_xticklabels([_label(r, q) for r in rows], rotation=90, fontsize=7)
    ax.set_xlabel("h")
    ax.set_ylabel("size")
    if title:
        ax.set_title(title)
    if rows:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_profile(profile, thr: int, path, title: str = "") -> None:
    """Bar chart of n -> r(n), with the threshold and the layer highlighted."""
    ns = profile.support
    counts = [profile(n) for n in ns]
    colors = ["tab:blue" if c >= thr else "lightgray" for c in counts]
    fig, ax = plt.subplots(figsize=(max(6, 0.12 * len(ns) + 2), 4))
    ax.bar(ns, counts, color=colors, width=0.9)
    ax.axhline(thr, color="k", linestyle="--", linewidth=1, label=f"t = {thr}")
    ax.set_xlabel("n")
    ax.set_ylabel("representations")
    ax.set_title(title or f"h = {list(profile.h)}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
