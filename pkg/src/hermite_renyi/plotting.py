"""SVG line charts of Renyi entropy against n.

Rendering goes through matplotlib's Agg/SVG backend with the hash salt and
date metadata pinned, so the same rows give the same bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_renyi_series"]

_RC = {
    "svg.hashsalt": "hermite-renyi",
    "svg.fonttype": "none",
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
}
_STYLES = ("-", "--", "-.", ":")


def _label(p, caveat):
    lab = f"p = {p:g}"
    if caveat and caveat != "exact-constant":
        lab += " (up to additive O(1))"
    return lab


def plot_renyi_series(rows, path, title="Renyi entropy of oscillator levels"):
    """Write one polyline per p (log-x) to ``path`` as SVG.

    ``rows`` is an iterable of EntropyReport-like objects or dicts with keys
    n, p, renyi and caveat.
    """
    series = {}
    for r in rows:
        d = r if isinstance(r, dict) else r.as_dict()
        s = series.setdefault(float(d["p"]), {"n": [], "r": [], "caveat": d["caveat"]})
        s["n"].append(d["n"])
        s["r"].append(d["renyi"])
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for i, p in enumerate(sorted(series)):
            s = series[p]
            ax.plot(s["n"], s["r"], _STYLES[i % len(_STYLES)], lw=1.4, label=_label(p, s["caveat"]))
        ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("R_p")
        ax.set_title(title)
        ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path
