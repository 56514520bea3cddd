# hnc/ui/plots.py
# -*- coding: utf-8 -*-

"""
Emissor de gráficos de linha em SVG (matplotlib, backend Agg).
Eixos log onde as figuras de referência usam escala log.
"""

import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

logger = logging.getLogger(__name__)

# (coluna x, coluna y, log x, log y, título)
FIGURE_LAYOUT = {
    "fig8": ("distance_m", "capacity_bps", True, True, "Capacidade do sub-canal THz x distância"),
    "fig9": ("bandwidth_hz", "capacity_bps", True, False, "Capacidade do sub-canal molecular x banda"),
    "fig10": ("rate_pps", "capacity_nats_ps", False, False, "Capacidade do sub-canal neural x taxa de entrada"),
}

_LABELS = {
    "distance_m": "Distância d1 (m)",
    "bandwidth_hz": "Banda W (Hz)",
    "rate_pps": "Taxa de entrada a (pulsos/s)",
    "capacity_bps": "Capacidade (bits/s)",
    "capacity_nats_ps": "Capacidade (nats/s)",
}


def _save_svg(fig, path):
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    # sem data nem ids aleatórios: SVG estável entre execuções
    with matplotlib.rc_context({"svg.hashsalt": "hnc", "svg.fonttype": "none"}):
        fig.savefig(p, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("[OK] SVG gravado em %s", p)
    return p


def line_chart(df, x, y, path, logx=False, logy=False, title=None, marker=None):
    fig, ax = plt.subplots(figsize=(7, 4.5))

    ax.plot(df[x], df[y], linewidth=1.8, color="#2E7BFF", marker=marker)
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")

    ax.set_xlabel(_LABELS.get(x, x))
    ax.set_ylabel(_LABELS.get(y, y))
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)

    fig.tight_layout()
    return _save_svg(fig, path)


def plot_figure(df, figure, path, annotate_min=None):
    """SVG de uma das figuras reproduzidas; annotate_min=(x, y) marca o mínimo."""
    x, y, logx, logy, title = FIGURE_LAYOUT[figure]
    if annotate_min is None:
        return line_chart(df, x, y, path, logx=logx, logy=logy, title=title)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(df[x], df[y], linewidth=1.8, color="#2E7BFF")
    ax.plot([annotate_min[0]], [annotate_min[1]], "o", color="#DB4437")
    ax.annotate(
        f"mín. {annotate_min[1]:.4g} em {annotate_min[0]:.3g}",
        xy=annotate_min, xytext=(10, 10), textcoords="offset points",
    )
    ax.set_xscale("log" if logx else "linear")
    ax.set_yscale("log" if logy else "linear")
    ax.set_xlabel(_LABELS[x])
    ax.set_ylabel(_LABELS[y])
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    return _save_svg(fig, path)


def plot_sweep(df, key, path, logx=True):
    """Capacidades da cascata ao longo de uma varredura."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for col, label in (("c1_bps", "C1 THz"), ("c2_bps", "C2 molecular"), ("c3_bps", "C3 neural"), ("cascade_bps", "C")):
        style = "--" if col == "cascade_bps" else "-"
        ax.plot(df[key], df[col], style, linewidth=1.5, label=label)

    if logx:
        ax.set_xscale("log")
    if (df[["c1_bps", "c2_bps", "c3_bps"]] > 0).all().all():
        ax.set_yscale("log")

    ax.set_xlabel(key)
    ax.set_ylabel("Capacidade (bits/s)")
    ax.legend(loc="best")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    return _save_svg(fig, path)
