"""Multi-panel figures from sweep tables.

Rendering is deterministic: fixed style, a pinned PNG "Software" tag and no
timestamps, so re-rendering the same inputs reproduces the file byte for
byte.  Reference lines are recomputed from the dimensions recorded in each
table's metadata, never hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import Table, read_table, require

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4")

_SAVE_OPTS = dict(dpi=150, metadata={"Software": "figs"})


@dataclass(frozen=True)
class FigureSpec:
    figure: str
    inputs: tuple[str, ...]
    output: str
    title: str | None = field(default=None)


def rmt_value(metadata: dict) -> float:
    """Random-matrix linear-entropy average from the table's dimensions."""
    dims = metadata.get("dims", {})
    d_s, d_a = int(dims["d_system"]), int(dims["d_ancilla"])
    return 1.0 - (d_s + d_a) / (1.0 + d_s * d_a)


def _param_label(table: Table) -> str:
    model = table.metadata.get("config", {}).get("model", "")
    return "kick strength M" if model == "kicked-ising" else "kick strength kappa"


def _errorbar(ax, table: Table, column: str, label: str, color: str):
    x = table.column("param")
    y = table.column(f"{column}_mean")
    err = table.column(f"{column}_se") if f"{column}_se" in table.columns else None
    ax.errorbar(x, y, yerr=err, fmt="o-", ms=3, lw=1, capsize=2, label=label, color=color)


def _entanglement_work_panel(ax, table: Table) -> None:
    _errorbar(ax, table, "S_lin", "S", "tab:blue")
    ax.axhline(rmt_value(table.metadata), ls="--", lw=1, color="gray", label="RMT")
    twin = ax.twinx()
    _errorbar(twin, table, "dW", "dW", "tab:red")
    ax.set_xlabel(_param_label(table))
    ax.set_ylabel("linear entropy")
    twin.set_ylabel("work gain")
    handles, labels = ax.get_legend_handles_labels()
    h2, l2 = twin.get_legend_handles_labels()
    ax.legend(handles + h2, labels + l2, loc="lower center", fontsize=8)


def _render_fig1(inputs: tuple[str, ...]):
    if len(inputs) != 2:
        raise ValueError(f"fig1 needs two known tables (top, ising), got {len(inputs)}")
    tables = []
    for path in inputs:
        table = read_table(path)
        require(table, "known", ("param", "S_lin_mean", "S_lin_se", "dW_mean", "dW_se"), path)
        tables.append(table)
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
    for ax, table, tag in zip(axes, tables, ("(a)", "(b)")):
        _entanglement_work_panel(ax, table)
        ax.set_title(f"{tag} {table.metadata.get('config', {}).get('model', '')}", fontsize=10)
    return fig


def _render_fig2(inputs: tuple[str, ...]):
    fig, axes = plt.subplots(2, len(inputs), figsize=(4.5 * len(inputs), 6.4), squeeze=False)
    for col, path in enumerate(inputs):
        table = read_table(path)
        require(table, "tripartite", ("param", "c1", "c2", "S_lin_mean", "dW_mean"), path)
        variants: dict[tuple[float, float], list[dict[str, float]]] = {}
        for row in table.rows:
            variants.setdefault((row["c1"], row["c2"]), []).append(row)
        for (c1, c2), rows in sorted(variants.items()):
            x = [r["param"] for r in rows]
            label = f"C1={c1:g}, C2={c2:g}"
            axes[0][col].errorbar(
                x, [r["S_lin_mean"] for r in rows],
                yerr=[r["S_lin_se"] for r in rows], fmt="o-", ms=3, lw=1, label=label,
            )
            axes[1][col].errorbar(
                x, [r["dW_mean"] for r in rows],
                yerr=[r["dW_se"] for r in rows], fmt="o-", ms=3, lw=1, label=label,
            )
        axes[0][col].set_ylabel("linear entropy")
        axes[1][col].set_ylabel("work gain")
        for row_ax in axes:
            row_ax[col].set_xlabel(_param_label(table))
            row_ax[col].legend(fontsize=8)
    return fig


def _unknown_panels(fig, axes, table: Table) -> None:
    pairs = (("Wrc", "work (per-outcome reconstruction)"),
             ("Wbar", "work (averaged reconstruction)"),
             ("OE1", "outcome-averaged OE"),
             ("OE2", "OE of averaged state"))
    for ax, (key, label) in zip(axes.ravel(), pairs):
        _errorbar(ax, table, key, key, "tab:blue")
        ax.set_xlabel(_param_label(table))
        ax.set_ylabel(label)


def _render_fig3(inputs: tuple[str, ...]):
    if not 1 <= len(inputs) <= 2:
        raise ValueError("fig3 takes an unknown table and optionally a coarse-scan table")
    table = read_table(inputs[0])
    require(
        table, "unknown",
        ("param", "Wrc_mean", "Wrc_se", "Wbar_mean", "Wbar_se",
         "OE1_mean", "OE1_se", "OE2_mean", "OE2_se"),
        inputs[0],
    )
    if len(inputs) == 1:
        fig, axes = plt.subplots(2, 2, figsize=(9, 6.4))
        _unknown_panels(fig, axes, table)
        return fig
    scan = read_table(inputs[1])
    require(scan, "coarse-scan", ("param", "n", "Wrc_mean", "Wbar_mean"), inputs[1])
    fig, axes = plt.subplots(3, 2, figsize=(9, 9.2))
    _unknown_panels(fig, axes[:2, :], table)
    by_kappa: dict[float, list[dict[str, float]]] = {}
    for row in scan.rows:
        by_kappa.setdefault(row["param"], []).append(row)
    for ax, key in zip(axes[2, :], ("Wrc", "Wbar")):
        for kappa, rows in sorted(by_kappa.items()):
            rows = sorted(rows, key=lambda r: r["n"])
            ax.plot([r["n"] for r in rows], [r[f"{key}_mean"] for r in rows],
                    "o-", ms=3, lw=1, label=f"kappa={kappa:g}")
        ax.set_xscale("log")
        ax.set_xlabel("coarse-graining length n")
        ax.set_ylabel(key)
        ax.legend(fontsize=8)
    return fig


def _render_fig4(inputs: tuple[str, ...]):
    if len(inputs) != 1:
        raise ValueError(f"fig4 needs one unknown table, got {len(inputs)}")
    table = read_table(inputs[0])
    require(
        table, "unknown",
        ("param", "Wrc_mean", "Wrc_se", "Wbar_mean", "Wbar_se",
         "OE1_mean", "OE1_se", "OE2_mean", "OE2_se"),
        inputs[0],
    )
    fig, axes = plt.subplots(2, 2, figsize=(9, 6.4))
    _unknown_panels(fig, axes, table)
    return fig


_RENDERERS = {
    "fig1": _render_fig1,
    "fig2": _render_fig2,
    "fig3": _render_fig3,
    "fig4": _render_fig4,
}


def render(spec: FigureSpec) -> str:
    """Render one figure to ``spec.output``; returns the output path."""
    if spec.figure not in _RENDERERS:
        raise ValueError(f"figure id must be one of {FIGURE_IDS}, got {spec.figure!r}")
    fig = _RENDERERS[spec.figure](tuple(spec.inputs))
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    try:
        fig.savefig(spec.output, **_SAVE_OPTS)
    finally:
        plt.close(fig)
    return spec.output
