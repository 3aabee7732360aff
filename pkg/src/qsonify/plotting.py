"""Matplotlib figures for walk and Grover traces, rendered straight to files."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .grover import LABELS  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "svg.hashsalt": "qsonify",
}

# keeps PNG output byte-identical across runs
_SAVE_META = {"Software": None}


def _save(fig, path):
    fig.savefig(path, metadata=_SAVE_META)
    plt.close(fig)
    return path


def plot_stage_histogram(table, stage, path):
    """Bar chart of tallied proportions at one stage, exact probabilities as markers."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 3))
        x = np.arange(len(LABELS))
        props = table.proportions[stage - 1]
        bars = ax.bar(x, props, color="tab:orange", width=0.7)
        ax.bar_label(bars, fmt="%.2f", fontsize=7)
        ax.plot(x, table.exact[stage - 1], "k_", markersize=14, label="exact")
        ax.set_xticks(x, LABELS)
        ax.set_xlabel("Qubit output")
        ax.set_ylabel("Output proportion")
        ax.set_ylim(0, max(1.0, props.max()) * 1.1)
        ax.set_title(f"stage {stage}, {table.shots} shots")
        ax.legend(frameon=False, loc="upper left")
        fig.tight_layout()
        return _save(fig, path)


def plot_trace_table(table, path):
    """One small bar chart per stage, stacked top to bottom."""
    n = table.samples.shape[0]
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(n, 1, figsize=(5, 0.8 * n + 0.6), sharex=True, squeeze=False)
        x = np.arange(len(LABELS))
        for k, ax in enumerate(axes[:, 0]):
            ax.bar(x, table.proportions[k], color="tab:orange", width=0.7)
            ax.plot(x, table.exact[k], "k_", markersize=10)
            ax.set_ylim(0, 1)
            ax.set_yticks([0, 1])
            ax.set_ylabel(str(k + 1), rotation=0, labelpad=10, va="center")
        axes[-1, 0].set_xticks(x, LABELS)
        axes[-1, 0].set_xlabel("Qubit outcome")
        fig.supylabel("Stage")
        fig.tight_layout()
        return _save(fig, path)


def plot_walk(trace, path):
    """Sampled positions over time beside the final exact site distribution."""
    with plt.rc_context(STYLE):
        fig, (ax, ax2) = plt.subplots(1, 2, figsize=(8, 3), width_ratios=(3, 1))
        steps = np.arange(1, len(trace.positions) + 1)
        ax.step(steps, trace.positions, where="mid", lw=0.8)
        ax.set_xlabel("Step")
        ax.set_ylabel("Site")
        ax.set_ylim(-0.5, trace.config.n_sites - 0.5)
        ax.set_title(f"{trace.config.mode} walk, seed {trace.config.seed}")
        if trace.distributions is not None:
            sites = np.arange(trace.config.n_sites)
            ax2.barh(sites, trace.distributions[-1], color="tab:blue")
            ax2.set_xlabel(f"p(site), step {len(trace.positions)}")
            ax2.set_ylim(-0.5, trace.config.n_sites - 0.5)
        else:
            ax2.set_axis_off()
        fig.tight_layout()
        return _save(fig, path)
