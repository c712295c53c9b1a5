"""Figure rendering for sweep results.

Figures are an optional extra next to the delimited output; the CSV stream
stays the machine-readable contract.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_evolve_figure(rows: Sequence[dict], path: str) -> None:
    """Two panels: first-order squeezing and |beta| along the time sweep."""
    t = [r["t"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.6))
    ax1.plot(t, [r["D1"] for r in rows], color="tab:blue")
    ax1.axhline(0.0, color="0.6", lw=0.8)
    ax1.set_ylabel(r"$\mathcal{D}_1(t)$")
    beta_abs = [abs(complex(r["beta_re"], r["beta_im"])) for r in rows]
    ax2.plot(t, beta_abs, color="tab:red")
    ax2.set_ylabel(r"$|\beta(t)|$")
    ax2.set_xlabel(r"$t$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_thermal_figure(rows: Sequence[dict], path: str) -> None:
    """Squeezing parameters, witness determinant and photon statistics vs theta."""
    theta = [r["theta"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.6))
    ax1.plot(theta, [r["D1"] for r in rows], label=r"$\mathcal{D}_1$")
    ax1.plot(theta, [r["D1_zhang"] for r in rows], "--", label=r"$\mathcal{D}_1^{\rm Zhang}$")
    ax1.plot(theta, [r["detM"] for r in rows], ":", label=r"$\det\mathcal{M}$")
    ax1.axhline(0.0, color="0.6", lw=0.8)
    ax1.set_ylabel("squeezing / witness")
    ax1.legend(fontsize=8)
    ax2.plot(theta, [r["mandel_excess"] for r in rows], color="tab:green",
             label=r"$(\Delta n)^2 - \langle n\rangle$")
    ax2.plot(theta, [r["n_mean"] for r in rows], color="0.4", lw=0.8,
             label=r"$\langle n\rangle$")
    ax2.set_xlabel(r"$\theta$")
    ax2.set_ylabel("photon statistics")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
