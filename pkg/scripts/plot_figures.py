"""Render PNGs from the datasets written by reproduce_figures.py (needs matplotlib).

    python scripts/plot_figures.py --datadir figures/
"""
import argparse
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    data = np.array(rows[1:], dtype=float) if len(rows) > 1 else np.empty((0, len(rows[0])))
    return rows[0], data


def fig2(d):
    _, c = load(os.path.join(d, "fig2_coefficients.csv"))
    _, env = load(os.path.join(d, "fig2_rabi_overlay.csv"))
    _, rm = load(os.path.join(d, "fig2_forbidden.csv"))
    fig, ax = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
    for a, col, name in ((ax[0], 1, "a"), (ax[1], 2, "b")):
        a.plot(c[:, 0], c[:, col], lw=0.8, label="m = 0")
        a.plot(c[:, 0], c[:, col + 2], lw=0.8, label="m = 200")
        a.plot(env[:, 0], env[:, col], "k:", lw=0.8, label="Rabi")
        a.axvline(rm[0, 1], color="gray", ls="--", lw=0.6)
        a.set_ylabel(f"|B^{name}_m|^2")
        a.legend(fontsize=7)
    ax[1].set_xlabel("kappa R")
    return fig


def fig3(d):
    _, z = load(os.path.join(d, "fig3_forward_zoom.csv"))
    _, eik = load(os.path.join(d, "fig3_eikonal.csv"))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(z[:, 0], z[:, 1], "o", ms=2.5, label="partial waves")
    ax.plot(z[:, 0], z[:, 2], "-", lw=0.8, label="forward-lobe formula")
    ax.plot(eik[:, 0], eik[:, 2], "--", lw=0.8, label="eikonal")
    ax.set_xlabel("theta (rad)")
    ax.set_ylabel("lambda_b(theta)")
    ax.legend(fontsize=7)
    return fig


def fig4(d):
    _, ex = load(os.path.join(d, "fig4_exact.csv"))
    _, b = load(os.path.join(d, "fig4_total_b_approx.csv"))
    _, a = load(os.path.join(d, "fig4_total_a_approx.csv"))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ex[:, 0], ex[:, 1], lw=0.8, label="lambda_b exact")
    ax.plot(ex[:, 0], ex[:, 2], lw=0.8, label="lambda_a exact")
    ax.plot(b[::20, 0], b[::20, 1], "o", ms=3, label="lambda_b J0 form")
    ax.plot(a[::20, 0], a[::20, 1], "o", ms=3, mfc="none", label="lambda_a J0 form")
    ax.set_xlabel("kappa R")
    ax.legend(fontsize=7)
    return fig


def fig5(d):
    _, u = load(os.path.join(d, "fig5_wavefunction.csv"))
    _, v = load(os.path.join(d, "fig5_potential.csv"))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(u[:, 0], u[:, 1], lw=0.8, label="u(r)")
    ax2 = ax.twinx()
    ax2.plot(v[:, 0], v[:, 1], "k", lw=0.8, label="V_eff")
    ax2.plot(v[:, 0], v[:, 2], "k:", lw=0.6)
    ax2.set_ylim(-1.5, 0.5)
    ax.set_xlabel("kappa_n r")
    return fig


def fig6(d):
    _, t = load(os.path.join(d, "fig6_total_b.csv"))
    fig, ax = plt.subplots(2, 1, figsize=(6, 7))
    ax[0].plot(t[:, 0], t[:, 1], lw=0.7)
    ax[0].set_xlabel("kappa R")
    ax[0].set_ylabel("lambda_b total")
    ax[1].remove()
    for i, m in enumerate(range(4)):
        _, p = load(os.path.join(d, f"fig6_pattern_m{m}.csv"))
        a = fig.add_subplot(2, 4, 5 + i, projection="polar")
        a.plot(p[:, 0], p[:, 2], lw=0.8)
        a.set_title(f"m = {m}", fontsize=8)
        a.set_xticklabels([])
        a.set_yticklabels([])
    return fig


def fig7(d):
    _, t = load(os.path.join(d, "fig7_gaussian_total_b.csv"))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(t[:, 0], t[:, 1], lw=0.8)
    ax.set_xlabel("kappa sigma")
    ax.set_ylabel("lambda_b / 2 sigma")
    return fig


PLOTS = {2: fig2, 3: fig3, 4: fig4, 5: fig5, 6: fig6, 7: fig7}


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--datadir", default="figures")
    args = p.parse_args()
    for fig_id, plot in PLOTS.items():
        d = os.path.join(args.datadir, f"fig{fig_id}")
        if not os.path.isdir(d):
            continue
        fig = plot(d)
        fig.tight_layout()
        out = os.path.join(d, f"fig{fig_id}.png")
        fig.savefig(out, dpi=130)
        plt.close(fig)
        print(out)


if __name__ == "__main__":
    main()
