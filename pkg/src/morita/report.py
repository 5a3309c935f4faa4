"""Figure and CSV rendering for the CLI report path.

Writes a delimited summary of every residual check next to matplotlib
figures: a bar chart of the coherence residuals, a heatmap of the character
Gram matrix, and the character table of the tube algebra when one can be
built from the file.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .annular import build_algebra
from .dualdata import assemble_dual
from .invertibility import character_gram, check_invertible
from .repdecomp import DEFAULT_SEED, decompose
from .skeletal import (BimoduleData, ModuleData, verify_pentagons,
                       verify_unit_blocks, verify_unitarity)

FLOOR = 1e-17


def _residual_rows(data):
    tol = data.tolerance
    rows = []
    unit = verify_unitarity(data)
    for fam, res in unit.residuals.items():
        rows.append(("unitarity", fam, res, tol, res < tol))
    pent = verify_pentagons(data)
    for word, res in pent.residuals.items():
        rows.append(("pentagon", word, res, tol, res < tol))
    for fam, res in verify_unit_blocks(data).items():
        rows.append(("unit-gauge", fam, res, tol, res < tol))
    return rows


def write_report(data, outdir, seed: int = DEFAULT_SEED) -> list[str]:
    """Write report.csv plus PNG figures into `outdir`; returns the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    rows = _residual_rows(data)

    gram = None
    chars = None
    char_labels = None
    if isinstance(data, BimoduleData):
        gram = character_gram(data)
        verdict = check_invertible(data)
        rows.append(("invertibility", "gram-identity",
                     float(np.max(np.abs(gram - np.eye(len(gram))))),
                     data.tolerance, verdict.invertible))
        rows.append(("invertibility", "fpdim-match",
                     abs(verdict.fpdim_c - verdict.fpdim_d), 1e-8,
                     abs(verdict.fpdim_c - verdict.fpdim_d) < 1e-8))
        mod = data.as_module()
    elif isinstance(data, ModuleData):
        mod = data
    else:
        mod = None

    irreps = None
    if mod is not None:
        alg = build_algebra(mod)
        irreps = decompose(alg, seed=seed)
        chars = np.array([v.char for v in irreps])
        char_labels = [f"V{v.id} (dim {v.dim})" for v in irreps]
        if gram is None and isinstance(data, ModuleData):
            bim = assemble_dual(mod, seed=seed, tolerance=data.tolerance)
            gram = character_gram(bim)

    csv_path = out / "report.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["section", "check", "residual", "threshold", "passed"])
        for section, check, res, thr, ok in rows:
            writer.writerow([section, check, f"{res:.6e}", f"{thr:.1e}",
                             "pass" if ok else "fail"])
    written.append(str(csv_path))

    if irreps is not None:
        import json

        irr_path = out / "irreps.json"
        irr_path.write_text(json.dumps([v.document() for v in irreps],
                                       sort_keys=True) + "\n", encoding="utf-8")
        written.append(str(irr_path))

    labels = [f"{sec}:{chk}" for sec, chk, *_ in rows]
    values = [max(res, FLOOR) for _, _, res, _, _ in rows]
    thresholds = [thr for _, _, _, thr, _ in rows]
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(rows)), 4))
    colors = ["tab:blue" if ok else "tab:red" for *_, ok in rows]
    ax.bar(range(len(rows)), values, color=colors)
    ax.plot(range(len(rows)), thresholds, "k--", lw=1, label="threshold")
    ax.set_yscale("log")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("max residual")
    ax.set_title("coherence residuals")
    ax.legend()
    fig.tight_layout()
    res_path = out / "residuals.png"
    fig.savefig(res_path, dpi=150)
    plt.close(fig)
    written.append(str(res_path))

    if gram is not None:
        fig, ax = plt.subplots(figsize=(4.5, 4))
        im = ax.imshow(gram.real, cmap="viridis")
        for (i, j), val in np.ndenumerate(gram.real):
            ax.text(j, i, f"{val:.2g}", ha="center", va="center",
                    color="white" if val < gram.real.max() / 2 else "black",
                    fontsize=8)
        ax.set_title("character Gram matrix")
        ax.set_xlabel("label c'")
        ax.set_ylabel("label c")
        fig.colorbar(im, ax=ax, shrink=0.85)
        fig.tight_layout()
        gram_path = out / "gram_matrix.png"
        fig.savefig(gram_path, dpi=150)
        plt.close(fig)
        written.append(str(gram_path))

    if chars is not None:
        fig, axes = plt.subplots(1, 2, figsize=(9, 3 + 0.2 * len(chars)))
        for ax, part, name in ((axes[0], chars.real, "Re"),
                               (axes[1], chars.imag, "Im")):
            im = ax.imshow(part, aspect="auto", cmap="RdBu_r",
                           vmin=-np.max(np.abs(chars)), vmax=np.max(np.abs(chars)))
            ax.set_yticks(range(len(char_labels)))
            ax.set_yticklabels(char_labels, fontsize=8)
            ax.set_xlabel("tube basis index")
            ax.set_title(f"{name} of characters")
            fig.colorbar(im, ax=ax, shrink=0.8)
        fig.tight_layout()
        char_path = out / "character_table.png"
        fig.savefig(char_path, dpi=150)
        plt.close(fig)
        written.append(str(char_path))

    return written
