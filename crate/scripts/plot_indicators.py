"""Panel plots of the indicator CSVs written by `rkdg run`.

usage: python scripts/plot_indicators.py OUT_DIR T [T ...]

One row per time: log_h|J^l| per interface for every order, then the
largest time derivative per cell.
"""
import sys
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd

out = Path(sys.argv[1])
times = sys.argv[2:]
if not times:
    sys.exit(__doc__)

spatial = [pd.read_csv(out / f"indicators_spatial_{t}.csv") for t in times]
temporal = [pd.read_csv(out / f"indicators_temporal_{t}.csv") for t in times]
orders = [c for c in spatial[0].columns if c.startswith("loghJ")]
dcols = [c for c in temporal[0].columns if c.startswith("d")]

fig, axes = plt.subplots(len(times), len(orders) + 1, figsize=(3.2 * (len(orders) + 1), 2.6 * len(times)), squeeze=False)
for row, (t, s, d) in enumerate(zip(times, spatial, temporal)):
    for col, name in enumerate(orders):
        ax = axes[row][col]
        ax.plot(s["j"], s[name], ".", ms=2)
        ax.set_title(f"t={t} {name}", fontsize=8)
    ax = axes[row][-1]
    per_cell = d.groupby("j")[dcols[-1]].apply(lambda v: v.abs().max())
    ax.semilogy(per_cell.index, per_cell.values, lw=0.8)
    ax.set_title(f"t={t} max|{dcols[-1]}|", fontsize=8)
fig.tight_layout()
target = out / "indicators.png"
fig.savefig(target, dpi=130)
print(target)
