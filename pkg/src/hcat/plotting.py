"""Figure rendering for report output.

Every dictionary of cohomology dimensions found in a report's results is
rendered as a bar chart (PNG) with a CSV of the plotted values written
alongside, so figures can be audited without re-running the job.
"""

from __future__ import annotations

import csv
import os
from typing import Dict, List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def plot_dimension_profile(dims: Dict[int, int], title: str,
                           path_base: str) -> List[str]:
    """Bar chart of dimensions per degree at ``path_base`` + .png/.csv."""
    degrees = sorted(dims)
    if not degrees:
        degrees = [0]
        values = [0]
    else:
        lo, hi = degrees[0], degrees[-1]
        degrees = list(range(lo, hi + 1))
        values = [dims.get(d, 0) for d in degrees]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(degrees, values, color="#4878a8")
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_title(title)
    ax.set_xticks(degrees)
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    png = path_base + ".png"
    fig.savefig(png)
    plt.close(fig)
    csv_path = path_base + ".csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["degree", "dimension"])
        for d, v in zip(degrees, values):
            w.writerow([d, v])
    return [png, csv_path]


def _walk_dimension_dicts(results, prefix=""):
    """Yields (name, dims) for every {degree: dimension} mapping found."""
    if isinstance(results, dict):
        keys = list(results.keys())
        if keys and all(isinstance(v, int) for v in results.values()) and all(
                isinstance(k, int)
                or (isinstance(k, str) and k.lstrip("-").isdigit())
                for k in keys):
            yield prefix or "dimensions", {int(k): v
                                           for k, v in results.items()}
            return
        for k, v in results.items():
            sub = f"{prefix}.{k}" if prefix else str(k)
            yield from _walk_dimension_dicts(v, sub)


def render_report_figures(report: Dict, outdir: str) -> List[str]:
    """Renders every dimension profile in the report into ``outdir``."""
    os.makedirs(outdir, exist_ok=True)
    written: List[str] = []
    for name, dims in _walk_dimension_dicts(report.get("results", {})):
        safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in name)
        base = os.path.join(outdir, f"{report['command']}_{safe}")
        written.extend(plot_dimension_profile(
            dims, f"{report['command']}: {name}", base))
    return written
