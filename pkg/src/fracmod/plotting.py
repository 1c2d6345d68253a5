"""Figure rendering for stored bound-report runs."""

from __future__ import annotations

import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def render_report_figures(reports, out_dir: str) -> list:
    """One figure per report family: lhs/rhs and ratio against h (or index).

    Returns the list of written file paths.
    """
    groups = defaultdict(list)
    for r in reports:
        groups[r.name].append(r)

    written = []
    for name in sorted(groups):
        grp = groups[name]
        hs = [r.params.get("h") for r in grp]
        have_h = all(h is not None and h > 0 for h in hs)
        xs = hs if have_h else list(range(len(grp)))
        lhs = [r.lhs for r in grp]
        rhs = [r.rhs for r in grp]
        ratio = [r.ratio for r in grp]

        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
        ax1.plot(xs, lhs, "o-", label="lhs")
        ax1.plot(xs, rhs, "s--", label="rhs")
        ax2.plot(xs, ratio, "o-", color="tab:red")
        ax2.axhline(1.0, color="gray", lw=0.8)
        for ax, ylab in ((ax1, "bound sides"), (ax2, "ratio lhs/rhs")):
            ax.set_xlabel("h" if have_h else "case index")
            ax.set_ylabel(ylab)
            if have_h:
                ax.set_xscale("log")
        if have_h and all(v > 0 for v in lhs + rhs):
            ax1.set_yscale("log")
        ax1.legend(fontsize=8)
        fig.suptitle(name)
        fig.tight_layout()
        path = os.path.join(out_dir, f"{name}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
