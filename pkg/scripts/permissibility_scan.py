"""Permissibility over an (alpha, beta) grid for several couplings.

Writes one CSV per nu (same schema as ``calogero permissible-map``) and
prints the fraction of permissible cells and the largest number of
type-2 negative levels seen.

    python scripts/permissibility_scan.py [n_per_axis] [workers] [out_dir]
"""

import math
import sys
import time
from pathlib import Path

from calogero.cli import MAP_HEADER, csv_text, make_grid, permissible_map

NUS = (0.7, 0.9, 21 / 20, 1.3)


def main(n: int = 12, workers: int = 4, out_dir: str = "permissibility") -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    alphas = make_grid(-math.pi, math.pi, n)
    betas = make_grid(0.0, math.pi, n)
    for nu in NUS:
        t0 = time.perf_counter()
        rows = permissible_map(nu, alphas, betas, workers)
        ok = sum(1 for r in rows if r[3])
        worst = max(int(r[5]) for r in rows)
        (out / f"map_nu{nu:.3f}.csv").write_text(csv_text("permissible-map", MAP_HEADER, rows, f"nu={nu!r}"))
        print(f"nu = {nu:.3f}: {ok}/{len(rows)} permissible, max type-2 negatives {worst} "
              f"({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    argv = sys.argv[1:]
    kwargs = {}
    if len(argv) > 0:
        kwargs["n"] = int(argv[0])
    if len(argv) > 1:
        kwargs["workers"] = int(argv[1])
    if len(argv) > 2:
        kwargs["out_dir"] = argv[2]
    main(**kwargs)
