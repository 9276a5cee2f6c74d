"""Write the CSV data behind figures 2-5 into one directory.

    python scripts/make_figure_data.py [out_dir]
"""

import sys
import time
from pathlib import Path

from calogero.cli import figure_files


def main(out_dir: str = "figure_data") -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for figure in (2, 3, 4, 5):
        t0 = time.perf_counter()
        files = figure_files(figure, {})
        for name, text in files.items():
            (out / name).write_text(text)
        print(f"figure {figure}: {', '.join(sorted(files))} ({time.perf_counter() - t0:.2f} s)")


if __name__ == "__main__":
    main(*sys.argv[1:2])
