"""Regenerate the CSV datasets behind figures 2 to 7.

    python scripts/reproduce_figures.py --outdir figures/ --ids 4 6
"""
import argparse
import json
import os
import time

from cavscat.cli import RunManifest
from cavscat.figures import PARAMETERS, make_figure


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--outdir", default="figures")
    p.add_argument("--ids", type=int, nargs="*", default=sorted(PARAMETERS))
    p.add_argument("--threads", type=int, default=1)
    args = p.parse_args()
    for fig in args.ids:
        t0 = time.perf_counter()
        outdir = os.path.join(args.outdir, f"fig{fig}")
        paths = make_figure(fig, outdir, args.threads)
        RunManifest("figure", dict(PARAMETERS[fig], threads=args.threads), output_paths=paths,
                    extra={"figure": fig}).write(os.path.join(outdir, f"fig{fig}_manifest.json"))
        print(f"figure {fig}: {len(paths)} files in {time.perf_counter() - t0:.1f} s")
        for path in paths:
            print("   ", path)


if __name__ == "__main__":
    main()
