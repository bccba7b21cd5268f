#!/usr/bin/env python3
"""Extract the real-life benchmark tables into plain CSV files.

The tables are taken from the `rdatasets` PyPI package, which redistributes
the R dataset collection:

  boston.csv    MASS::Boston            (n=506,  13 features, target medv)
  concrete.csv  modeldata::concrete     (n=1030,  8 features, target compressive_strength)

Usage: python3 tools/fetch_datasets.py [output_dir]   (default: data/)
Requires: pip install rdatasets
"""

import pathlib
import sys

TABLES = {
    "boston.csv": ("MASS", "Boston"),
    "concrete.csv": ("modeldata", "concrete"),
}


def main() -> int:
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)
    try:
        import rdatasets
    except ImportError:
        print("rdatasets is not installed: pip install rdatasets", file=sys.stderr)
        return 1
    for name, (package, item) in TABLES.items():
        frame = rdatasets.data(package, item)
        frame = frame.drop(columns=[c for c in frame.columns if c == "rownames"])
        frame.to_csv(out / name, index=False)
        print(f"{out / name}: {frame.shape[0]} rows, {frame.shape[1]} columns")
    return 0


if __name__ == "__main__":
    sys.exit(main())
