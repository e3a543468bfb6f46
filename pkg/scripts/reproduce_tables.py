"""Regenerate the plate and buckling comparison tables for ellipses with ab = 1.

Usage: python3 scripts/reproduce_tables.py [--json out.json]
"""
import argparse
from pathlib import Path

from framebound import bounds
from framebound.io import dumps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", type=Path, help="also write both tables as JSON")
    args = ap.parse_args()
    plate, buckling = bounds.plate_table(), bounds.buckling_table()
    print(plate.to_text())
    print(buckling.to_text())
    if args.json:
        args.json.write_text(dumps({"plate": plate.as_dict(), "buckling": buckling.as_dict()}) + "\n")


if __name__ == "__main__":
    main()
