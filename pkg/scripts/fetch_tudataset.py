#!/usr/bin/env python3
"""Download TUDataset benchmark corpora (MUTAG, PTC_FM, ...).

Fetches <name>.zip from the public graph-learning dataset mirror and
extracts the flat files into <data-root>/<name>/. Needs outbound
network access; run it once on a connected machine, then point
VSGRAPH_DATA_ROOT (or ./data) at the result.

Usage:
    python scripts/fetch_tudataset.py [--root data] [MUTAG PTC_FM ...]
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import urllib.request
import zipfile

MIRRORS = (
    "https://www.chrsmrrs.com/graphkerneldatasets/{name}.zip",
    "https://ls11-www.cs.tu-dortmund.de/people/morris/graphkerneldatasets/{name}.zip",
)
DEFAULT_NAMES = ("MUTAG", "PTC_FM")


def fetch(name: str, root: str) -> bool:
    target = os.path.join(root, name)
    if os.path.isfile(os.path.join(target, f"{name}_A.txt")):
        print(f"{name}: already present at {target}")
        return True
    last_err: Exception | None = None
    for mirror in MIRRORS:
        url = mirror.format(name=name)
        try:
            print(f"{name}: downloading {url}")
            with urllib.request.urlopen(url, timeout=60) as resp:
                blob = resp.read()
            break
        except Exception as exc:  # try the next mirror
            last_err = exc
    else:
        print(f"{name}: all mirrors failed ({last_err})", file=sys.stderr)
        return False
    os.makedirs(root, exist_ok=True)
    with zipfile.ZipFile(io.BytesIO(blob)) as zf:
        # archives contain a single <name>/ directory of flat files
        zf.extractall(root)
    ok = os.path.isfile(os.path.join(target, f"{name}_A.txt"))
    print(f"{name}: {'extracted to ' + target if ok else 'unexpected layout'}")
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("names", nargs="*", default=list(DEFAULT_NAMES),
                        help="dataset names (default: MUTAG PTC_FM)")
    parser.add_argument("--root",
                        default=os.environ.get("VSGRAPH_DATA_ROOT", "data"),
                        help="target data root (default: $VSGRAPH_DATA_ROOT or ./data)")
    args = parser.parse_args()
    names = args.names or list(DEFAULT_NAMES)
    failures = [n for n in names if not fetch(n, args.root)]
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
