"""Write the named chain objects of the worked examples as fixture JSON.

Usage: python3 tools/make_fixtures.py OUTDIR

Each file holds the chain (branch 1 first) plus the algebra name and the
symbolic description it was built from, so a reader can check it by eye.
"""

import json
import sys
from pathlib import Path

from arkit import algebra
from arkit.named import tower

# (algebra, directory, file stem, modules, maps in (φ_{n-1}, ..., φ_1) order)
OBJECTS = [
    ("nakayama:1,2", "s3-kx2", "AS0", "AS0", "0,i"),
    ("nakayama:1,2", "s3-kx2", "S00", "S00", "0,0"),
    ("nakayama:1,2", "s3-kx2", "SSS", "SSS", "1,1"),
    ("nakayama:1,2", "s3-kx2", "AAS", "AAS", "i,1"),
    ("nakayama:1,2", "s3-kx2", "SS0", "SS0", "0,1"),
    ("nakayama:1,2", "s3-kx2", "ASS", "ASS", "1,i"),
    ("nakayama:1,2", "s3-kx2", "A00", "A00", "0,0"),
    ("nakayama:1,2", "s3-kx2", "AA0", "AA0", "0,1"),
    ("nakayama:1,2", "s3-kx2", "AAA", "AAA", "1,1"),
    ("nakayama:1,2", "s3-kx2", "SSA", "SSA", "π,1"),
    ("nakayama:1,2", "s3-kx2", "0AS", "0AS", "i,0"),
    ("nakayama:1,2", "s3-kx2", "0SS", "0SS", "1,0"),
    ("nakayama:1,2", "s3-kx2", "00S", "00S", "0,0"),
    ("nakayama:1,2", "s3-kx2", "SAA", "SAA", "1,π"),
    ("nakayama:1,2", "s2-kx2", "AS", "AS", "i"),
    ("nakayama:1,3", "s2-kx3", "MS", "MS", "i"),
    ("nakayama:1,3", "s2-kx3", "AM", "AM", "i"),
]


def main(outdir: str) -> None:
    out = Path(outdir)
    for alg_name, folder, stem, modules, maps in OBJECTS:
        alg = algebra.load(alg_name)
        x = tower(alg, modules, maps)
        data = {"algebra": alg_name, "symbol": modules, "maps_symbol": maps, **x.to_json()}
        path = out / folder / f"{stem}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
