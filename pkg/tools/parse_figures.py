"""Turn the xymatrix AR-quiver figures of a LaTeX source into fixture JSON.

Usage: python3 tools/parse_figures.py SOURCE.md OUTDIR

Each figure is a grid; a cell holds a column-vector label (top entry =
branch 1) and arrow directives such as ``\\ar[dr]`` or ``\\ar@{.>}[ll]``.
Nodes drawn twice at the boundary share a label and are merged.
"""

import json
import re
import sys
from pathlib import Path

FIGURES = {
    "s3-kx2": 0,
    "s4-kx2": 1,
    "s3-kx3": 2,
    "s2-l22": 3,
    "s3-l22": 4,
}

STEP = {"u": (-1, 0), "d": (1, 0), "l": (0, -1), "r": (0, 1)}


def matrices(text):
    """Yield the bodies of xymatrix environments with branch-vector cells."""
    for m in re.finditer(r"\\xymatrix@[^{]*\{", text):
        depth, i = 1, m.end()
        while depth:
            c = text[i]
            depth += c == "{"
            depth -= c == "}"
            i += 1
        body = text[m.end():i - 1]
        if re.match(r"\s*&?\s*&?\s*\{\\begin\{smallmatrix\}[A-Z]", body) or body.lstrip().startswith("& {") \
                or body.lstrip().startswith("{\\begin"):
            yield body


def split_top(text, sep):
    """Split at ``sep`` occurrences outside braces."""
    parts, depth, start, i = [], 0, 0, 0
    while i < len(text):
        c = text[i]
        if c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


def clean_label(cell):
    mt = re.search(r"\\begin\{smallmatrix\}(.*?)\\end\{smallmatrix\}", cell, re.S)
    if not mt:
        return None
    rows = [r.strip() for r in mt.group(1).split("\\\\")]
    out = []
    for r in rows:
        r = r.replace("\\Lambda", "A").replace("Lambda", "A").replace("\\oplus", "+")
        r = re.sub(r"\s", "", r)
        r = re.sub(r"([SP])_(\d)", r"\1\2", r)
        out.append("+".join(sorted(r.split("+"))))
    return "(" + ",".join(out) + ")"


def parse(body):
    grid = [split_top(r, "&") for r in split_top(body, "\\\\")]
    labels = {}
    for i, row in enumerate(grid):
        for j, cell in enumerate(row):
            lab = clean_label(cell)
            if lab:
                labels[(i, j)] = lab
    solid, dotted = [], []
    for (i, j), lab in labels.items():
        cell = grid[i][j]
        for mt in re.finditer(r"\\ar(@\{\.>\})?(?:@<[^>]*>)?\[([udlr]+)\]", cell):
            di = sum(STEP[c][0] for c in mt.group(2))
            dj = sum(STEP[c][1] for c in mt.group(2))
            tgt = labels[(i + di, j + dj)]
            (dotted if mt.group(1) else solid).append([lab, tgt])
    nodes = sorted(set(labels.values()))
    dedup = lambda es: sorted({tuple(e) for e in es})
    return {"nodes": nodes, "solid": [list(e) for e in dedup(solid)],
            "dotted": [list(e) for e in dedup(dotted)]}


def main():
    text = Path(sys.argv[1]).read_text()
    out = Path(sys.argv[2])
    out.mkdir(parents=True, exist_ok=True)
    bodies = list(matrices(text))
    for name, idx in FIGURES.items():
        data = parse(bodies[idx])
        (out / f"{name}.json").write_text(json.dumps(data, indent=1) + "\n")
        print(name, len(data["nodes"]), len(data["solid"]), len(data["dotted"]))


if __name__ == "__main__":
    main()
