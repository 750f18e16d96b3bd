"""Regenerate the bundled scheme documents and the sample inputs in schemes/.

The two drawn diagrams are given by vertex coordinates (y axis up) and their
rotation systems are read off the straight-line drawing.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from graypaste.corpus import FIXED
from graypaste.scheme import Edge, rotation_from_coordinates

ROOT = Path(__file__).resolve().parent.parent

INTRO_EDGES = [
    ("a", "C", "A"), ("b", "A", "B"), ("c", "B", "E"), ("e", "A", "D"), ("f", "D", "B"), ("g", "D", "E"),
    ("d", "C", "D"), ("h", "C", "F"), ("i", "F", "G"), ("l", "D", "G"), ("m", "G", "E"),
]


def drawn(coords, edges, source, sink, exterior, faces) -> dict:
    rot = rotation_from_coordinates(coords, [Edge(*e) for e in edges])
    return {
        "vertices": list(coords),
        "edges": [{"id": a, "src": b, "tgt": c} for a, b, c in edges],
        "rotation": {v: [{"edge": e, "end": end} for e, end in rot[v]] for v in coords},
        "source": source,
        "sink": sink,
        "exterior_boundary": exterior,
        "faces": faces,
    }


def figure1() -> dict:
    coords = {"s": (3, -2), "v1": (4, -1), "v2": (5, -1), "v3": (4, -2), "t": (6, -2), "v4": (4, -3), "v5": (5, -3)}
    edges = [
        ("e1", "s", "v3"), ("e2", "s", "v1"), ("e3", "v1", "v2"), ("e4", "v3", "v2"), ("e5", "v2", "t"),
        ("e6", "v3", "t"), ("e7", "s", "v4"), ("e8", "v4", "v5"), ("e9", "v5", "t"), ("e10", "v3", "v5"),
    ]
    return drawn(coords, edges, "s", "t", ["e7", "e8", "e9", "e5", "e3", "e2"], {"F1": "e2", "F2": "e5", "F3": "e1", "F4": "e6"})


def intro() -> dict:
    coords = {"C": (1, -2), "A": (2, -1), "B": (4, -1), "D": (3, -2), "E": (5, -2), "F": (2, -3), "G": (4, -3)}
    faces = {"alpha": "b", "beta": "a", "gamma": "c", "phi": "g", "delta": "d"}
    return drawn(coords, INTRO_EDGES, "C", "E", ["h", "i", "m", "c", "b", "a"], faces)


def intro_labels() -> dict:
    return {
        "cells0": {v: {} for v in "ABCDEFG"},
        "cells1": {x: {"dom": s, "cod": t} for x, s, t in INTRO_EDGES},
        "cells2": {
            "α": {"dom": ["b"], "cod": ["e", "f"]},
            "β": {"dom": ["a", "e"], "cod": ["d"]},
            "γ": {"dom": ["f", "c"], "cod": ["g"]},
            "φ": {"dom": ["g"], "cod": ["l", "m"]},
            "δ": {"dom": ["d", "l"], "cod": ["h", "i"]},
        },
        "vertex_labels": {v: v for v in "ABCDEFG"},
        "edge_labels": {x: x for x, _, _ in INTRO_EDGES},
        "face_labels": {"alpha": "α", "beta": "β", "gamma": "γ", "phi": "φ", "delta": "δ"},
    }


def cyclic() -> dict:
    """Two vertices joined both ways: planar, but not acyclic."""
    return {
        "vertices": ["s", "t"],
        "edges": [{"id": "x", "src": "s", "tgt": "t"}, {"id": "y", "src": "t", "tgt": "s"}],
        "rotation": {"s": [{"edge": "x", "end": "out"}, {"edge": "y", "end": "in"}],
                     "t": [{"edge": "y", "end": "out"}, {"edge": "x", "end": "in"}]},
        "source": "s",
        "sink": "t",
        "exterior_boundary": ["x", "y"],
    }


def write(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--package-data", action="store_true", help="also rewrite src/graypaste/data/")
    args = ap.parse_args()
    drawn_docs = {"figure1": figure1(), "intro": intro(), "intro_labels": intro_labels()}
    if args.package_data:
        for name, doc in drawn_docs.items():
            write(ROOT / "src" / "graypaste" / "data" / f"{name}.json", doc)
    out = ROOT / "schemes"
    out.mkdir(exist_ok=True)
    for name, make in FIXED.items():
        write(out / f"{name}.json", make())
    write(out / "intro_labels.json", drawn_docs["intro_labels"])
    write(out / "cyclic.json", cyclic())
    print(f"wrote {len(FIXED) + 2} documents to {out}")


if __name__ == "__main__":
    main()
