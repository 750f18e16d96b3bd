"""Building scheme documents by gluing faces on top, plus a random corpus.

Every pasting scheme arises from its bottom path by repeatedly gluing a new
face onto a stretch of the current top path, and the rotation system can be
kept up to date locally while doing so.  :class:`SchemeBuilder` does exactly
that and emits an ordinary scheme document.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources

from .scheme import IN, OUT, PastingScheme, load_scheme


@dataclass
class SchemeBuilder:
    source: str = "s"
    sink: str = "t"
    edge: str = "e0"
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    rotation: dict = field(default_factory=dict)
    top: list = field(default_factory=list)
    bottom: list = field(default_factory=list)
    faces: dict = field(default_factory=dict)
    _ends: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = [self.source, self.sink]
        self.rotation = {self.source: [(self.edge, OUT)], self.sink: [(self.edge, IN)]}
        self._add_edge(self.edge, self.source, self.sink)
        self.top = [self.edge]
        self.bottom = [self.edge]

    def _add_edge(self, eid, src, tgt):
        if eid in self._ends:
            raise ValueError(f"duplicate edge id {eid!r}")
        self.edges.append({"id": eid, "src": src, "tgt": tgt})
        self._ends[eid] = (src, tgt)

    def _add_vertex(self, v):
        if v in self.rotation:
            raise ValueError(f"duplicate vertex id {v!r}")
        self.vertices.append(v)
        self.rotation[v] = []

    def _insert_after(self, v, anchor, end):
        rot = self.rotation[v]
        rot.insert(rot.index(anchor) + 1, end)

    def _insert_before(self, v, anchor, end):
        rot = self.rotation[v]
        rot.insert(rot.index(anchor), end)

    def top_vertices(self) -> list:
        out = [self.source]
        for e in self.top:
            out.append(self._ends[e][1])
        return out

    def glue(self, i: int, j: int, edges, vertices=(), face=None):
        """Glue a face over top-path edges ``top[i:j]`` with a new upper path.

        ``edges`` names the new path's edges, ``vertices`` its ``len(edges)-1``
        inner vertices.  The new face has the new path as its sigma side.
        """
        if not 0 <= i < j <= len(self.top):
            raise ValueError("need a non-empty stretch of the top path")
        if len(vertices) != len(edges) - 1:
            raise ValueError("a path of k edges has k-1 inner vertices")
        tv = self.top_vertices()
        u, w = tv[i], tv[j]
        chain = [u, *vertices, w]
        for v in vertices:
            self._add_vertex(v)
        for k, eid in enumerate(edges):
            self._add_edge(eid, chain[k], chain[k + 1])
        self._insert_after(u, (self.top[i], OUT), (edges[0], OUT))
        self._insert_before(w, (self.top[j - 1], IN), (edges[-1], IN))
        for k, v in enumerate(vertices):
            self.rotation[v] = [(edges[k + 1], OUT), (edges[k], IN)]
        self.top[i:j] = list(edges)
        if face is not None:
            self.faces[face] = edges[0]
        return face

    def glue_between(self, u, w, edges, vertices=(), face=None):
        tv = self.top_vertices()
        return self.glue(tv.index(u), tv.index(w), edges, vertices, face)

    def extend_source(self, vertex, edge):
        old = self.source
        self._add_vertex(vertex)
        self._add_edge(edge, vertex, old)
        self._insert_after(old, (self.top[0], OUT), (edge, IN))
        self.rotation[vertex] = [(edge, OUT)]
        self.source = vertex
        self.top.insert(0, edge)
        self.bottom.insert(0, edge)

    def extend_sink(self, vertex, edge):
        old = self.sink
        self._add_vertex(vertex)
        self._add_edge(edge, old, vertex)
        self._insert_before(old, (self.top[-1], IN), (edge, OUT))
        self.rotation[vertex] = [(edge, IN)]
        self.sink = vertex
        self.top.append(edge)
        self.bottom.append(edge)

    def document(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [dict(e) for e in self.edges],
            "rotation": {
                v: [{"edge": e, "end": end} for e, end in self.rotation[v]] for v in self.vertices
            },
            "source": self.source,
            "sink": self.sink,
            "exterior_boundary": list(self.bottom) + list(reversed(self.top)),
            "faces": dict(self.faces),
        }

    def build(self) -> PastingScheme:
        return load_scheme(self.document())


def random_scheme_document(rng: random.Random, max_faces: int = 7) -> dict:
    """A random pasting scheme document with at most ``max_faces`` interior faces."""
    n_faces = rng.randint(0, max_faces)
    b = SchemeBuilder("s", "t", "e0")
    counter = {"e": 1, "v": 1}

    def fresh(kind):
        name = f"{kind}{counter[kind]}"
        counter[kind] += 1
        return name

    face_ids = [f"F{k}" for k in range(1, n_faces + 1)]
    rng.shuffle(face_ids)
    made = 0
    while made < n_faces:
        roll = rng.random()
        if roll < 0.08:
            b.extend_source(fresh("v"), fresh("e"))
            continue
        if roll < 0.16:
            b.extend_sink(fresh("v"), fresh("e"))
            continue
        n = len(b.top)
        i = rng.randrange(n)
        j = rng.randint(i + 1, min(n, i + 3))
        k = rng.choice((1, 1, 2, 2, 3)) if j - i > 1 else rng.choice((1, 1, 1, 2, 3))
        edges = [fresh("e") for _ in range(k)]
        verts = [fresh("v") for _ in range(k - 1)]
        b.glue(i, j, edges, verts, face=face_ids[made])
        made += 1
    return b.document()


def random_corpus(n: int = 200, seed: int = 0, max_faces: int = 7) -> list:
    rng = random.Random(seed)
    return [load_scheme(random_scheme_document(rng, max_faces)) for _ in range(n)]


# ---------------------------------------------------------------------------
# fixed schemes


def three_bigon_document() -> dict:
    """Two bigons side by side on top of one big face (F1, F3 over F2)."""
    b = SchemeBuilder("s", "t", "c")
    b.glue(0, 1, ["a2", "b2"], ["v"], face="F2")
    b.glue(0, 1, ["a1"], face="F1")
    b.glue(1, 2, ["b1"], face="F3")
    return b.document()


def bigon_document() -> dict:
    b = SchemeBuilder("s", "t", "f2")
    b.glue(0, 1, ["f1"], face="F")
    return b.document()


def single_edge_document() -> dict:
    return SchemeBuilder("s", "t", "e").document()


def stacked_bigons_document() -> dict:
    """Two bigons in series, s -> v -> t (cells psi then phi)."""
    b = SchemeBuilder("s", "v", "e1'")
    b.extend_sink("t", "e2'")
    b.glue(0, 1, ["e1"], face="F")
    b.glue(1, 2, ["e2"], face="G")
    return b.document()


def series_bigons_document(n: int) -> dict:
    """``n`` bigons in series; every pair of faces is prec-comparable."""
    b = SchemeBuilder("v0", "v1", "d1")
    for k in range(2, n + 1):
        b.extend_sink(f"v{k}", f"d{k}")
    for k in range(1, n + 1):
        b.glue(k - 1, k, [f"u{k}"], face=f"B{k}")
    return b.document()


def exchange_document() -> dict:
    """Two rows of two bigons between an upper and a lower face.

    This is the shape used for the exchange relation: faces alpha, beta on
    the upper row, gamma, delta on the lower one, rho between the rows.
    """
    b = SchemeBuilder("S", "T", "q")
    b.glue(0, 1, ["k", "c1", "l", "d1", "m"], ["E", "F", "G", "H"], face="tau")
    b.glue_between("E", "F", ["c0"], face="gamma")
    b.glue_between("G", "H", ["d0"], face="delta")
    b.glue(0, 5, ["f", "a1", "g", "b1", "h"], ["A", "B", "C", "D"], face="rho")
    b.glue_between("A", "B", ["a0"], face="alpha")
    b.glue_between("C", "D", ["b0"], face="beta")
    b.glue(0, 5, ["p"], face="phi")
    return b.document()


def hexagon_document() -> dict:
    """Three bigons in series between an upper face rho and a lower face tau."""
    b = SchemeBuilder("S", "T", "q")
    b.glue(0, 1, ["f", "a1", "g", "b1", "h", "c1", "k"], ["A", "B", "C", "D", "E", "F"], face="tau")
    b.glue_between("A", "B", ["a0"], face="alpha")
    b.glue_between("C", "D", ["b0"], face="beta")
    b.glue_between("E", "F", ["c0"], face="gamma")
    b.glue(0, 7, ["p"], face="rho")
    return b.document()


def load_data(name: str) -> dict:
    """Read one of the bundled JSON documents (``figure1``, ``intro`` ...)."""
    text = resources.files("graypaste.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


FIXED = {
    "single-edge": single_edge_document,
    "bigon": bigon_document,
    "three-bigon": three_bigon_document,
    "stacked-bigons": stacked_bigons_document,
    "series-3": lambda: series_bigons_document(3),
    "series-4": lambda: series_bigons_document(4),
    "exchange": exchange_document,
    "hexagon": hexagon_document,
    "figure1": lambda: load_data("figure1"),
    "intro": lambda: load_data("intro"),
}


def fixed_schemes() -> dict:
    return {name: load_scheme(make()) for name, make in FIXED.items()}
