"""Plane directed graphs with a rotation system, face tracing and
pasting-scheme validation.

An embedding is encoded by a rotation system: for every vertex, the
counterclockwise cyclic order of the edge ends incident to it.  Each edge end
is the dart leaving that vertex along the edge, so ``(e, "out")`` at ``src(e)``
is the forward dart of ``e`` and ``(e, "in")`` at ``tgt(e)`` the backward one.

Faces are traced keeping the face on the right of the walk (next dart is the
counterclockwise successor of the reversed incoming dart).  An interior face
then reads ``sigma`` forwards followed by ``tau`` backwards, with ``sigma`` the
upper side of the face as drawn, so a 2-cell labelling a face goes from its top
boundary to its bottom one.  For the exterior face the same rule makes
``sigma`` the bottom path and ``tau`` the top path of the scheme.  Passing
``mirror=True`` reverses every rotation, which swaps the two sides.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Any, Hashable, Iterable, Mapping, Sequence

Id = Hashable

OUT = "out"
IN = "in"


class SchemeError(ValueError):
    """Raised when a scheme document is malformed or fails validation.

    ``kind`` is a short machine-readable tag ("directed-cycle", "loop", ...).
    """

    def __init__(self, kind: str, message: str, **details: Any):
        super().__init__(message)
        self.kind = kind
        self.details = details

    def to_json(self) -> dict:
        payload = {"kind": self.kind, "message": str(self)}
        payload.update({k: _jsonable(v) for k, v in self.details.items()})
        return payload


# errors that come from reading the document rather than from its geometry
PARSE_KINDS = frozenset({"malformed", "duplicate-id", "unknown-reference", "loop"})


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def id_key(x: Id):
    """Natural sort key for ids: ``F2`` < ``F10``, ints before strings."""
    if isinstance(x, int):
        return (0, x, ())
    parts = re.split(r"(\d+)", str(x))
    return (1, 0, tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts))


@dataclass(frozen=True)
class Edge:
    id: Id
    src: Id
    tgt: Id


Dart = tuple  # (edge id, +1 forward | -1 backward)


@dataclass(frozen=True)
class Walk:
    """A directed path, as a sequence of edge ids.

    An empty walk keeps its anchoring vertex in ``src`` (== ``tgt``).
    """

    edges: tuple
    src: Id
    tgt: Id

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


@dataclass(frozen=True)
class RawScheme:
    vertices: tuple
    edges: tuple  # of Edge, document order
    rotation: Mapping[Id, tuple]  # vertex -> ((edge, "out"|"in"), ...) ccw
    source: Id
    sink: Id
    exterior_boundary: tuple
    face_names: Mapping[Id, Id] = field(default_factory=dict)  # face id -> edge on its sigma
    mirrored: bool = False  # rotations were reversed on reading

    @cached_property
    def edge_map(self) -> dict:
        return {e.id: e for e in self.edges}

    def dart_tail(self, d: Dart) -> Id:
        e = self.edge_map[d[0]]
        return e.src if d[1] > 0 else e.tgt

    def dart_head(self, d: Dart) -> Id:
        e = self.edge_map[d[0]]
        return e.tgt if d[1] > 0 else e.src


@dataclass(frozen=True)
class Face:
    id: Id
    s: Id
    t: Id
    sigma: Walk
    tau: Walk
    boundary: tuple  # traced darts, starting with sigma
    is_exterior: bool = False

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "s": self.s,
            "t": self.t,
            "sigma": list(self.sigma.edges),
            "tau": list(self.tau.edges),
        }


@dataclass(frozen=True)
class PastingScheme:
    raw: RawScheme
    faces: tuple  # interior faces, sorted by id
    exterior: Face
    walks: tuple  # all traced boundary walks, exterior included

    @property
    def vertices(self):
        return self.raw.vertices

    @property
    def edges(self):
        return self.raw.edges

    @property
    def source(self):
        return self.raw.source

    @property
    def sink(self):
        return self.raw.sink

    @property
    def rotation(self):
        return self.raw.rotation

    @cached_property
    def face_map(self) -> dict:
        return {f.id: f for f in self.faces}

    def face(self, fid: Id) -> Face:
        return self.face_map[fid]

    @cached_property
    def face_ids(self) -> tuple:
        return tuple(f.id for f in self.faces)

    @cached_property
    def reachable(self) -> dict:
        """Reflexive directed reachability: vertex -> frozenset of vertices."""
        succ = _successors(self.raw)
        out = {}
        for v in self.vertices:
            seen = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in succ[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out[v] = frozenset(seen)
        return out

    def to_json(self) -> dict:
        top, bottom = top_bottom_paths(self)
        return {
            "source": self.source,
            "sink": self.sink,
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "faces": [f.to_json() for f in self.faces],
            "exterior": self.exterior.to_json(),
            "top": list(top.edges),
            "bottom": list(bottom.edges),
        }


# ---------------------------------------------------------------------------
# parsing


def parse_scheme(doc: Mapping[str, Any], mirror: bool = False) -> RawScheme:
    """Read a scheme document into an unvalidated :class:`RawScheme`."""
    if not isinstance(doc, Mapping):
        raise SchemeError("malformed", "scheme document must be a JSON object")
    for key in ("vertices", "edges", "rotation", "source", "sink", "exterior_boundary"):
        if key not in doc:
            raise SchemeError("malformed", f"missing key {key!r}")

    vertices = doc["vertices"]
    if not isinstance(vertices, list):
        raise SchemeError("malformed", "'vertices' must be a list")
    for v in vertices:
        _check_id(v, "vertex")
    if len(set(vertices)) != len(vertices):
        raise SchemeError("duplicate-id", "duplicate vertex id")
    vset = set(vertices)
    by_name = {str(v): v for v in vertices}

    if not isinstance(doc["edges"], list):
        raise SchemeError("malformed", "'edges' must be a list")
    edges = []
    seen = set()
    for item in doc["edges"]:
        if not isinstance(item, Mapping) or not {"id", "src", "tgt"} <= set(item):
            raise SchemeError("malformed", f"bad edge entry {item!r}")
        eid, src, tgt = item["id"], item["src"], item["tgt"]
        _check_id(eid, "edge")
        if eid in seen:
            raise SchemeError("duplicate-id", f"duplicate edge id {eid!r}", edge=eid)
        seen.add(eid)
        for v in (src, tgt):
            if v not in vset:
                raise SchemeError("unknown-reference", f"edge {eid!r} uses undefined vertex {v!r}", edge=eid)
        if src == tgt:
            raise SchemeError("loop", f"edge {eid!r} is a loop at {src!r}", edge=eid)
        edges.append(Edge(eid, src, tgt))
    edge_names = {str(e.id): e.id for e in edges}

    rot_doc = doc["rotation"]
    if not isinstance(rot_doc, Mapping):
        raise SchemeError("malformed", "'rotation' must be an object keyed by vertex")
    rotation = {}
    for key, ends in rot_doc.items():
        if str(key) not in by_name:
            raise SchemeError("unknown-reference", f"rotation given for unknown vertex {key!r}")
        if not isinstance(ends, list):
            raise SchemeError("malformed", f"rotation at {key!r} must be a list")
        seq = []
        for end in ends:
            if not isinstance(end, Mapping) or end.get("end") not in (OUT, IN) or "edge" not in end:
                raise SchemeError("malformed", f"bad rotation entry {end!r} at {key!r}")
            name = str(end["edge"])
            if name not in edge_names:
                raise SchemeError("unknown-reference", f"rotation at {key!r} mentions unknown edge {end['edge']!r}")
            seq.append((edge_names[name], end["end"]))
        if mirror:
            seq.reverse()
        rotation[by_name[str(key)]] = tuple(seq)

    for key in ("source", "sink"):
        if doc[key] not in vset:
            raise SchemeError("unknown-reference", f"{key} {doc[key]!r} is not a vertex")

    ext = doc["exterior_boundary"]
    if not isinstance(ext, list):
        raise SchemeError("malformed", "'exterior_boundary' must be a list of edge ids")
    for e in ext:
        if str(e) not in edge_names:
            raise SchemeError("unknown-reference", f"exterior boundary mentions unknown edge {e!r}")

    names = doc.get("faces", {})
    if not isinstance(names, Mapping):
        raise SchemeError("malformed", "'faces' must map face ids to an edge on their sigma side")
    face_names = {}
    for fid, e in names.items():
        if str(e) not in edge_names:
            raise SchemeError("unknown-reference", f"face {fid!r} named by unknown edge {e!r}")
        face_names[fid] = edge_names[str(e)]

    return RawScheme(
        vertices=tuple(vertices),
        edges=tuple(edges),
        rotation=rotation,
        source=doc["source"],
        sink=doc["sink"],
        # the mirror image walks around the exterior the other way
        exterior_boundary=tuple(edge_names[str(e)] for e in (reversed(ext) if mirror else ext)),
        face_names=face_names,
        mirrored=mirror,
    )


def _check_id(x, what):
    if isinstance(x, bool) or not (isinstance(x, str) or (isinstance(x, int) and x >= 0)):
        raise SchemeError("malformed", f"{what} id {x!r} must be a string or non-negative integer")


def scheme_to_document(scheme: PastingScheme | RawScheme) -> dict:
    """Canonical input document; re-parsing it yields the same scheme."""
    raw = scheme.raw if isinstance(scheme, PastingScheme) else scheme
    doc = {
        "vertices": list(raw.vertices),
        "edges": [{"id": e.id, "src": e.src, "tgt": e.tgt} for e in raw.edges],
        "rotation": {
            str(v): [{"edge": e, "end": end} for e, end in raw.rotation.get(v, ())]
            for v in raw.vertices
        },
        "source": raw.source,
        "sink": raw.sink,
        "exterior_boundary": list(raw.exterior_boundary),
    }
    if isinstance(scheme, PastingScheme):
        doc["exterior_boundary"] = list(scheme.exterior.sigma.edges) + list(reversed(scheme.exterior.tau.edges))
        doc["faces"] = {str(f.id): f.sigma.edges[0] for f in scheme.faces}
    elif raw.face_names and not raw.mirrored:
        doc["faces"] = {str(k): v for k, v in raw.face_names.items()}
    return doc


# ---------------------------------------------------------------------------
# face tracing


def _successors(raw: RawScheme) -> dict:
    succ = {v: [] for v in raw.vertices}
    for e in raw.edges:
        succ[e.src].append(e.tgt)
    return succ


def is_connected(raw: RawScheme) -> bool:
    if not raw.vertices:
        return False
    adj = {v: set() for v in raw.vertices}
    for e in raw.edges:
        adj[e.src].add(e.tgt)
        adj[e.tgt].add(e.src)
    start = raw.vertices[0]
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u] - seen:
            seen.add(w)
            queue.append(w)
    return len(seen) == len(raw.vertices)


def _check_rotation(raw: RawScheme) -> dict:
    """Validate the rotation and return dart -> ccw-next dart at its tail."""
    expected = {v: set() for v in raw.vertices}
    for e in raw.edges:
        expected[e.src].add((e.id, OUT))
        expected[e.tgt].add((e.id, IN))
    nxt = {}
    for v in raw.vertices:
        ends = raw.rotation.get(v, ())
        if len(set(ends)) != len(ends) or set(ends) != expected[v]:
            raise SchemeError("rotation", f"rotation at vertex {v!r} does not list exactly its incident edge ends", vertex=v)
        darts = [(e, 1 if end == OUT else -1) for e, end in ends]
        for i, d in enumerate(darts):
            nxt[d] = darts[(i + 1) % len(darts)]
    return nxt


def trace_faces(raw: RawScheme) -> list:
    """Boundary walks (tuples of darts) of every face of the embedding.

    Walks are produced in a deterministic order: each starts at the first
    unvisited dart, scanning edges in document order, forward dart first.
    """
    if not is_connected(raw):
        raise SchemeError("disconnected", "underlying undirected graph is not connected")
    nxt = _check_rotation(raw)
    seen = set()
    walks = []
    for e in raw.edges:
        for start in ((e.id, 1), (e.id, -1)):
            if start in seen:
                continue
            walk = []
            d = start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = nxt[(d[0], -d[1])]
            if d != start:
                raise SchemeError("rotation", "face tracing did not close up; rotation is inconsistent")
            walks.append(tuple(walk))
    v, e, f = len(raw.vertices), len(raw.edges), len(walks)
    if v - e + f != 2:
        raise SchemeError("non-planar", f"rotation system is not a plane embedding (V-E+F = {v - e + f})")
    return walks


def decompose_walk(raw: RawScheme, walk: Sequence[Dart]):
    """Split a face boundary into (s, t, sigma, tau) or return None.

    Succeeds iff the cyclic walk is one run of forward darts followed by one
    run of backward darts.
    """
    n = len(walk)
    signs = [d[1] for d in walk]
    changes = [i for i in range(n) if signs[i] != signs[i - 1]]
    if len(changes) != 2:
        return None
    start = next(i for i in changes if signs[i] > 0)
    rotated = walk[start:] + walk[:start]
    k = next(i for i, d in enumerate(rotated) if d[1] < 0)
    fwd, bwd = rotated[:k], rotated[k:]
    sigma = tuple(d[0] for d in fwd)
    tau = tuple(d[0] for d in reversed(bwd))
    s = raw.dart_tail(fwd[0])
    t = raw.dart_head(fwd[-1])
    return s, t, Walk(sigma, s, t), Walk(tau, s, t), tuple(rotated)


# ---------------------------------------------------------------------------
# validation


def find_directed_cycle(raw: RawScheme):
    """Return a list of vertices forming a directed cycle, or None."""
    graph = {v: set() for v in raw.vertices}
    for e in raw.edges:
        graph[e.tgt].add(e.src)  # predecessors
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        return list(exc.args[1])
    return None


def validate_scheme(raw: RawScheme) -> PastingScheme:
    """Check the pasting-scheme axioms and derive every face's boundary data."""
    if not is_connected(raw):
        raise SchemeError("disconnected", "underlying undirected graph is not connected")
    cycle = find_directed_cycle(raw)
    if cycle is not None:
        raise SchemeError("directed-cycle", "graph has a directed cycle", cycle=cycle)
    if raw.source == raw.sink:
        raise SchemeError("source-sink", "source and sink must be distinct")

    succ = _successors(raw)
    pred = {v: [] for v in raw.vertices}
    for e in raw.edges:
        pred[e.tgt].append(e.src)
    from_s = _closure(raw.source, succ)
    to_t = _closure(raw.sink, pred)
    for v in raw.vertices:
        if v not in from_s:
            raise SchemeError("unreachable", f"vertex {v!r} is not reachable from the source", vertex=v)
        if v not in to_t:
            raise SchemeError("unreachable", f"vertex {v!r} does not reach the sink", vertex=v)

    walks = trace_faces(raw)
    decomposed = []
    for walk in walks:
        parts = decompose_walk(raw, walk)
        if parts is None:
            raise SchemeError(
                "face-decomposition",
                "face boundary is not a directed path followed by a reversed directed path",
                boundary=[f"{e}{'+' if d > 0 else '-'}" for e, d in walk],
            )
        if parts[0] == parts[1]:
            raise SchemeError("degenerate-face", "face boundary has s_F = t_F", vertex=parts[0])
        decomposed.append(parts)

    ext_index = _find_exterior(raw, decomposed)
    s, t, sigma, tau, boundary = decomposed[ext_index]
    if (s, t) != (raw.source, raw.sink):
        raise SchemeError("exterior-mismatch", "exterior face does not run from source to sink")
    exterior = Face("exterior", s, t, sigma, tau, boundary, is_exterior=True)

    interior = [p for i, p in enumerate(decomposed) if i != ext_index]
    faces = _name_faces(raw, interior)
    return PastingScheme(raw=raw, faces=tuple(faces), exterior=exterior, walks=tuple(walks))


def _closure(start, adj):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _find_exterior(raw: RawScheme, decomposed) -> int:
    want = list(raw.exterior_boundary)
    exact = [i for i, p in enumerate(decomposed) if list(p[2].edges) + list(reversed(p[3].edges)) == want]
    if len(exact) == 1:
        return exact[0]
    # fall back to the edge multiset when the listed order is not the canonical one
    key = sorted(map(id_key, want))
    loose = [
        i for i, p in enumerate(decomposed)
        if sorted(map(id_key, p[2].edges + p[3].edges)) == key
    ]
    if len(loose) == 1:
        return loose[0]
    if not loose:
        raise SchemeError("exterior-mismatch", "exterior_boundary is not the boundary of any traced face")
    raise SchemeError(
        "exterior-mismatch",
        "exterior_boundary is ambiguous; list it as the bottom path followed by the reversed top path",
    )


def _name_faces(raw: RawScheme, interior) -> list:
    # names point at the sigma side of the document as written
    side = 3 if raw.mirrored else 2
    by_sigma_edge = {}
    for idx, p in enumerate(interior):
        for e in p[side].edges:
            by_sigma_edge[e] = idx
    names = {}
    for fid, e in raw.face_names.items():
        if e not in by_sigma_edge:
            raise SchemeError("unknown-reference", f"face {fid!r}: edge {e!r} is not on the sigma side of an interior face")
        idx = by_sigma_edge[e]
        if idx in names:
            raise SchemeError("duplicate-id", f"face named twice: {names[idx]!r} and {fid!r}")
        names[idx] = fid
    order = {e.id: i for i, e in enumerate(raw.edges)}
    taken = set(names.values())
    counter = 1
    for idx in sorted(range(len(interior)), key=lambda i: min(order[e] for e in interior[i][2].edges)):
        if idx in names:
            continue
        while f"F{counter}" in taken:
            counter += 1
        names[idx] = f"F{counter}"
        taken.add(names[idx])
    faces = [Face(names[i], *interior[i]) for i in range(len(interior))]
    return sorted(faces, key=lambda f: id_key(f.id))


def load_scheme(doc: Mapping[str, Any], mirror: bool = False) -> PastingScheme:
    return validate_scheme(parse_scheme(doc, mirror=mirror))


def top_bottom_paths(scheme: PastingScheme) -> tuple:
    """(top, bottom) boundary paths of the scheme, both from source to sink."""
    return scheme.exterior.tau, scheme.exterior.sigma


def to_dot(scheme: PastingScheme | RawScheme) -> str:
    raw = scheme.raw if isinstance(scheme, PastingScheme) else scheme
    lines = ["digraph scheme {", "  rankdir=LR;"]
    for v in raw.vertices:
        shape = "doublecircle" if v in (raw.source, raw.sink) else "circle"
        lines.append(f'  "{v}" [shape={shape}];')
    for e in raw.edges:
        lines.append(f'  "{e.src}" -> "{e.tgt}" [label="{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def rotation_from_coordinates(coords: Mapping[Id, tuple], edges: Iterable[Edge]) -> dict:
    """Counterclockwise rotation for a straight-line drawing (y axis up).

    Parallel edges cannot be told apart by angle; supply the rotation by hand
    for drawings that have them.
    """
    import math

    ends = {v: [] for v in coords}
    for e in edges:
        (x0, y0), (x1, y1) = coords[e.src], coords[e.tgt]
        ends[e.src].append((math.atan2(y1 - y0, x1 - x0), (e.id, OUT)))
        ends[e.tgt].append((math.atan2(y0 - y1, x0 - x1), (e.id, IN)))
    return {v: tuple(end for _, end in sorted(items)) for v, items in ends.items()}
