from __future__ import annotations

import copy
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graypaste.corpus import (
    SchemeBuilder,
    bigon_document,
    load_data,
    random_scheme_document,
    single_edge_document,
)
from graypaste.scheme import (
    SchemeError,
    find_directed_cycle,
    load_scheme,
    parse_scheme,
    scheme_to_document,
    top_bottom_paths,
    trace_faces,
    validate_scheme,
)


def edge_doc(vertices, edges, rotation, source="s", sink="t", exterior=()):
    return {
        "vertices": vertices,
        "edges": [{"id": i, "src": a, "tgt": b} for i, a, b in edges],
        "rotation": {v: [{"edge": e, "end": end} for e, end in ends] for v, ends in rotation.items()},
        "source": source,
        "sink": sink,
        "exterior_boundary": list(exterior),
    }


def boundary_of(face):
    return [(e, 1) for e in face.sigma.edges] + [(e, -1) for e in reversed(face.tau.edges)]


def cyclic_equal(a, b):
    a, b = list(a), list(b)
    return len(a) == len(b) and any(a[k:] + a[:k] == b for k in range(max(len(a), 1)))


# -- parsing -----------------------------------------------------------------


def test_parse_figure1_counts():
    raw = parse_scheme(load_data("figure1"))
    assert (len(raw.vertices), len(raw.edges)) == (7, 10)


def test_parse_single_edge():
    raw = parse_scheme(single_edge_document())
    assert (len(raw.vertices), len(raw.edges)) == (2, 1)


def test_parse_rejects_undefined_vertex():
    doc = single_edge_document()
    doc["edges"][0]["tgt"] = "nowhere"
    with pytest.raises(SchemeError) as err:
        parse_scheme(doc)
    assert err.value.kind == "unknown-reference"


@pytest.mark.parametrize(
    "mutate, kind",
    [
        (lambda d: d.pop("source"), "malformed"),
        (lambda d: d["vertices"].append("s"), "duplicate-id"),
        (lambda d: d["edges"].append(dict(d["edges"][0])), "duplicate-id"),
        (lambda d: d["rotation"]["s"].append({"edge": "zz", "end": "out"}), "unknown-reference"),
        (lambda d: d["rotation"]["s"].append({"edge": "e", "end": "sideways"}), "malformed"),
        (lambda d: d["edges"].__setitem__(0, {"id": "e", "src": "s", "tgt": "s"}), "loop"),
        (lambda d: d["vertices"].append(True), "malformed"),
    ],
)
def test_parse_errors(mutate, kind):
    doc = single_edge_document()
    mutate(doc)
    with pytest.raises(SchemeError) as err:
        parse_scheme(doc)
    assert err.value.kind == kind


# -- tracing -----------------------------------------------------------------


def test_trace_figure1_has_five_faces():
    walks = trace_faces(parse_scheme(load_data("figure1")))
    assert len(walks) == 5
    assert 7 - 10 + len(walks) == 2


def test_trace_single_edge_and_bigon():
    assert len(trace_faces(parse_scheme(single_edge_document()))) == 1
    assert len(trace_faces(parse_scheme(bigon_document()))) == 2


def test_trace_rejects_non_planar_rotation():
    # K4 drawn with one rotation flipped: face count breaks Euler's formula
    doc = SchemeBuilder("s", "t", "e0")
    doc.glue(0, 1, ["a", "b"], ["v"])
    doc.glue(0, 2, ["c"])
    d = doc.document()
    d["rotation"]["v"].reverse()
    d["rotation"]["s"] = list(reversed(d["rotation"]["s"]))
    with pytest.raises(SchemeError) as err:
        validate_scheme(parse_scheme(d))
    assert err.value.kind in {"non-planar", "rotation", "face-decomposition", "exterior-mismatch"}


# -- validation --------------------------------------------------------------


def test_figure1_faces():
    sc = load_scheme(load_data("figure1"))
    got = {f.id: (f.s, f.t, f.sigma.edges, f.tau.edges) for f in sc.faces}
    assert got == {
        "F1": ("s", "v2", ("e2", "e3"), ("e1", "e4")),
        "F2": ("v3", "t", ("e4", "e5"), ("e6",)),
        "F3": ("s", "v5", ("e1", "e10"), ("e7", "e8")),
        "F4": ("v3", "t", ("e6",), ("e10", "e9")),
    }


def test_figure1_top_bottom():
    top, bottom = top_bottom_paths(load_scheme(load_data("figure1")))
    assert top.edges == ("e2", "e3", "e5")
    assert bottom.edges == ("e7", "e8", "e9")


def test_single_edge_top_equals_bottom():
    sc = load_scheme(single_edge_document())
    top, bottom = top_bottom_paths(sc)
    assert top.edges == bottom.edges == ("e",)
    assert sc.faces == ()


def test_bigon_orientation():
    sc = load_scheme(bigon_document())
    (f,) = sc.faces
    # the face was glued on top of f2, so the new edge f1 is its upper side
    assert (f.sigma.edges, f.tau.edges) == (("f1",), ("f2",))
    top, bottom = top_bottom_paths(sc)
    assert (top.edges, bottom.edges) == (("f1",), ("f2",))


def test_mirror_swaps_sides():
    (f,) = load_scheme(bigon_document(), mirror=True).faces
    assert (f.sigma.edges, f.tau.edges) == (("f2",), ("f1",))


def test_directed_two_cycle_rejected():
    d = edge_doc(
        ["s", "t"],
        [("x", "s", "t"), ("y", "t", "s")],
        {"s": [("x", "out"), ("y", "in")], "t": [("y", "out"), ("x", "in")]},
        exterior=["x", "y"],
    )
    with pytest.raises(SchemeError) as err:
        load_scheme(d)
    assert err.value.kind == "directed-cycle"


def test_triangle_with_back_edge_rejected():
    d = edge_doc(
        ["s", "v", "t"],
        [("a", "s", "v"), ("b", "v", "t"), ("c", "t", "s")],
        {"s": [("a", "out"), ("c", "in")], "v": [("b", "out"), ("a", "in")], "t": [("c", "out"), ("b", "in")]},
        exterior=["a", "b", "c"],
    )
    with pytest.raises(SchemeError) as err:
        load_scheme(d)
    assert err.value.kind == "directed-cycle"


def test_disconnected_rejected():
    d = edge_doc(
        ["s", "t", "u", "w"],
        [("a", "s", "t"), ("b", "u", "w")],
        {"s": [("a", "out")], "t": [("a", "in")], "u": [("b", "out")], "w": [("b", "in")]},
        exterior=["a"],
    )
    with pytest.raises(SchemeError) as err:
        load_scheme(d)
    assert err.value.kind == "disconnected"


def test_vertex_not_coreachable_rejected():
    # s -> t plus a dangling s -> u
    d = edge_doc(
        ["s", "t", "u"],
        [("a", "s", "t"), ("b", "s", "u")],
        {"s": [("a", "out"), ("b", "out")], "t": [("a", "in")], "u": [("b", "in")]},
        exterior=["a"],
    )
    with pytest.raises(SchemeError) as err:
        load_scheme(d)
    assert err.value.kind in {"source-sink", "unreachable"}


def test_source_equals_sink_rejected():
    d = single_edge_document()
    d["sink"] = "s"
    with pytest.raises(SchemeError):
        load_scheme(d)


def test_wrong_exterior_rejected():
    d = load_data("figure1")
    d["exterior_boundary"] = ["e2", "e3"]
    with pytest.raises(SchemeError) as err:
        load_scheme(d)
    assert err.value.kind == "exterior-mismatch"


def test_emit_round_trip(fixed):
    for sc in fixed.values():
        doc = scheme_to_document(sc)
        again = load_scheme(doc)
        assert again.to_json() == sc.to_json()
        assert scheme_to_document(again) == doc


def test_faces_named_by_default():
    d = load_data("figure1")
    del d["faces"]
    sc = load_scheme(d)
    assert sorted(f.id for f in sc.faces) == ["F1", "F2", "F3", "F4"]


# -- invariants over the corpus ---------------------------------------------


def _graph(sc):
    g = nx.MultiDiGraph()
    g.add_nodes_from(sc.vertices)
    g.add_edges_from((e.src, e.tgt, e.id) for e in sc.edges)
    return g


def test_corpus_invariants(corpus):
    for sc in corpus:
        v, e = len(sc.vertices), len(sc.edges)
        assert v - e + len(sc.faces) + 1 == 2
        g = _graph(sc)
        assert nx.is_directed_acyclic_graph(g)
        for f in sc.faces:
            assert f.s != f.t
            assert cyclic_equal(boundary_of(f), f.boundary)
        # every edge lies on a directed s -> t path
        down = nx.descendants(g, sc.source) | {sc.source}
        up = nx.ancestors(g, sc.sink) | {sc.sink}
        for edge in sc.edges:
            assert edge.src in down and edge.tgt in up
        top, bottom = top_bottom_paths(sc)
        if sc.faces:
            # shared edges are bridges hanging off the ends, on no interior face
            on_faces = {x for f in sc.faces for x in f.sigma.edges + f.tau.edges}
            assert not (set(top.edges) & set(bottom.edges)) & on_faces
        else:
            assert top.edges == bottom.edges


def test_decomposition_deterministic(corpus):
    for sc in corpus[:40]:
        again = load_scheme(scheme_to_document(sc))
        assert [f.to_json() for f in again.faces] == [f.to_json() for f in sc.faces]


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_documents_validate(seed):
    doc = random_scheme_document(random.Random(seed), max_faces=6)
    sc = load_scheme(doc)
    assert len(sc.faces) == len(doc["faces"])
    mirrored = load_scheme(copy.deepcopy(doc), mirror=True)
    for f in sc.faces:
        g = next(h for h in mirrored.faces if set(h.sigma.edges) == set(f.tau.edges))
        assert g.tau.edges == f.sigma.edges


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12))
def test_cycle_finder_agrees_with_networkx(pairs):
    pairs = [(a, b) for a, b in pairs if a != b]
    d = edge_doc(list(range(6)), [(f"e{k}", a, b) for k, (a, b) in enumerate(pairs)], {}, source=0, sink=5)
    raw = parse_scheme(d)
    g = nx.DiGraph()
    g.add_nodes_from(range(6))
    g.add_edges_from(pairs)
    cycle = find_directed_cycle(raw)
    assert (cycle is None) == nx.is_directed_acyclic_graph(g)
    if cycle is not None:
        assert cycle[0] == cycle[-1]
        assert all(g.has_edge(a, b) for a, b in zip(cycle[1:], cycle)) or all(
            g.has_edge(a, b) for a, b in zip(cycle, cycle[1:])
        )
