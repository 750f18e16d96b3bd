"""Labelled pasting schemes and their composites as symbolic terms.

A labelling sends vertices, edges and faces to 0-, 1- and 2-cell symbols of a
free signature.  Paths are stored in path order (first edge first); when
printed they follow the usual right-to-left composition, so the path ``a, b``
renders as ``ba``.

A face string is composed by applying its faces one after another to the
running boundary, which starts at the top path and ends at the bottom one.
Each application is a :class:`WhiskeredCell`; the printed composite lists
them top-down, i.e. in the reverse of application order, joined by ``·``.

Gray cells follow the convention ``gamma_{A,B}: (B first, then A) => (A first,
then B)`` where ``A`` sits on the later stretch of the boundary and ``B`` on the
earlier one.  A rewrite applies the earlier cell first, so it is sent to an
inverse Gray cell and its formal inverse to a Gray cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .rewriting import MorphismWord, Swap
from .scheme import PastingScheme, top_bottom_paths


class LabellingError(ValueError):
    def __init__(self, kind: str, message: str, **details: Any):
        super().__init__(message)
        self.kind = kind
        self.details = details

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": str(self), **self.details}


class CompositionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Signature:
    cells0: frozenset
    cells1: Mapping[str, tuple]  # name -> (dom, cod)
    cells2: Mapping[str, tuple]  # name -> (dom path, cod path)

    def __post_init__(self):
        for name, (dom, cod) in self.cells1.items():
            for end in (dom, cod):
                if end not in self.cells0:
                    raise LabellingError("unresolved-symbol", f"1-cell {name!r} refers to unknown 0-cell {end!r}")
        for name, (dom, cod) in self.cells2.items():
            ends = []
            for path in (dom, cod):
                if not path:
                    raise LabellingError("malformed", f"2-cell {name!r} has an empty boundary path")
                for x in path:
                    if x not in self.cells1:
                        raise LabellingError("unresolved-symbol", f"2-cell {name!r} refers to unknown 1-cell {x!r}")
                for x, y in zip(path, path[1:]):
                    if self.cells1[x][1] != self.cells1[y][0]:
                        raise LabellingError("malformed", f"2-cell {name!r}: {x!r} and {y!r} do not compose")
                ends.append((self.cells1[path[0]][0], self.cells1[path[-1]][1]))
            if ends[0] != ends[1]:
                raise LabellingError("malformed", f"2-cell {name!r}: domain and codomain are not parallel")


@dataclass(frozen=True)
class Labelling:
    signature: Signature
    vertex_labels: Mapping
    edge_labels: Mapping
    face_labels: Mapping

    def path(self, edges: Sequence) -> str:
        """Right-to-left composite of the labels of a path."""
        return "".join(str(self.edge_labels[e]) for e in reversed(edges))


def parse_labelling(doc: Mapping[str, Any]) -> Labelling:
    try:
        cells0 = doc.get("cells0", {})
        sig = Signature(
            frozenset(cells0),
            {k: (v["dom"], v["cod"]) for k, v in doc.get("cells1", {}).items()},
            {k: (tuple(v["dom"]), tuple(v["cod"])) for k, v in doc.get("cells2", {}).items()},
        )
        return Labelling(
            sig,
            dict(doc.get("vertex_labels", {})),
            dict(doc.get("edge_labels", {})),
            dict(doc.get("face_labels", {})),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise LabellingError("malformed", f"bad labelling document: {exc}") from exc


def free_labelling(scheme: PastingScheme) -> Labelling:
    """Label every cell by (the string form of) its own id."""
    edges = {e.id: str(e.id) for e in scheme.edges}
    sig = Signature(
        frozenset(str(v) for v in scheme.vertices),
        {str(e.id): (str(e.src), str(e.tgt)) for e in scheme.edges},
        {str(f.id): (tuple(edges[e] for e in f.sigma), tuple(edges[e] for e in f.tau)) for f in scheme.faces},
    )
    return Labelling(sig, {v: str(v) for v in scheme.vertices}, edges, {f.id: str(f.id) for f in scheme.faces})


@dataclass
class LabellingReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations}


def check_labelling(scheme: PastingScheme, lab: Labelling) -> LabellingReport:
    sig = lab.signature
    report = LabellingReport()

    def resolve(table, key, symbols, what):
        if key not in table:
            report.violations.append({"kind": "unlabelled", "cell": key, "dimension": what})
            return None
        sym = table[key]
        if sym not in symbols:
            raise LabellingError("unresolved-symbol", f"{what} {key!r} is labelled by unknown symbol {sym!r}")
        return sym

    vl = {v: resolve(lab.vertex_labels, v, sig.cells0, "vertex") for v in scheme.vertices}
    el = {e.id: resolve(lab.edge_labels, e.id, sig.cells1, "edge") for e in scheme.edges}
    for e in scheme.edges:
        sym = el[e.id]
        if sym is None:
            continue
        dom, cod = sig.cells1[sym]
        if (dom, cod) != (vl[e.src], vl[e.tgt]):
            report.violations.append(
                {"kind": "edge-boundary", "cell": e.id, "expected": [vl[e.src], vl[e.tgt]], "found": [dom, cod]}
            )
    for f in scheme.faces:
        sym = resolve(lab.face_labels, f.id, sig.cells2, "face")
        if sym is None:
            continue
        dom, cod = sig.cells2[sym]
        want = (tuple(el[e] for e in f.sigma), tuple(el[e] for e in f.tau))
        if (tuple(dom), tuple(cod)) != want:
            report.violations.append(
                {"kind": "face-boundary", "cell": f.id, "expected": [list(w) for w in want], "found": [list(dom), list(cod)]}
            )
    return report


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class WhiskeredCell:
    """One face applied inside the running boundary ``right + sigma + left``."""

    face: Any
    sigma: tuple
    tau: tuple
    left: tuple  # boundary edges after sigma
    right: tuple  # boundary edges before sigma

    @property
    def dom(self) -> tuple:
        return self.right + self.sigma + self.left

    @property
    def cod(self) -> tuple:
        return self.right + self.tau + self.left

    def render(self, lab: Labelling) -> str:
        return lab.path(self.left) + str(lab.face_labels[self.face]) + lab.path(self.right)


def _whisker(boundary: tuple, face, sigma: tuple, tau: tuple) -> WhiskeredCell:
    n = len(sigma)
    for k in range(len(boundary) - n + 1):
        if boundary[k:k + n] == sigma:
            return WhiskeredCell(face, sigma, tau, boundary[k + n:], boundary[:k])
    raise CompositionError(f"face {face!r} is not applicable: its domain is not a segment of the boundary")


@dataclass(frozen=True)
class CompositeTerm:
    entries: tuple  # printed order, top-down
    p: tuple  # top path
    q: tuple  # bottom path

    @property
    def applied(self) -> tuple:
        return tuple(reversed(self.entries))

    def type_check(self) -> bool:
        cur = self.p
        for cell in self.applied:
            if cell.dom != cur:
                return False
            cur = cell.cod
        return cur == self.q

    def render(self, lab: Labelling) -> str:
        if not self.entries:
            return f"1_{{{lab.path(self.p)}}}"
        return "·".join(cell.render(lab) for cell in self.entries)


def compose(s: Sequence, scheme: PastingScheme) -> CompositeTerm:
    """Apply the faces of ``s`` in order, starting from the top path."""
    top, bottom = top_bottom_paths(scheme)
    if sorted(map(str, s)) != sorted(map(str, scheme.face_ids)):
        raise CompositionError("a composite uses every face exactly once")
    cur = tuple(top.edges)
    applied = []
    for fid in s:
        f = scheme.face(fid)
        cell = _whisker(cur, fid, tuple(f.sigma.edges), tuple(f.tau.edges))
        applied.append(cell)
        cur = cell.cod
    if cur != tuple(bottom.edges):
        raise CompositionError("composite does not end at the bottom path")
    return CompositeTerm(tuple(reversed(applied)), tuple(top.edges), tuple(bottom.edges))


def _boundary_before(s: Sequence, i: int, scheme: PastingScheme) -> tuple:
    cur = tuple(top_bottom_paths(scheme)[0].edges)
    for fid in s[:i]:
        f = scheme.face(fid)
        cur = _whisker(cur, fid, tuple(f.sigma.edges), tuple(f.tau.edges)).cod
    return cur


# ---------------------------------------------------------------------------
# interchangers


@dataclass(frozen=True)
class InterchangerStep:
    """A whiskered Gray cell ``outer_left gamma_{left middle, right} outer_right``.

    ``source``/``target`` hold the two whiskered cells in application order.
    """

    left: Any  # face on the later stretch of the boundary
    right: Any  # face on the earlier stretch
    outer_left: tuple
    middle: tuple
    outer_right: tuple
    inverse: bool
    source: tuple
    target: tuple

    @property
    def faces(self) -> frozenset:
        return frozenset((self.left, self.right))

    def render(self, lab: Labelling) -> str:
        cell = f"γ_{{{lab.face_labels[self.left]}{lab.path(self.middle)},{lab.face_labels[self.right]}}}"
        if self.inverse:
            cell += "^{-1}"
        return lab.path(self.outer_left) + cell + lab.path(self.outer_right)

    def square(self, lab: Labelling) -> dict:
        """The two sides of the interchange, each listed top-down as printed."""
        return {
            "source": [c.render(lab) for c in reversed(self.source)],
            "target": [c.render(lab) for c in reversed(self.target)],
        }


def interchanger_of(swap: Swap, scheme: PastingScheme) -> InterchangerStep:
    s, i = swap.source, swap.position
    if not 0 <= i < len(s) - 1:
        raise ValueError(f"position {i} out of range")
    b = _boundary_before(s, i, scheme)
    fx, fy = scheme.face(s[i]), scheme.face(s[i + 1])
    x1 = _whisker(b, fx.id, tuple(fx.sigma.edges), tuple(fx.tau.edges))
    y1 = _whisker(x1.cod, fy.id, tuple(fy.sigma.edges), tuple(fy.tau.edges))
    y2 = _whisker(b, fy.id, tuple(fy.sigma.edges), tuple(fy.tau.edges))
    x2 = _whisker(y2.cod, fx.id, tuple(fx.sigma.edges), tuple(fx.tau.edges))
    x_start, y_start = len(x1.right), len(y2.right)
    if x_start < y_start:
        early, late, inverse = x1, y2, False
    else:
        early, late, inverse = y2, x1, True
    lo = len(early.right) + len(early.sigma)
    hi = len(late.right)
    if lo > hi:
        raise CompositionError(f"faces {s[i]!r} and {s[i + 1]!r} overlap in the boundary")
    return InterchangerStep(
        left=late.face,
        right=early.face,
        outer_left=late.left,
        middle=b[lo:hi],
        outer_right=early.right,
        inverse=inverse,
        source=(x1, y1),
        target=(y2, x2),
    )


def word_to_steps(word: MorphismWord, scheme: PastingScheme) -> list:
    return [interchanger_of(sw, scheme) for sw in word.swaps()]


def transport(term: CompositeTerm, step: InterchangerStep) -> CompositeTerm:
    """Replace the step's source pair inside ``term`` by its target pair."""
    applied = list(term.applied)
    for k in range(len(applied) - 1):
        if (applied[k], applied[k + 1]) == step.source:
            applied[k:k + 2] = list(step.target)
            return CompositeTerm(tuple(reversed(applied)), term.p, term.q)
    raise CompositionError("the step's source does not occur in the term")


def steps_cancel(first: InterchangerStep, second: InterchangerStep) -> bool:
    """A Gray cell followed by its inverse."""
    return first.target == second.source and first.source == second.target and first.inverse != second.inverse


def steps_commute(side1: Sequence[InterchangerStep], side2: Sequence[InterchangerStep]) -> bool:
    """Two steps on disjoint stretches appear in both orders, unchanged in kind."""
    if len(side1) != 2 or len(side2) != 2:
        return False
    key = lambda st: (st.left, st.right, st.middle, st.inverse)
    return [key(st) for st in side1] == [key(st) for st in reversed(side2)]


def steps_cube(side1: Sequence[InterchangerStep], side2: Sequence[InterchangerStep]) -> bool:
    """The two sides of the cube identity exchange the same three pairs in opposite orders."""
    if len(side1) != 3 or len(side2) != 3:
        return False
    key = lambda st: (st.faces, st.inverse)
    return [key(st) for st in side1] == [key(st) for st in reversed(side2)]


# ---------------------------------------------------------------------------
# strict collapse


def _canonical_applied(term: CompositeTerm) -> list:
    applied = list(term.applied)
    n = len(applied)
    for _ in range(n * n + 1):
        for k in range(n - 1):
            x, y = applied[k], applied[k + 1]
            if len(y.right) + len(y.sigma) <= len(x.right):
                # y sits strictly before x: apply it first
                y2 = _whisker(x.dom, y.face, y.sigma, y.tau)
                x2 = _whisker(y2.cod, x.face, x.sigma, x.tau)
                applied[k:k + 2] = [y2, x2]
                break
        else:
            return applied
    raise CompositionError("exchange of whiskered cells did not terminate")


def strict_collapse_equal(t1: CompositeTerm, t2: CompositeTerm) -> bool:
    """Equal once interchangers are identities (strict middle-four interchange)."""
    if (t1.p, t1.q) != (t2.p, t2.q):
        raise CompositionError("terms have different boundaries")
    if not (t1.type_check() and t2.type_check()):
        raise CompositionError("term does not type-check")
    return _canonical_applied(t1) == _canonical_applied(t2)


def canonical_term(term: CompositeTerm) -> CompositeTerm:
    return CompositeTerm(tuple(reversed(_canonical_applied(term))), term.p, term.q)
