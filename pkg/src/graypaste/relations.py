"""Binary relations on faces, stored as dense boolean matrices.

Covers the two face relations of a pasting scheme (``triangle``: the lower
side of one face shares an edge with the upper side of another; ``prec``: one
face ends where a directed path to the start of the other begins), their
transitive closures, and the finite order theory around them: acyclicity,
minimal elements, linear extensions and the comparability check linking the
two relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

from .scheme import PastingScheme, id_key


class CyclicRelationError(ValueError):
    pass


class LimitExceeded(RuntimeError):
    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: {size} exceeds the limit of {limit}")
        self.size = size
        self.limit = limit


@dataclass(frozen=True, eq=False)
class FaceRelation:
    """A relation on a fixed ordered set of elements.

    ``matrix[i, j]`` is true when ``elements[i]`` is related to ``elements[j]``.
    """

    elements: tuple
    matrix: np.ndarray
    kind: str = "relation"
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=bool)
        n = len(self.elements)
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match {n} elements")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "index", {x: i for i, x in enumerate(self.elements)})

    @classmethod
    def from_pairs(cls, elements: Iterable[Hashable], pairs: Iterable[tuple], kind: str = "relation"):
        elements = tuple(elements)
        idx = {x: i for i, x in enumerate(elements)}
        m = np.zeros((len(elements), len(elements)), dtype=bool)
        for a, b in pairs:
            m[idx[a], idx[b]] = True
        return cls(elements, m, kind)

    def __call__(self, a, b) -> bool:
        return bool(self.matrix[self.index[a], self.index[b]])

    def __eq__(self, other):
        if not isinstance(other, FaceRelation):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.elements, self.matrix.tobytes()))

    def __len__(self):
        return int(self.matrix.sum())

    def pairs(self) -> list:
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(self.matrix))]

    def to_json(self) -> list:
        return [[a, b] for a, b in self.pairs()]

    def is_irreflexive(self) -> bool:
        return not self.matrix.diagonal().any()

    def is_transitive(self) -> bool:
        m = self.matrix.astype(np.int64)
        return not ((m @ m > 0) & ~self.matrix).any()

    def is_asymmetric(self) -> bool:
        return not (self.matrix & self.matrix.T).any()

    def is_strict_partial_order(self) -> bool:
        return self.is_irreflexive() and self.is_transitive() and self.is_asymmetric()

    def with_pair(self, a, b, value: bool) -> "FaceRelation":
        m = self.matrix.copy()
        m[self.index[a], self.index[b]] = value
        return FaceRelation(self.elements, m, self.kind)


def _sorted_faces(scheme: PastingScheme) -> tuple:
    return tuple(sorted(scheme.face_ids, key=id_key))


def triangle_relation(scheme: PastingScheme) -> FaceRelation:
    """F1 -> F2 iff tau of F1 and sigma of F2 share an edge."""
    faces = _sorted_faces(scheme)
    taus = [set(scheme.face(f).tau.edges) for f in faces]
    sigmas = [set(scheme.face(f).sigma.edges) for f in faces]
    m = np.array([[bool(taus[i] & sigmas[j]) for j in range(len(faces))] for i in range(len(faces))], dtype=bool)
    return FaceRelation(faces, m.reshape(len(faces), len(faces)), "triangle")


def prec_relation(scheme: PastingScheme) -> FaceRelation:
    """F1 -> F2 iff there is a (possibly empty) directed path from t(F1) to s(F2)."""
    faces = _sorted_faces(scheme)
    reach = scheme.reachable
    ends = [scheme.face(f) for f in faces]
    m = np.array([[b.s in reach[a.t] for b in ends] for a in ends], dtype=bool)
    return FaceRelation(faces, m.reshape(len(faces), len(faces)), "prec")


def transitive_closure(rel: FaceRelation) -> FaceRelation:
    """Warshall's algorithm on the boolean matrix."""
    m = rel.matrix.copy()
    for k in range(len(rel.elements)):
        m |= np.outer(m[:, k], m[k, :])
    return FaceRelation(rel.elements, m, f"closure({rel.kind})")


def is_acyclic(rel: FaceRelation) -> bool:
    return transitive_closure(rel).is_irreflexive()


def minimal_elements(rel: FaceRelation, subset: Iterable[Hashable] | None = None) -> list:
    """Elements m of ``subset`` with no s in ``subset`` such that s R m."""
    subset = list(rel.elements if subset is None else subset)
    if not subset:
        raise ValueError("minimal_elements of an empty subset")
    idx = [rel.index[x] for x in subset]
    sub = rel.matrix[np.ix_(idx, idx)]
    return [x for x, col in zip(subset, sub.T) if not col.any()]


def one_extension(rel: FaceRelation) -> list:
    """Peel off minimal elements one at a time, smallest id first."""
    remaining = sorted(rel.elements, key=id_key)
    order = []
    while remaining:
        mins = minimal_elements(rel, remaining)
        if not mins:
            raise CyclicRelationError(f"{rel.kind} has a cycle among {remaining}")
        pick = mins[0]
        order.append(pick)
        remaining.remove(pick)
    return order


def iter_linear_extensions(rel: FaceRelation) -> Iterator[tuple]:
    """All strict linear extensions, in lexicographic order of element ids."""
    if not is_acyclic(rel):
        raise CyclicRelationError(f"{rel.kind} is not acyclic")
    order = sorted(range(len(rel.elements)), key=lambda i: id_key(rel.elements[i]))
    preds = [frozenset(np.nonzero(rel.matrix[:, j])[0]) for j in range(len(rel.elements))]
    placed: list = []
    used = [False] * len(rel.elements)

    def extend():
        if len(placed) == len(rel.elements):
            yield tuple(rel.elements[i] for i in placed)
            return
        for j in order:
            if not used[j] and all(used[p] for p in preds[j]):
                used[j] = True
                placed.append(j)
                yield from extend()
                placed.pop()
                used[j] = False

    yield from extend()


def linear_extensions(rel: FaceRelation, limit: int | None = None) -> list:
    if limit is not None and len(rel.elements) > limit:
        raise LimitExceeded("number of faces", len(rel.elements), limit)
    return list(iter_linear_extensions(rel))


@dataclass
class ComparabilityReport:
    pairs_checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"pairs_checked": self.pairs_checked, "violations": self.violations, "ok": self.ok}


def check_comparability(scheme: PastingScheme) -> ComparabilityReport:
    """Every pair of faces is either triangle-closure comparable or prec comparable, never both."""
    tri = transitive_closure(triangle_relation(scheme)).matrix
    prec = prec_relation(scheme).matrix
    faces = _sorted_faces(scheme)
    violations = []
    checked = 0
    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            checked += 1
            tri_incomparable = not (tri[i, j] or tri[j, i])
            prec_comparable = bool(prec[i, j] or prec[j, i])
            if tri_incomparable != prec_comparable:
                violations.append(
                    {"pair": [faces[i], faces[j]], "triangle_incomparable": tri_incomparable, "prec_comparable": prec_comparable}
                )
    return ComparabilityReport(checked, violations)


def relations_report(scheme: PastingScheme) -> dict:
    tri = triangle_relation(scheme)
    return {
        "faces": list(tri.elements),
        "triangle": tri.to_json(),
        "prec": prec_relation(scheme).to_json(),
        "triangle_closure": transitive_closure(tri).to_json(),
        "comparability": check_comparability(scheme).to_json(),
    }


def restrict(rel: FaceRelation, keep: Sequence[Hashable]) -> FaceRelation:
    idx = [rel.index[x] for x in keep]
    return FaceRelation(tuple(keep), rel.matrix[np.ix_(idx, idx)], rel.kind)
