"""Strings of faces and the swap rewriting between them.

Objects are the linear extensions of the closed triangle relation, written as
tuples of face ids in application order.  A generating swap exchanges an
adjacent pair of faces that the closed triangle relation leaves unordered.  A
swap is a *rewrite* (oriented generator) when it moves the prec-smaller face
leftwards: ``...K H... -> ...H K...`` with ``H prec K``.  Rewrites terminate
(each removes exactly one prec-inversion) and are confluent, so every object
reduces to the same normal form.

Words are sequences of :class:`Step` (a position plus an ``inverse`` mark).
Equalities between words are witnessed by :class:`RelationApplication`
sequences that can be replayed mechanically:

* ``a-inverse``: insert or cancel a step followed by its formal inverse;
* ``b-exchange``: commute two steps at positions at least two apart;
* ``c-hexagon``: the braid move ``i, i+1, i  <->  i+1, i, i+1``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .relations import (
    FaceRelation,
    LimitExceeded,
    iter_linear_extensions,
    prec_relation,
    transitive_closure,
    triangle_relation,
)
from .scheme import PastingScheme

STRATEGIES = ("leftmost", "rightmost", "random")

A_KIND = "a-inverse"
B_KIND = "b-exchange"
C_KIND = "c-hexagon"


class EngineError(RuntimeError):
    """An internal invariant failed; on a valid scheme this is a bug."""


class Step(NamedTuple):
    position: int
    inverse: bool = False

    def __str__(self):
        return f"{self.position}{'~' if self.inverse else ''}"


@dataclass(frozen=True)
class Swap:
    source: tuple
    position: int

    @property
    def pair(self) -> tuple:
        return self.source[self.position], self.source[self.position + 1]

    @property
    def target(self) -> tuple:
        return swapped(self.source, self.position)


def swapped(s: Sequence, i: int) -> tuple:
    s = list(s)
    s[i], s[i + 1] = s[i + 1], s[i]
    return tuple(s)


@dataclass(frozen=True)
class MorphismWord:
    source: tuple
    steps: tuple = ()

    @classmethod
    def oriented(cls, source: Sequence, positions: Iterable[int]) -> "MorphismWord":
        return cls(tuple(source), tuple(Step(p) for p in positions))

    def __len__(self):
        return len(self.steps)

    @property
    def positions(self) -> tuple:
        return tuple(st.position for st in self.steps)

    @property
    def is_oriented(self) -> bool:
        return not any(st.inverse for st in self.steps)

    def strings(self) -> list:
        out = [self.source]
        for st in self.steps:
            out.append(swapped(out[-1], st.position))
        return out

    @property
    def target(self) -> tuple:
        return self.strings()[-1]

    def swaps(self) -> list:
        return [Swap(s, st.position) for s, st in zip(self.strings(), self.steps)]

    def inverse(self) -> "MorphismWord":
        return MorphismWord(self.target, tuple(Step(st.position, not st.inverse) for st in reversed(self.steps)))

    def then(self, other: "MorphismWord") -> "MorphismWord":
        if other.source != self.target:
            raise ValueError("words do not compose")
        return MorphismWord(self.source, self.steps + other.steps)

    def to_json(self) -> dict:
        return {"source": list(self.source), "steps": [str(st) for st in self.steps], "target": list(self.target)}


@dataclass(frozen=True)
class RelationApplication:
    kind: str
    location: int
    before: tuple
    after: tuple

    def reversed(self) -> "RelationApplication":
        return RelationApplication(self.kind, self.location, self.after, self.before)

    def shifted(self, offset: int) -> "RelationApplication":
        return RelationApplication(self.kind, self.location + offset, self.before, self.after)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "location": self.location,
            "before": [str(s) for s in self.before],
            "after": [str(s) for s in self.after],
        }


def check_application_shape(app: RelationApplication) -> bool:
    """Does the application instantiate its relation schema?"""
    b, a = app.before, app.after
    if app.kind == A_KIND:
        pair, empty = (b, a) if len(b) == 2 else (a, b)
        return (
            len(empty) == 0
            and len(pair) == 2
            and pair[0].position == pair[1].position
            and pair[0].inverse != pair[1].inverse
        )
    if app.kind == B_KIND:
        return len(b) == 2 and abs(b[0].position - b[1].position) >= 2 and a == (b[1], b[0])
    if app.kind == C_KIND:
        if len(b) != 3:
            return False
        (p, f1), (q, f2), (r, f3) = b
        return p == r and abs(p - q) == 1 and a == (Step(q, f3), Step(p, f2), Step(q, f1))
    return False


def replay(word: MorphismWord, applications: Iterable[RelationApplication]) -> MorphismWord:
    """Apply each relation at its recorded location, checking the window."""
    steps = list(word.steps)
    for app in applications:
        if not check_application_shape(app):
            raise EngineError(f"application does not fit its schema: {app}")
        lo, hi = app.location, app.location + len(app.before)
        if tuple(steps[lo:hi]) != app.before:
            raise EngineError(f"window mismatch at {lo}: {steps[lo:hi]} != {list(app.before)}")
        steps[lo:hi] = list(app.after)
    return MorphismWord(word.source, tuple(steps))


@dataclass(frozen=True)
class Branching:
    source: tuple
    positions: tuple  # (i, j), i < j
    kind: str  # "square" | "hexagon"
    left: tuple  # closing word starting with the rewrite at i
    right: tuple  # closing word starting with the rewrite at j
    target: tuple

    def to_json(self) -> dict:
        return {
            "source": list(self.source),
            "positions": list(self.positions),
            "kind": self.kind,
            "left": list(self.left),
            "right": list(self.right),
            "target": list(self.target),
        }


@dataclass
class NormalFormReport:
    objects: int
    exchange_connected: bool
    normal_forms: list
    strategy_failures: list

    @property
    def ok(self) -> bool:
        return self.exchange_connected and len(self.normal_forms) == 1 and not self.strategy_failures

    @property
    def normal_form(self):
        return self.normal_forms[0] if len(self.normal_forms) == 1 else None

    def to_json(self) -> dict:
        return {
            "objects": self.objects,
            "exchange_connected": self.exchange_connected,
            "normal_forms": [list(nf) for nf in self.normal_forms],
            "strategy_failures": self.strategy_failures,
            "ok": self.ok,
        }


@dataclass
class RewriteSystem:
    """The swap rewriting system of one scheme.

    Built from the two face relations; the closure of the triangle relation
    decides which swaps exist, prec decides their orientation.
    """

    triangle_closure: FaceRelation
    prec: FaceRelation
    _objects: list | None = field(default=None, repr=False)

    @classmethod
    def from_scheme(cls, scheme: PastingScheme) -> "RewriteSystem":
        return cls(transitive_closure(triangle_relation(scheme)), prec_relation(scheme))

    @property
    def faces(self) -> tuple:
        return self.triangle_closure.elements

    # -- generators ---------------------------------------------------------

    def is_generator(self, s: Sequence, i: int) -> bool:
        g, h = s[i], s[i + 1]
        return not (self.triangle_closure(g, h) or self.triangle_closure(h, g))

    def is_rewrite(self, s: Sequence, i: int) -> bool:
        return self.is_generator(s, i) and self.prec(s[i + 1], s[i])

    def rewrite_positions(self, s: Sequence) -> list:
        return [i for i in range(len(s) - 1) if self.is_rewrite(s, i)]

    def applicable_rewrites(self, s: Sequence) -> list:
        return [Swap(tuple(s), i) for i in self.rewrite_positions(s)]

    def is_object(self, s: Sequence) -> bool:
        if sorted(map(str, s)) != sorted(map(str, self.faces)) or len(set(s)) != len(s):
            return False
        pos = {f: k for k, f in enumerate(s)}
        return all(pos[a] < pos[b] for a, b in self.triangle_closure.pairs())

    def objects(self, limit: int | None = None) -> list:
        if limit is not None and len(self.faces) > limit:
            raise LimitExceeded("number of faces", len(self.faces), limit)
        if self._objects is None:
            self._objects = list(iter_linear_extensions(self.triangle_closure))
        return self._objects

    def rho(self, s: Sequence) -> int:
        idx = [self.prec.index[f] for f in s]
        m = self.prec.matrix[np.ix_(idx, idx)]
        return int(np.triu(m.T, 1).sum())

    def apply(self, s: Sequence, swap: Swap | int) -> tuple:
        i = swap.position if isinstance(swap, Swap) else swap
        if isinstance(swap, Swap) and tuple(swap.source) != tuple(s):
            raise ValueError("swap belongs to a different string")
        if not (0 <= i < len(s) - 1 and self.is_rewrite(s, i)):
            raise ValueError(f"no rewrite at position {i} of {list(s)}")
        return swapped(s, i)

    def step(self, s: Sequence, st: Step) -> tuple:
        """Apply a generator or the formal inverse of one."""
        i = st.position
        if not (0 <= i < len(s) - 1 and self.is_generator(s, i)):
            raise ValueError(f"no generator at position {i} of {list(s)}")
        if st.inverse == self.is_rewrite(s, i):
            raise ValueError(f"inverse mark on step {st} does not match orientation at {list(s)}")
        return swapped(s, i)

    def check_word(self, word: MorphismWord, oriented: bool = True) -> tuple:
        if oriented and not word.is_oriented:
            raise ValueError("oriented words carry no inverse marks")
        s = word.source
        for st in word.steps:
            s = self.step(s, st)
        return s

    # -- normalization ------------------------------------------------------

    def normalize(self, s: Sequence, strategy: str = "leftmost", seed: int | None = None, rng=None):
        """Rewrite until no rewrite applies; returns (normal form, word)."""
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        if strategy == "random" and rng is None:
            rng = random.Random(seed)
        cur = tuple(s)
        positions = []
        while True:
            avail = self.rewrite_positions(cur)
            if not avail:
                break
            if strategy == "leftmost":
                i = avail[0]
            elif strategy == "rightmost":
                i = avail[-1]
            else:
                i = rng.choice(avail)
            cur = swapped(cur, i)
            positions.append(i)
        return cur, MorphismWord.oriented(s, positions)

    def normal_form_word(self, s: Sequence) -> list:
        return list(self.normalize(s)[1].positions)

    def iter_words(self, s: Sequence) -> Iterator[tuple]:
        """Every maximal rewrite sequence from ``s``, as position tuples."""
        s = tuple(s)
        avail = self.rewrite_positions(s)
        if not avail:
            yield ()
            return
        for i in avail:
            for rest in self.iter_words(swapped(s, i)):
                yield (i,) + rest

    # -- local confluence ---------------------------------------------------

    def close_fork(self, s: Sequence, i: int, j: int) -> Branching:
        """Close the fork of rewrites at positions i < j of ``s``."""
        s = tuple(s)
        if j - i >= 2:
            kind, left, right = "square", (i, j), (j, i)
        elif j - i == 1:
            kind, left, right = "hexagon", (i, i + 1, i), (i + 1, i, i + 1)
        else:
            raise EngineError(f"not a fork: positions {i}, {j}")
        ends = []
        for path in (left, right):
            cur = s
            for p in path:
                if not self.is_rewrite(cur, p):
                    raise EngineError(f"fork at {list(s)} ({i},{j}) does not close by the {kind} schema")
                cur = swapped(cur, p)
            ends.append(cur)
        if ends[0] != ends[1]:
            raise EngineError(f"fork at {list(s)} closes to different targets")
        return Branching(s, (i, j), kind, left, right, ends[0])

    def local_branchings(self, limit: int | None = None) -> list:
        out = []
        for s in self.objects(limit):
            avail = self.rewrite_positions(s)
            for a in range(len(avail)):
                for b in range(a + 1, len(avail)):
                    out.append(self.close_fork(s, avail[a], avail[b]))
        return out

    # -- exchange graph -----------------------------------------------------

    def exchange_edges(self, limit: int | None = None) -> list:
        """Undirected swap edges, each as (source, position) oriented along the rewrite if any."""
        edges = []
        seen = set()
        for s in self.objects(limit):
            for i in range(len(s) - 1):
                if self.is_generator(s, i):
                    t = swapped(s, i)
                    key = frozenset((s, t))
                    if key not in seen:
                        seen.add(key)
                        edges.append((s, i) if self.is_rewrite(s, i) else (t, i))
        return edges

    def _adjacency(self, limit=None) -> dict:
        adj = {s: [] for s in self.objects(limit)}
        for s, i in self.exchange_edges(limit):
            t = swapped(s, i)
            adj[s].append((t, i))
            adj[t].append((s, i))
        return adj

    def check_unique_normal_form(self, seeds: Sequence[int] = (0, 1, 2, 3, 4), limit: int | None = None) -> NormalFormReport:
        objs = self.objects(limit)
        adj = self._adjacency(limit)
        seen = {objs[0]} if objs else set()
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for v, _ in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        nfs = [s for s in objs if not self.rewrite_positions(s)]
        failures = []
        if len(nfs) == 1:
            nf = nfs[0]
            for s in objs:
                runs = [("leftmost", None), ("rightmost", None)] + [("random", k) for k in seeds]
                for strategy, seed in runs:
                    got, _ = self.normalize(s, strategy, seed)
                    if got != nf:
                        failures.append({"object": list(s), "strategy": strategy, "seed": seed, "reached": list(got)})
        return NormalFormReport(len(objs), len(seen) == len(objs), nfs, failures)

    # -- tessellation -------------------------------------------------------

    def path_to(self, start: Sequence, goal: Sequence) -> list:
        """Rewrite ``start`` into ``goal`` by fixing the leftmost disagreement."""
        pos = {f: k for k, f in enumerate(goal)}
        cur = tuple(start)
        out = []
        while cur != tuple(goal):
            i = next(k for k in range(len(cur) - 1) if pos[cur[k]] > pos[cur[k + 1]])
            if not self.is_rewrite(cur, i):
                raise EngineError(f"{list(goal)} is not reachable from {list(start)} by rewrites")
            cur = swapped(cur, i)
            out.append(i)
        return out

    def tessellate(self, w1: MorphismWord, w2: MorphismWord) -> list:
        """Relation applications turning ``w1`` into ``w2`` (parallel oriented words)."""
        if not (w1.is_oriented and w2.is_oriented):
            raise ValueError("tessellate takes oriented words")
        if w1.source != w2.source or self.check_word(w1) != self.check_word(w2):
            raise ValueError("words are not parallel")
        return self._tessellate(w1.source, list(w1.positions), list(w2.positions))

    def _tessellate(self, src: tuple, w1: list, w2: list) -> list:
        if w1 == w2:
            return []
        k = 0
        while w1[k] == w2[k]:
            k += 1
        s = src
        for p in w1[:k]:
            s = swapped(s, p)
        x1, x2 = w1[k], w2[k]
        lo, hi = min(x1, x2), max(x1, x2)
        fork = self.close_fork(s, lo, hi)
        c1, c2 = (fork.left, fork.right) if x1 == lo else (fork.right, fork.left)
        goal = src
        for p in w1:
            goal = swapped(goal, p)
        tail = self.path_to(fork.target, goal)
        kind = B_KIND if fork.kind == "square" else C_KIND
        apps = [a.shifted(k + 1) for a in self._tessellate(swapped(s, x1), w1[k + 1:], list(c1[1:]) + tail)]
        apps.append(RelationApplication(kind, k, tuple(Step(p) for p in c1), tuple(Step(p) for p in c2)))
        apps += [a.shifted(k + 1) for a in self._tessellate(swapped(s, x2), list(c2[1:]) + tail, w2[k + 1:])]
        return apps

    # -- the groupoid with formal inverses ----------------------------------

    def canonical_word(self, a: Sequence, b: Sequence) -> MorphismWord:
        """Normalize ``a``, then walk back up to ``b`` along its normalization."""
        na = self.normalize(a)[1]
        nb = self.normalize(b)[1]
        return na.then(nb.inverse())

    def cg_reduce(self, word: MorphismWord) -> list:
        """Applications rewriting any word into :meth:`canonical_word` form.

        Only ``a-inverse`` moves and oriented ``b``/``c`` moves are used, so the
        equalities hold already in the oriented presentation plus inverses.
        """
        self.check_word(word, oriented=False)
        strings = word.strings()
        steps = list(word.steps)
        m = len(steps)
        apps = []
        nb = self.normal_form_word(strings[-1])
        for k, p in enumerate(nb):
            apps.append(RelationApplication(A_KIND, m + k, (), (Step(p), Step(p, True))))
        for k in range(m, 0, -1):
            st = steps[k - 1]
            before, after = strings[k - 1], strings[k]
            if not st.inverse:
                sub = self._tessellate(before, [st.position] + self.normal_form_word(after), self.normal_form_word(before))
                apps += [a.shifted(k - 1) for a in sub]
            else:
                sub = self._tessellate(after, self.normal_form_word(after), [st.position] + self.normal_form_word(before))
                apps += [a.shifted(k) for a in sub]
                apps.append(RelationApplication(A_KIND, k - 1, (Step(st.position, True), Step(st.position)), ()))
        return apps

    def cg_equate(self, w1: MorphismWord, w2: MorphismWord) -> list:
        if w1.source != w2.source or self.check_word(w1, False) != self.check_word(w2, False):
            raise ValueError("words are not parallel")
        return self.cg_reduce(w1) + [a.reversed() for a in reversed(self.cg_reduce(w2))]

    def relation_instances(self, s: Sequence) -> list:
        """Instances of the exchange and hexagon relations at ``s``, with both sides as words."""
        s = tuple(s)
        n = len(s)
        gen = [self.is_generator(s, i) for i in range(n - 1)]
        flag = {i: not self.is_rewrite(s, i) for i in range(n - 1) if gen[i]}
        out = []
        for i in range(n - 1):
            for j in range(i + 2, n - 1):
                if gen[i] and gen[j]:
                    a, b = Step(i, flag[i]), Step(j, flag[j])
                    out.append(("b", _b_case(a, b), MorphismWord(s, (a, b)), MorphismWord(s, (b, a))))
        for i in range(n - 2):
            g, h, k = s[i:i + 3]
            if gen[i] and gen[i + 1] and self.is_generator((h, g, k), 1):
                f_gh = flag[i]
                f_gk = not self.is_rewrite((h, g, k), 1)
                f_hk = not self.is_rewrite((h, k), 0)
                side1 = (Step(i, f_gh), Step(i + 1, f_gk), Step(i, f_hk))
                side2 = (Step(i + 1, f_hk), Step(i, f_gk), Step(i + 1, f_gh))
                case = _c_case(f_gh, f_gk, f_hk)
                out.append(("c", case, MorphismWord(s, side1), MorphismWord(s, side2)))
        return out

    # -- certificate --------------------------------------------------------

    def auto_mode(self, limit: int | None = None) -> str:
        """Exhaustive up to 64 objects and rho at most 8, sampled beyond."""
        objs = self.objects(limit)
        max_rho = max((self.rho(s) for s in objs), default=0)
        return "exhaustive" if len(objs) <= 64 and max_rho <= 8 else "sampled"

    def check_contractibility(
        self,
        mode: str = "auto",
        seed: int | None = None,
        samples: int = 1000,
        limit: int | None = None,
    ) -> dict:
        objs = self.objects(limit)
        max_rho = max((self.rho(s) for s in objs), default=0)
        if mode == "auto":
            mode = self.auto_mode(limit)
        if mode not in ("exhaustive", "sampled"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "sampled" and seed is None:
            raise ValueError("sampled mode needs a seed")
        rng = random.Random(seed)
        counterexamples = []

        unf = self.check_unique_normal_form(limit=limit)
        if not unf.ok:
            counterexamples.append({"check": "unique-normal-form", **unf.to_json()})
        nf = unf.normal_form

        closures = {"square": 0, "hexagon": 0}
        try:
            for br in self.local_branchings(limit):
                closures[br.kind] += 1
        except EngineError as exc:
            counterexamples.append({"check": "local-confluence", "error": str(exc)})

        tess = 0
        if nf is not None:
            for src, w1, w2 in self._tessellation_pairs(objs, mode, rng, samples):
                try:
                    apps = self.tessellate(w1, w2)
                    if replay(w1, apps) != w2:
                        raise EngineError("replay did not reproduce the second word")
                    tess += 1
                except (EngineError, ValueError) as exc:
                    counterexamples.append({"check": "tessellation", "source": list(src), "error": str(exc)})

        cases = {"b": {"i": 0, "ii": 0, "iii": 0}, "c": {"i": 0, "ii": 0, "iii": 0, "iv": 0}}
        instances = [(s, inst) for s in objs for inst in self.relation_instances(s)]
        if mode == "sampled" and len(instances) > samples:
            instances = rng.sample(instances, samples)
        for s, (rel, case, side1, side2) in instances:
            if case is None:
                counterexamples.append({"check": f"relation-{rel}", "source": list(s), "error": "orientation pattern excluded by prec transitivity"})
                continue
            try:
                self._verify_equal(side1, side2, oriented_moves_only=True)
                cases[rel][case] += 1
            except (EngineError, ValueError) as exc:
                counterexamples.append({"check": f"relation-{rel}", "case": case, "source": list(s), "error": str(exc)})

        loops = 0
        edges = self.exchange_edges(limit)
        if nf is not None and unf.exchange_connected:
            cycle_words = self._fundamental_cycles(nf, mode, rng, samples, limit)
            for loop in cycle_words:
                try:
                    self._verify_equal(loop, MorphismWord(nf), oriented_moves_only=True)
                    loops += 1
                except (EngineError, ValueError) as exc:
                    counterexamples.append({"check": "loop", "error": str(exc)})

        return {
            "mode": mode,
            "seed": seed,
            "objects": len(objs),
            "max_rho": max_rho,
            "normal_form": list(nf) if nf is not None else None,
            "exchange_graph": {
                "vertices": len(objs),
                "edges": len(edges),
                "cycle_rank": len(edges) - len(objs) + 1 if objs else 0,
                "connected": unf.exchange_connected,
            },
            "branchings_closed": closures,
            "tessellations_verified": tess,
            "relation_cases_verified": cases,
            "loops_contracted": loops,
            "counterexamples": counterexamples,
            "certified": not counterexamples,
        }

    def _verify_equal(self, w1: MorphismWord, w2: MorphismWord, oriented_moves_only: bool) -> None:
        apps = self.cg_equate(w1, w2)
        if oriented_moves_only:
            for a in apps:
                if a.kind != A_KIND and any(st.inverse for st in a.before + a.after):
                    raise EngineError("derivation used a relation on inverted generators")
        if replay(w1, apps) != w2:
            raise EngineError("replay did not reproduce the second word")
        cur = w1
        for a in apps:
            cur = replay(cur, [a])
            self.check_word(cur, oriented=False)

    def _tessellation_pairs(self, objs, mode, rng, samples):
        if mode == "exhaustive":
            for s in objs:
                canon = self.normalize(s)[1]
                for w in self.iter_words(s):
                    if w != canon.positions:
                        yield s, MorphismWord.oriented(s, w), canon
        else:
            for _ in range(samples):
                s = rng.choice(objs)
                _, w1 = self.normalize(s, "random", rng=rng)
                _, w2 = self.normalize(s, "random", rng=rng)
                yield s, w1, w2

    def _fundamental_cycles(self, root, mode, rng, samples, limit) -> list:
        adj = self._adjacency(limit)
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, i in adj[u]:
                if v not in parent:
                    parent[v] = (u, i)
                    queue.append(v)

        def from_root(v) -> list:
            steps = []
            while parent[v] is not None:
                u, i = parent[v]
                steps.append((u, i))
                v = u
            steps.reverse()
            return [Step(i, not self.is_rewrite(u, i)) for u, i in steps]

        non_tree = []
        for s, i in self.exchange_edges(limit):
            t = swapped(s, i)
            if parent.get(t) != (s, i) and parent.get(s) != (t, i):
                non_tree.append((s, i))
        if mode == "sampled" and len(non_tree) > samples:
            non_tree = rng.sample(non_tree, samples)
        loops = []
        for s, i in non_tree:
            t = swapped(s, i)
            go = MorphismWord(root, tuple(from_root(s)) + (Step(i),))
            back = MorphismWord(root, tuple(from_root(t))).inverse()
            loops.append(go.then(back))
        return loops

    # -- output -------------------------------------------------------------

    def exchange_dot(self, limit: int | None = None) -> str:
        objs = self.objects(limit)
        nfs = {s for s in objs if not self.rewrite_positions(s)}
        name = {s: " ".join(map(str, s)) for s in objs}
        lines = ["digraph exchange {"]
        for s in objs:
            style = ' [style=filled, fillcolor="lightblue"]' if s in nfs else ""
            lines.append(f'  "{name[s]}"{style};')
        for s, i in self.exchange_edges(limit):
            lines.append(f'  "{name[s]}" -> "{name[swapped(s, i)]}" [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _b_case(a: Step, b: Step) -> str:
    forward = (not a.inverse) + (not b.inverse)
    return {2: "i", 0: "ii", 1: "iii"}[forward]


def _c_case(f_gh: bool, f_gk: bool, f_hk: bool):
    forward = [not f_gh, not f_gk, not f_hk]
    n = sum(forward)
    if n == 3:
        return "i"
    if n == 0:
        return "ii"
    if n == 2:
        return None if forward[1] is False else "iii"
    return None if forward[1] is True else "iv"


# -- functional forms taking the prec relation directly ------------------------


def rho(s: Sequence, prec: FaceRelation) -> int:
    """Number of pairs i < j with s[j] prec s[i]."""
    return sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if prec(s[j], s[i]))


def applicable_rewrites(s: Sequence, prec: FaceRelation) -> list:
    """Positions whose adjacent pair is prec-inverted, as swaps."""
    return [Swap(tuple(s), i) for i in range(len(s) - 1) if prec(s[i + 1], s[i])]


def apply(s: Sequence, swap: Swap, prec: FaceRelation) -> tuple:
    i = swap.position
    if tuple(swap.source) != tuple(s) or not prec(s[i + 1], s[i]):
        raise ValueError(f"swap at {i} is not applicable to {list(s)}")
    return swapped(s, i)


def objects(scheme: PastingScheme, limit: int | None = None) -> list:
    return RewriteSystem.from_scheme(scheme).objects(limit)
