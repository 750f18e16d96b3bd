from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graypaste.corpus import random_scheme_document
from graypaste.relations import prec_relation
from graypaste.rewriting import (
    A_KIND,
    B_KIND,
    C_KIND,
    EngineError,
    MorphismWord,
    RelationApplication,
    RewriteSystem,
    Step,
    Swap,
    apply,
    applicable_rewrites,
    check_application_shape,
    objects,
    replay,
    rho,
    swapped,
)
from graypaste.scheme import load_scheme

THREE = ("F3", "F1", "F2")
NF3 = ("F1", "F3", "F2")


def brute_objects(rs: RewriteSystem) -> list:
    pairs = rs.triangle_closure.pairs()
    out = []
    for perm in itertools.permutations(sorted(rs.faces)):
        pos = {f: k for k, f in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in pairs):
            out.append(perm)
    return sorted(out)


def random_zigzag(rs: RewriteSystem, start, length, rng) -> MorphismWord:
    cur, steps = tuple(start), []
    for _ in range(length):
        gens = [i for i in range(len(cur) - 1) if rs.is_generator(cur, i)]
        if not gens:
            break
        i = rng.choice(gens)
        steps.append(Step(i, not rs.is_rewrite(cur, i)))
        cur = swapped(cur, i)
    return MorphismWord(tuple(start), tuple(steps))


# -- objects and single rewrites ----------------------------------------------


def test_objects_three_bigon(fixed, system):
    rs = system("three-bigon")
    assert rs.objects() == [NF3, THREE] == brute_objects(rs)
    assert objects(fixed["three-bigon"]) == [NF3, THREE]


def test_objects_trivial(system):
    assert system("bigon").objects() == [("F",)]
    rs = system("figure1")
    (only,) = rs.objects()
    assert rs.rewrite_positions(only) == []


def test_rewrites_three_bigon(fixed):
    prec = prec_relation(fixed["three-bigon"])
    (sw,) = applicable_rewrites(THREE, prec)
    assert (sw.position, sw.pair, sw.target) == (0, ("F3", "F1"), NF3)
    assert applicable_rewrites(NF3, prec) == []
    assert rho(THREE, prec) == 1 and rho(NF3, prec) == 0
    assert apply(THREE, sw, prec) == NF3
    with pytest.raises(ValueError):
        apply(NF3, Swap(NF3, 0), prec)


def test_rho_matches_functional_form(corpus):
    for sc in corpus[:60]:
        rs = RewriteSystem.from_scheme(sc)
        for s in rs.objects():
            assert rs.rho(s) == rho(s, rs.prec)


def test_formal_inverse_returns(system):
    rs = system("three-bigon")
    w = MorphismWord(THREE, (Step(0), Step(0, True)))
    assert rs.check_word(w, oriented=False) == THREE
    with pytest.raises(ValueError):
        rs.check_word(MorphismWord(THREE, (Step(0, True),)), oriented=False)


def test_normalize(system):
    rs = system("three-bigon")
    nf, word = rs.normalize(THREE)
    assert nf == NF3 and word.positions == (0,)
    nf, word = rs.normalize(NF3)
    assert nf == NF3 and len(word) == 0
    with pytest.raises(ValueError):
        rs.normalize(THREE, "sideways")


def test_intro_orders_share_normal_form(system):
    rs = system("intro")
    first = ("alpha", "beta", "gamma", "phi", "delta")
    second = ("alpha", "gamma", "beta", "phi", "delta")
    assert rs.prec("beta", "gamma")
    assert rs.normalize(first)[0] == rs.normalize(second)[0] == first
    assert rs.normalize(second)[1].positions == (1,)
    assert Swap(second, 1).pair == ("gamma", "beta")


# -- termination and normal forms over the corpus ----------------------------


def test_every_rewrite_drops_rho(corpus):
    for sc in corpus:
        rs = RewriteSystem.from_scheme(sc)
        for s in rs.objects():
            for i in rs.rewrite_positions(s):
                t = swapped(s, i)
                assert rs.is_object(t)
                assert rs.rho(t) == rs.rho(s) - 1


def test_maximal_sequences_have_length_rho(corpus):
    for sc in corpus:
        rs = RewriteSystem.from_scheme(sc)
        objs = rs.objects()
        if len(objs) > 64:
            continue
        for s in objs:
            assert {len(w) for w in rs.iter_words(s)} == {rs.rho(s)}


def test_unique_normal_form(corpus, fixed):
    for sc in list(fixed.values()) + corpus:
        rs = RewriteSystem.from_scheme(sc)
        rep = rs.check_unique_normal_form()
        assert rep.ok, rep.to_json()
        nf = rep.normal_form
        assert not any(rs.prec(nf[k + 1], nf[k]) for k in range(len(nf) - 1))


def test_unique_normal_form_three_bigon(system):
    assert system("three-bigon").check_unique_normal_form().normal_form == NF3


# -- forks -------------------------------------------------------------------


def test_branchings_of_fixed_schemes(system):
    assert system("three-bigon").local_branchings() == []
    kinds = {br.kind for br in system("exchange").local_branchings()}
    assert kinds == {"square"}
    kinds = {br.kind for br in system("hexagon").local_branchings()}
    assert "hexagon" in kinds


def test_exchange_square_corners(system):
    rs = system("exchange")
    assert len(rs.objects()) == 4
    (br,) = rs.local_branchings()
    assert br.kind == "square" and br.left == (br.positions[0], br.positions[1])
    assert br.target == rs.check_unique_normal_form().normal_form


def test_corpus_forks_close(corpus):
    for sc in corpus:
        for br in RewriteSystem.from_scheme(sc).local_branchings():
            assert br.kind in ("square", "hexagon")


# -- relation applications ----------------------------------------------------


def test_application_shapes():
    assert check_application_shape(RelationApplication(A_KIND, 0, (), (Step(2), Step(2, True))))
    assert not check_application_shape(RelationApplication(A_KIND, 0, (), (Step(2), Step(3, True))))
    assert check_application_shape(RelationApplication(B_KIND, 0, (Step(0), Step(2)), (Step(2), Step(0))))
    assert not check_application_shape(RelationApplication(B_KIND, 0, (Step(0), Step(1)), (Step(1), Step(0))))
    hexa = RelationApplication(C_KIND, 0, (Step(0), Step(1), Step(0)), (Step(1), Step(0), Step(1)))
    assert check_application_shape(hexa) and check_application_shape(hexa.reversed())


def test_replay_checks_window():
    w = MorphismWord(("a", "b", "c", "d"), (Step(0), Step(2)))
    app = RelationApplication(B_KIND, 0, (Step(2), Step(0)), (Step(0), Step(2)))
    with pytest.raises(EngineError):
        replay(w, [app])
    assert replay(w, [app.reversed()]).steps == (Step(2), Step(0))


# -- tessellation ------------------------------------------------------------


def test_tessellate_identical_words(system):
    rs = system("three-bigon")
    w = MorphismWord.oriented(THREE, [0])
    assert rs.tessellate(w, w) == []


def test_tessellate_square_is_one_exchange(system):
    rs = system("exchange")
    (br,) = rs.local_branchings()
    w1 = MorphismWord.oriented(br.source, br.left)
    w2 = MorphismWord.oriented(br.source, br.right)
    (app,) = rs.tessellate(w1, w2)
    assert app.kind == B_KIND
    assert replay(w1, [app]) == w2


def test_tessellate_hexagon_is_one_braid(system):
    rs = system("hexagon")
    br = next(b for b in rs.local_branchings() if b.kind == "hexagon")
    w1 = MorphismWord.oriented(br.source, br.left)
    w2 = MorphismWord.oriented(br.source, br.right)
    (app,) = rs.tessellate(w1, w2)
    assert app.kind == C_KIND and replay(w1, [app]) == w2


def test_tessellate_rejects_non_parallel(system):
    rs = system("series-3")
    s = ("B3", "B2", "B1")
    with pytest.raises(ValueError):
        rs.tessellate(MorphismWord.oriented(s, [0]), MorphismWord.oriented(s, [1]))


def test_tessellate_all_words_series4(system):
    rs = system("series-4")
    for s in rs.objects():
        words = list(rs.iter_words(s))
        for w1, w2 in itertools.combinations(words[:12], 2):
            a, b = MorphismWord.oriented(s, w1), MorphismWord.oriented(s, w2)
            assert replay(a, rs.tessellate(a, b)) == b


# -- the groupoid -------------------------------------------------------------


@pytest.mark.parametrize("name", ["series-3", "series-4", "exchange", "hexagon", "intro"])
def test_cg_equate_random_zigzags(system, name):
    rs = system(name)
    rng = random.Random(11)
    objs = rs.objects()
    for _ in range(25):
        s = rng.choice(objs)
        w1 = random_zigzag(rs, s, rng.randint(0, 7), rng)
        t = w1.target
        # a second word with the same ends: a random zigzag back, then forth again
        loop = random_zigzag(rs, t, rng.randint(0, 5), rng)
        back = rs.canonical_word(loop.target, t)
        w2 = w1.then(loop).then(back)
        apps = rs.cg_equate(w1, w2)
        assert replay(w1, apps) == w2
        for a in apps:
            if a.kind != A_KIND:
                assert not any(x.inverse for x in a.before + a.after)


def test_canonical_word_shape(system):
    rs = system("series-3")
    w = rs.canonical_word(("B3", "B2", "B1"), ("B2", "B3", "B1"))
    assert w.source == ("B3", "B2", "B1") and rs.check_word(w, oriented=False) == ("B2", "B3", "B1")


def test_relation_cases_exercised(system):
    cases = {}
    for name in ("series-4", "exchange", "hexagon"):
        rs = system(name)
        for s in rs.objects():
            for rel, case, _, _ in rs.relation_instances(s):
                cases.setdefault(rel, set()).add(case)
    assert cases["b"] == {"i", "ii", "iii"}
    assert cases["c"] == {"i", "ii", "iii", "iv"}


# -- certificate -------------------------------------------------------------


def test_certificate_three_bigon(system):
    cert = system("three-bigon").check_contractibility()
    assert cert["certified"] and cert["counterexamples"] == []
    assert cert["objects"] == 2
    assert cert["exchange_graph"] == {"vertices": 2, "edges": 1, "cycle_rank": 0, "connected": True}
    assert cert["normal_form"] == list(NF3)


@pytest.mark.parametrize("name", ["bigon", "single-edge", "figure1", "intro", "series-4", "exchange", "hexagon"])
def test_certificate_fixed(system, name):
    cert = system(name).check_contractibility()
    assert cert["certified"], cert["counterexamples"]
    assert cert["loops_contracted"] == cert["exchange_graph"]["cycle_rank"]


def test_certificate_sampled_needs_seed(system):
    rs = system("series-3")
    with pytest.raises(ValueError):
        rs.check_contractibility("sampled")
    a = rs.check_contractibility("sampled", seed=3, samples=50)
    b = rs.check_contractibility("sampled", seed=3, samples=50)
    assert a == b and a["certified"]


def test_mutated_prec_is_caught(system):
    rs = system("series-3")
    flipped = rs.prec.with_pair("B1", "B3", False).with_pair("B3", "B1", True)
    bad = RewriteSystem(rs.triangle_closure, flipped)
    cert = bad.check_contractibility()
    assert not cert["certified"]


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_schemes_certify(seed):
    sc = load_scheme(random_scheme_document(random.Random(seed), max_faces=5))
    cert = RewriteSystem.from_scheme(sc).check_contractibility(seed=seed)
    assert cert["certified"], cert["counterexamples"]
