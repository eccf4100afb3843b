import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from semigalois.actions import (
    Signature,
    action_from_full,
    action_isomorphism,
    coproduct,
    hom_set,
    iter_homs,
    product,
    terminal,
    validate_action,
)
from semigalois.axioms import random_dfa, random_mset
from semigalois.errors import EmptyAction, IllDefined, NotSurjective
from semigalois.galois import (
    GaloisObject,
    connecting_hom,
    cyclic_decomposition,
    end_iso_H,
    fullness_report,
    fundamental_monoid,
    galois_closure,
    galois_congruence,
    glue_components,
    is_galois,
    meet_galois,
    pointed_arrow,
    precedes,
    realize_as_mset,
    reconstruct_check,
    stage_signature,
    stamp_to_galois,
)
from semigalois.monoid import (
    TWO_SIDED,
    MonoidHom,
    congruence_closure,
    cyclic_group,
    enumerate_monoids,
    extend_on_generators,
    identity_hom,
    is_congruence,
    monoid_iso_check,
    quotient_monoid,
    submonoid_closure,
    trivial_monoid,
)


def cycle(n):
    return validate_action(Signature.free("a"), [tuple((i + 1) % n for i in range(n))])


def brute_end(x):
    return [
        m for m in itertools.product(range(x.n), repeat=x.n)
        if all(m[t[s]] == t[m[s]] for t in x.trans for s in x.states)
    ]


def brute_is_galois(x, xi, ends=None):
    ends = brute_end(x) if ends is None else ends
    reach = {xi}
    for _ in range(x.n):
        reach |= {t[s] for s in reach for t in x.trans}
    return len(reach) == x.n and sorted(m[xi] for m in ends) == list(x.states)


# --- galois objects -----------------------------------------------------------

def test_is_galois_examples(point, parity, chain):
    assert is_galois(point, 0)
    assert is_galois(parity, 0)
    # the constant map onto state 1 commutes with a, so End has two elements
    assert sorted(brute_end(chain)) == [(0, 1), (1, 1)]
    assert is_galois(chain, 0) == brute_is_galois(chain, 0) is True
    assert not is_galois(chain, 1)


def test_is_galois_matches_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        sig = Signature.free("ab"[: rng.randint(1, 2)])
        x = random_dfa(rng, sig, 4)
        for xi in x.states:
            assert is_galois(x, xi) == brute_is_galois(x, xi)


def test_closure_examples(point, parity, chain, u2):
    g, _ = galois_closure(point)
    assert g.n == 1
    g, _ = galois_closure(parity)
    assert g.n == 2 and g.object.trans == ((1, 0),)
    g, wit = galois_closure(chain)
    # tuples (0,1) and (1,1)
    assert g.n == 2 and [w.map for w in wit] == [(0, 1), (1, 1)]
    assert monoid_iso_check(g.end.monoid, u2) is not None


def test_closure_of_empty(free_a):
    with pytest.raises(EmptyAction):
        galois_closure(validate_action(free_a, [()]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_cofinality(seed):
    rng = random.Random(seed)
    y = random_dfa(rng, Signature.free("ab"[: rng.randint(1, 2)]), 4)
    g, wit = galois_closure(y)
    # closures can have up to 4^4 states, so End comes from the backtracking search
    assert brute_is_galois(g.object, g.root, list(iter_homs(g.object, g.object)))
    homs = hom_set(g.object, y)
    assert sorted(h.map[g.root] for h in homs) == list(y.states)
    assert {h.map for h in homs} == {w.map for w in wit}


def test_closure_of_mset(c2):
    rng = random.Random(5)
    for _ in range(20):
        y = random_mset(rng, Signature.explicit(c2), 4)
        g, _ = galois_closure(y)
        assert len(hom_set(g.object, y)) == y.n


# --- pointed arrows and connecting maps --------------------------------------------

def test_pointed_arrow_examples(parity, chain):
    g = GaloisObject(parity, 0)
    assert pointed_arrow(g, g).morphism.map == (0, 1)
    arrow = pointed_arrow(g, GaloisObject(parity, 1))
    assert arrow.morphism.map == (1, 0)
    # 0 -> 0 forces 1 = 0.a -> 0.a = 1, then 1.a = 0 must go to 1.a = 1: conflict
    assert pointed_arrow(g, GaloisObject(chain, 0)) is None


def test_connecting_examples(parity):
    g = GaloisObject(parity, 0)
    assert connecting_hom(pointed_arrow(g, g)).map == (0, 1)
    swap = connecting_hom(pointed_arrow(g, GaloisObject(parity, 1)))
    assert swap.is_injective() and swap.is_surjective()
    down = connecting_hom(pointed_arrow(GaloisObject(cycle(4), 0), g))
    assert down.map == (0, 1, 0, 1)


def test_meet_examples(parity):
    g = GaloisObject(parity, 0)
    top, _, _ = meet_galois(g, g)
    assert monoid_iso_check(top.end.monoid, g.end.monoid) is not None
    top, _, _ = meet_galois(g, GaloisObject(terminal(parity.signature), 0))
    assert top.n == 2
    top, a1, a2 = meet_galois(GaloisObject(cycle(2), 0), GaloisObject(cycle(3), 0))
    assert top.n == 6
    assert monoid_iso_check(top.end.monoid, cyclic_group(6)) is not None
    assert precedes(a1.target, top) and precedes(a2.target, top)


def random_galois(rng):
    y = random_dfa(rng, Signature.free("ab"), 3)
    return galois_closure(y)[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_connecting_maps_compose(seed):
    rng = random.Random(seed)
    g1, g2, g3 = (random_galois(rng) for _ in range(3))
    mid, to1, _ = meet_galois(g1, g2)
    top, to_mid, _ = meet_galois(mid, g3)
    direct = pointed_arrow(top, g1)
    assert direct is not None
    assert direct.morphism.map == to_mid.morphism.then(to1.morphism).map
    composed = connecting_hom(to_mid).compose(connecting_hom(to1))
    assert connecting_hom(direct).map == composed.map
    for arrow in (to1, to_mid, direct):
        assert len(set(arrow.morphism.map)) == arrow.target.n


# --- monoid side ---------------------------------------------------------------------

def test_congruence_examples(c2, parity):
    g = stamp_to_galois(identity_hom(c2))
    assert galois_congruence(g).partition == (0, 1)
    words = galois_congruence(GaloisObject(parity, 0))
    assert words.congruent("aaa", "a") and not words.congruent("aa", "a")
    assert words.n_classes == 2
    one = stamp_to_galois(MonoidHom(c2, trivial_monoid(), (0, 0)))
    assert galois_congruence(one).partition == (0, 0)


def test_stamp_to_galois_examples(c2, klein):
    g = stamp_to_galois(identity_hom(c2))
    assert g.object.full == ((0, 1), (1, 0)) and g.root == 0
    assert stamp_to_galois(MonoidHom(c2, trivial_monoid(), (0, 0))).n == 1
    second = MonoidHom(klein, c2, (0, 1, 0, 1))
    g = stamp_to_galois(second)
    # only the second coordinate moves a state
    assert g.object.full == ((0, 1, 0, 1), (1, 0, 1, 0))
    with pytest.raises(NotSurjective):
        stamp_to_galois(MonoidHom(c2, klein, (0, 0)))


def test_end_iso_examples(c2, klein):
    t = trivial_monoid()
    assert end_iso_H(stamp_to_galois(identity_hom(t)), t).map == (0,)
    h = end_iso_H(stamp_to_galois(identity_hom(c2)), c2)
    assert h.is_injective() and h.target.order == 2
    assert end_iso_H(stamp_to_galois(identity_hom(klein)), klein).target.order == 4


def random_quotient(rng, m):
    pairs = [(rng.randrange(m.order), rng.randrange(m.order)) for _ in range(rng.randint(0, 2))]
    c = congruence_closure(m, pairs, TWO_SIDED)
    return quotient_monoid(m, c)


def test_congruence_recovers_kernel():
    rng = random.Random(11)
    monoids = [m for k in range(1, 5) for m in enumerate_monoids(k)]
    for m in monoids:
        h, p = random_quotient(rng, m)
        g = stamp_to_galois(p)
        c = galois_congruence(g)
        assert c.partition == p.kernel()
        assert is_congruence(m, c.partition, TWO_SIDED)
        end_iso_H(g, h)


def test_reconstruct_examples(c2, u2):
    assert reconstruct_check(trivial_monoid()).iso.map == (0,)
    assert reconstruct_check(c2).end.order == 2
    rec = reconstruct_check(u2)
    assert monoid_iso_check(rec.end.monoid, u2) is not None


def test_reconstruct_all_small_monoids():
    for k in range(1, 5):
        for m in enumerate_monoids(k):
            rec = reconstruct_check(m)
            assert rec.iso.is_injective() and rec.end.order == m.order


# --- fundamental monoid -----------------------------------------------------------------

def letter_iso(stage, closure):
    ext = extend_on_generators(stage.monoid.monoid, closure.monoid, stage.stamp, closure.generators)
    return ext is not None and len(set(ext.values())) == stage.order == closure.order


def test_fundamental_examples(point, parity, chain):
    assert fundamental_monoid([point]).order == 1
    st2 = fundamental_monoid([parity])
    assert st2.order == 2 and st2.monoid.elements[st2.stamp[0]] == (1, 0)
    both = fundamental_monoid([parity, chain])
    p, _, _ = product(parity, chain)
    oracle = submonoid_closure(p.n, p.trans)
    assert letter_iso(both, oracle)
    assert both.order == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_fundamental_matches_transition_monoid(seed):
    rng = random.Random(seed)
    sig = Signature.free("ab"[: rng.randint(1, 2)])
    gens = [random_dfa(rng, sig, 3) for _ in range(rng.randint(1, 3))]
    stage = fundamental_monoid(gens)
    p = gens[0]
    for y in gens[1:]:
        p = product(p, y)[0]
    assert letter_iso(stage, submonoid_closure(p.n, p.trans))


# --- representation ---------------------------------------------------------------------

def test_realize_examples(parity, point):
    stage = fundamental_monoid([parity, point])
    phi = realize_as_mset(parity, stage)
    g = stage.stamp[0]
    assert [phi.full[s][g] for s in parity.states] == [1, 0]
    assert realize_as_mset(point, stage).full == ((0, 0),)
    report = fullness_report(parity, [parity], stage)
    assert report == [{"states": 2, "free": 2, "explicit": 2, "equal": True}]


def test_realize_on_too_coarse_stage(parity, point):
    stage = fundamental_monoid([point])
    with pytest.raises(IllDefined):
        realize_as_mset(parity, stage)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fullness(seed):
    rng = random.Random(seed)
    sig = Signature.free("ab"[: rng.randint(1, 2)])
    x, y = random_dfa(rng, sig, 4), random_dfa(rng, sig, 4)
    stage = fundamental_monoid([x, y])
    for entry in fullness_report(x, [x, y], stage):
        assert entry["equal"]


def test_cyclic_examples(c2):
    sig = Signature.explicit(c2)
    reg = action_from_full(sig, [[0, 1], [1, 0]])
    (only,) = cyclic_decomposition(reg)
    assert only.congruence.partition == (0, 1) and only.quotient.n == 2

    still = action_from_full(sig, [[0, 0], [1, 1]])
    parts = cyclic_decomposition(still)
    assert [c.root for c in parts] == [0, 1]
    assert all(c.congruence.partition == (0, 0) and c.quotient.n == 1 for c in parts)

    mixed, _, _ = coproduct(reg, terminal(sig))
    parts = cyclic_decomposition(mixed)
    assert [c.congruence.partition for c in parts] == [(0, 1), (0, 0)]


def test_cyclic_round_trip():
    rng = random.Random(17)
    monoids = [m for k in range(1, 5) for m in enumerate_monoids(k)]
    for m in monoids:
        sig = Signature.explicit(m)
        for _ in range(3):
            s = random_mset(rng, sig, 5)
            parts = cyclic_decomposition(s)
            assert action_isomorphism(glue_components(s, parts), s) is not None
            for c in parts:
                assert len(set(c.witness.map)) == c.quotient.n


def test_restriction_of_stage_actions(parity, chain):
    stage = fundamental_monoid([parity, chain])
    sig = stage_signature(stage)
    a, b = realize_as_mset(parity, stage, sig), realize_as_mset(chain, stage, sig)
    assert set(iter_homs(a, b)) == set(iter_homs(parity, chain))
