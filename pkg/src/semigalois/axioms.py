"""Seeded random actions and an empirical check of the fiber-functor axioms.

Every categorical construction is compared with a set-level construction
computed here independently (pairs for limits, connected components for
colimits), and categorical epi/mono are decided through cokernel and kernel
pairs rather than by counting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as cartesian

from semigalois.actions import (
    Action,
    Morphism,
    Signature,
    action_from_full,
    coproduct,
    coequalizer,
    equalizer,
    fiber,
    hom_set,
    initial,
    inverse,
    is_epi,
    is_mono,
    orbit_subobject,
    product,
    pullback,
    pushout,
    quotient_by_pairs,
    terminal,
    validate_action,
)
from semigalois.monoid import enumerate_monoids


def random_dfa(rng: random.Random, signature: Signature, max_states=5, min_states=1):
    n = rng.randint(min_states, max_states)
    trans = [[rng.randrange(n) for _ in range(n)] for _ in range(signature.n_generators)]
    return validate_action(signature, trans, n_states=n)


def regular_action(signature: Signature):
    m = signature.monoid
    return action_from_full(signature, [list(m.table[x]) for x in m.elements])


def random_mset(rng: random.Random, signature: Signature, max_states=5, min_states=1):
    """Quotient of one or two regular copies by random merges, then trimmed to size."""
    m = signature.monoid
    x = regular_action(signature)
    if rng.random() < 0.5:
        x = coproduct(x, regular_action(signature))[0]
    pairs = [(rng.randrange(x.n), rng.randrange(x.n)) for _ in range(rng.randint(0, 2))]
    x = quotient_by_pairs(x, pairs)[0]
    while x.n > max_states:
        a, b = rng.sample(range(x.n), 2)
        x = quotient_by_pairs(x, [(a, b)])[0]
    if x.n < min_states:
        x = coproduct(x, terminal(signature))[0]
    return x


def random_signature(rng: random.Random, monoids=None):
    if monoids and rng.random() < 0.5:
        m = rng.choice(monoids)
        return Signature.explicit(m)
    return Signature.free("ab"[: rng.randint(1, 2)])


def random_action(rng, signature, max_states=5, min_states=1):
    if signature.is_free:
        return random_dfa(rng, signature, max_states, min_states)
    return random_mset(rng, signature, max_states, min_states)


def random_morphism_into(rng, z: Action, max_states=5):
    """Some morphism x -> z with random x: a hom if one exists, else a projection."""
    sig = z.signature
    for _ in range(3):
        x = random_action(rng, sig, max_states)
        homs = hom_set(x, z)
        if homs:
            return rng.choice(homs)
    w = random_action(rng, sig, max(1, max_states // max(z.n, 1)))
    p, p1, _ = product(z, w)
    if rng.random() < 0.5 and p.n:
        sub, incl = orbit_subobject(p, rng.randrange(p.n))
        return incl.then(p1)
    return p1


def random_morphism_from(rng, z: Action, max_states=5):
    """Some morphism z -> y: a quotient or an inclusion into a coproduct."""
    sig = z.signature
    if rng.random() < 0.5 and z.n:
        pairs = [(rng.randrange(z.n), rng.randrange(z.n)) for _ in range(rng.randint(0, 2))]
        _, q, _ = quotient_by_pairs(z, pairs)
        return q
    w = random_action(rng, sig, 2)
    _, i1, _ = coproduct(z, w)
    return i1


# --- independent set-level constructions -------------------------------------

def _components(n, edges):
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    comp = [None] * n
    k = 0
    for s in range(n):
        if comp[s] is not None:
            continue
        stack = [s]
        comp[s] = k
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if comp[w] is None:
                    comp[w] = k
                    stack.append(w)
        k += 1
    return comp


def _blocks(labels):
    out = {}
    for s, b in enumerate(labels):
        out.setdefault(b, set()).add(s)
    return {frozenset(v) for v in out.values()}


def categorical_epi(f: Morphism):
    """f is epi iff the two legs of the pushout of (f, f) coincide."""
    _, i1, i2 = pushout(f, f)
    return i1.map == i2.map


def categorical_mono(f: Morphism):
    """f is mono iff the two legs of the pullback of (f, f) coincide."""
    _, p1, p2 = pullback(f, f)
    return p1.map == p2.map


def has_inverse(f: Morphism):
    """Search Hom(cod, dom) for a two-sided inverse."""
    for g in hom_set(f.cod, f.dom):
        if all(g.map[f.map[s]] == s for s in f.dom.states) and all(
            f.map[g.map[t]] == t for t in f.cod.states
        ):
            return True
    return False


@dataclass
class AxiomReport:
    diagrams: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def expect(self, ok, what):
        self.checks += 1
        if not ok:
            self.failures.append(what)


def _check_morphism(report, f, tag):
    surj = len(set(f.map)) == f.cod.n
    inj = len(set(f.map)) == f.dom.n
    report.expect(is_epi(f) == surj == categorical_epi(f), f"{tag}: epi vs surjective, map {f.map}")
    report.expect(is_mono(f) == inj == categorical_mono(f), f"{tag}: mono vs injective, map {f.map}")
    if surj and inj:
        try:
            g = inverse(f)
            report.expect(g.then(f).map == tuple(f.cod.states), f"{tag}: inverse is not a section")
        except ValueError as exc:
            report.expect(False, f"{tag}: bijective map has no equivariant inverse ({exc})")
    else:
        report.expect(not has_inverse(f), f"{tag}: non-bijective map {f.map} has an inverse")


def check_semi_galois_axioms(seed=0, n_diagrams=200, max_states=5, max_monoid_order=4):
    """Sample diagrams and compare every construction with its set-level version."""
    rng = random.Random(seed)
    monoids = [m for k in range(1, max_monoid_order + 1) for m in enumerate_monoids(k)]
    report = AxiomReport()
    for sig in (Signature.free("a"), Signature.explicit(monoids[-1])):
        report.expect(fiber(initial(sig)) == [], "F(initial) is not empty")
        report.expect(len(fiber(terminal(sig))) == 1, "F(terminal) is not a point")
    for d in range(n_diagrams):
        report.diagrams += 1
        sig = random_signature(rng, monoids)
        tag = f"diagram {d} ({sig.kind})"
        z = random_action(rng, sig, max_states)
        f = random_morphism_into(rng, z, max_states)
        g = random_morphism_into(rng, z, max_states)
        x, y = f.dom, g.dom

        p, p1, p2 = pullback(f, g)
        expected = [(a, b) for a, b in cartesian(range(x.n), range(y.n)) if f.map[a] == g.map[b]]
        report.expect(list(zip(p1.map, p2.map)) == expected, f"{tag}: pullback fiber differs")
        for gi in range(sig.n_generators):
            moved = [(x.trans[gi][a], y.trans[gi][b]) for a, b in expected]
            report.expect([(p1.map[t], p2.map[t]) for t in p.trans[gi]] == moved,
                          f"{tag}: pullback action is not componentwise")

        pr, q1, q2 = product(x, y)
        report.expect(set(zip(q1.map, q2.map)) == set(cartesian(range(x.n), range(y.n))) and pr.n == x.n * y.n,
                      f"{tag}: product fiber differs")

        h = random_morphism_from(rng, z, max_states)
        k = random_morphism_from(rng, z, max_states)
        po, j1, j2 = pushout(h, k)
        left, right = h.cod.n, k.cod.n
        comp = _components(left + right, [(h.map[s], left + k.map[s]) for s in z.states])
        got = list(j1.map) + list(j2.map)
        report.expect(_blocks(comp) == _blocks(got) and po.n == len(set(comp)),
                      f"{tag}: pushout fiber differs")

        c, c1, c2 = coproduct(x, y)
        report.expect(sorted(c1.map + c2.map) == list(range(x.n + y.n)) and c.n == x.n + y.n,
                      f"{tag}: coproduct fiber differs")

        homs = hom_set(x, z)
        if homs:
            u, v = rng.choice(homs), rng.choice(homs)
            e, incl = equalizer(u, v)
            report.expect(list(incl.map) == [s for s in x.states if u.map[s] == v.map[s]],
                          f"{tag}: equalizer fiber differs")
        homs = hom_set(z, h.cod)
        if homs:
            u, v = rng.choice(homs), rng.choice(homs)
            qa, proj = coequalizer(u, v)
            comp = _components(h.cod.n, [(u.map[s], v.map[s]) for s in z.states])
            report.expect(_blocks(comp) == _blocks(proj.map), f"{tag}: coequalizer fiber differs")

        for name, mor in (("f", f), ("g", g), ("h", h), ("k", k), ("p1", p1), ("j1", j1)):
            _check_morphism(report, mor, f"{tag} {name}")
    return report
