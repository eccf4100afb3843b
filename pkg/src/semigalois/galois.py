"""Galois objects, their endomorphism monoids and the monoid/action dictionary.

A galois object is a pair ``(X, root)`` where every state is reachable from
the root and each state ``i`` is the root image of exactly one endomorphism
``u_i``.  Its endomorphism monoid is stored indexed by root image, so element
``i`` is ``u_i``, the identity is the root, and ``i * j = u_i(j)``.

Ordering note: ``(X, r) <= (X', r')`` holds when there is a pointed arrow
``X' -> X``, i.e. the order runs against the direction of arrows.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from semigalois.actions import (
    DEFAULT_HOM_CAP,
    Action,
    Morphism,
    Signature,
    coproduct,
    end_monoid,
    image_factorize,
    is_epi,
    iter_homs,
    optimal_covering,
    orbit,
    orbit_subobject,
    product,
    universal_quotient,
    validate_action,
    _derived,
    _same_signature,
)
from semigalois.errors import (
    EmptyAction,
    IllDefined,
    NotSurjective,
    ReconstructionFailure,
    SignatureMismatch,
    SizeCapExceeded,
)
from semigalois.monoid import (
    LEFT_CONVENTION,
    RIGHT,
    TWO_SIDED,
    Congruence,
    FiniteMonoid,
    MonoidHom,
    TransformationMonoid,
    identity_hom,
    is_congruence,
    is_homomorphism,
    submonoid_generated,
)
from semigalois._util import normalize_partition

DEFAULT_TUPLE_CAP = 200000


def pointed_map(x: Action, xi, y: Action, eta):
    """The equivariant map on the orbit of ``xi`` sending ``xi`` to ``eta``.

    Returns a dict on the orbit, or None when propagation hits a conflict.
    """
    assign = {xi: eta}
    queue = deque([xi])
    while queue:
        s = queue.popleft()
        v = assign[s]
        for tx, ty in zip(x.trans, y.trans):
            a, b = tx[s], ty[v]
            if a not in assign:
                assign[a] = b
                queue.append(a)
            elif assign[a] != b:
                return None
    return assign


def _end_by_root(x: Action, root):
    """Endomorphisms of a rooted action, indexed by root image (None if absent)."""
    maps = []
    for eta in x.states:
        m = pointed_map(x, root, x, eta)
        maps.append(None if m is None else tuple(m[s] for s in x.states))
    return maps


def is_galois(x: Action, xi):
    if not 0 <= xi < x.n:
        raise ValueError(f"state {xi} out of range")
    if len(orbit(x, xi)) != x.n:
        return False
    return all(m is not None for m in _end_by_root(x, xi))


@dataclass(frozen=True)
class GaloisObject:
    object: Action
    root: int
    end: TransformationMonoid = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        x = self.object
        if not 0 <= self.root < x.n or len(orbit(x, self.root)) != x.n:
            raise ValueError("root does not generate the action")
        maps = _end_by_root(x, self.root)
        if any(m is None for m in maps):
            raise ValueError("evaluation at the root is not onto the states")
        table = tuple(tuple(u) for u in maps)
        end = TransformationMonoid(x.n, table, table, (), LEFT_CONVENTION)
        object.__setattr__(self, "end", end)

    @property
    def n(self):
        return self.object.n

    @property
    def signature(self):
        return self.object.signature

    def endomorphism(self, i):
        return Morphism(self.object, self.object, self.end.elements[i])


@dataclass(frozen=True)
class GaloisArrow:
    source: GaloisObject
    target: GaloisObject
    morphism: Morphism


def precedes(lower: GaloisObject, upper: GaloisObject):
    """``lower <= upper``: some pointed arrow upper -> lower exists."""
    return pointed_arrow(upper, lower) is not None


def pointed_arrow(g: GaloisObject, h: GaloisObject) -> Optional[GaloisArrow]:
    if not _same_signature(g.signature, h.signature):
        raise SignatureMismatch("galois objects over different signatures")
    m = pointed_map(g.object, g.root, h.object, h.root)
    if m is None:
        return None
    f = Morphism(g.object, h.object, tuple(m[s] for s in g.object.states))
    assert is_epi(f), "pointed arrow between galois objects must be onto"
    return GaloisArrow(g, h, f)


def connecting_hom(arrow: GaloisArrow) -> MonoidHom:
    """End(source) -> End(target), u -> the u' with lam o u = u' o lam."""
    lam = arrow.morphism.map
    src, tgt = arrow.source, arrow.target
    mapping = tuple(lam[i] for i in src.object.states)
    for i, u in enumerate(src.end.elements):
        v = tgt.end.elements[mapping[i]]
        if any(lam[u[s]] != v[lam[s]] for s in src.object.states):
            raise AssertionError("connecting map does not intertwine the arrow")
    hom = MonoidHom(src.end.monoid, tgt.end.monoid, mapping)
    if not is_homomorphism(hom.source, hom.target, mapping) or not hom.is_surjective():
        raise AssertionError("connecting map is not a surjective homomorphism")
    return hom


def _tuple_orbit(y: Action, seed, cap):
    """States of the orbit of ``seed`` in the power y^len(seed), breadth first."""
    seen = {seed: 0}
    order = [seed]
    queue = deque([seed])
    while queue:
        t = queue.popleft()
        for tr in y.trans:
            u = tuple(tr[v] for v in t)
            if u not in seen:
                if cap is not None and len(order) >= cap:
                    raise SizeCapExceeded(cap, "galois closure tuples")
                seen[u] = len(order)
                order.append(u)
                queue.append(u)
    return order, seen


def galois_closure(y: Action, cap=DEFAULT_TUPLE_CAP):
    """A galois object Γ with Hom(Γ, y) in bijection with the states of y.

    Γ is the orbit of the tuple listing every state of y inside y^n.  The
    returned witness lists, for each state η, the projection Γ -> y sending
    the root to η.
    """
    if y.n == 0:
        raise EmptyAction("cannot close the empty action")
    order, pos = _tuple_orbit(y, tuple(y.states), cap)
    trans = [tuple(pos[tuple(tr[v] for v in t)] for t in order) for tr in y.trans]
    x = _derived(y.signature, len(order), trans,
                 lambda i, m: pos[tuple(y.full[v][m] for v in order[i])])
    gamma = GaloisObject(x, 0)
    witness = [Morphism(x, y, tuple(t[eta] for t in order)) for eta in y.states]
    if len({w.map for w in witness}) != y.n or any(w.map[0] != eta for eta, w in enumerate(witness)):
        raise AssertionError("evaluation at the root is not a bijection")
    return gamma, witness


def meet_galois(g: GaloisObject, h: GaloisObject):
    """A galois object above both, with pointed arrows onto each."""
    p, p1, p2 = product(g.object, h.object)
    seed = g.root * h.n + h.root
    z, incl = orbit_subobject(p, seed)
    top = GaloisObject(z, 0)
    a1 = GaloisArrow(top, g, incl.then(p1))
    a2 = GaloisArrow(top, h, incl.then(p2))
    return top, a1, a2


@dataclass(frozen=True)
class FreeCongruence:
    """Finite-index congruence on words: equal when they move the root alike."""

    stage: GaloisObject

    def _letters(self, word):
        alphabet = self.stage.signature.alphabet
        return [alphabet.index(c) for c in word]

    def class_of(self, word):
        return self.stage.object.run(self.stage.root, self._letters(word))

    def congruent(self, u, v):
        return self.class_of(u) == self.class_of(v)

    @property
    def n_classes(self):
        return self.stage.n


def galois_congruence(g: GaloisObject):
    """m ~ m' iff root.m = root.m'; a two-sided congruence (checked)."""
    if g.signature.is_free:
        return FreeCongruence(g)
    m = g.signature.monoid
    part = normalize_partition([g.object.full[g.root][x] for x in m.elements])
    if not is_congruence(m, part, TWO_SIDED):
        raise AssertionError("root kernel is not a two-sided congruence")
    return Congruence(m, tuple(part), TWO_SIDED)


def stamp_to_galois(p: MonoidHom, generators=None) -> GaloisObject:
    """Γ_H: states H, state h moved by m to h * p(m), rooted at the identity."""
    if not p.is_surjective():
        raise NotSurjective("stamp is not onto its target")
    h = p.target
    sig = Signature.explicit(p.source, generators)
    full = tuple(tuple(h.table[x][p.map[m]] for m in p.source.elements) for x in h.elements)
    trans = [tuple(row[g] for row in full) for g in sig.generators]
    x = validate_action(sig, trans, n_states=h.order)
    # the generator extension satisfies the action laws, so agreement checks them
    if x.full != full:
        raise ValueError("stamp is not a homomorphism")
    return GaloisObject(x, h.identity)


def end_iso_H(gamma: GaloisObject, h: FiniteMonoid) -> MonoidHom:
    """h -> left translation by h, checked to be an isomorphism onto End."""
    enumerated = {tuple(u) for u in iter_homs(gamma.object, gamma.object)}
    mapping = []
    for x in h.elements:
        u = tuple(h.table[x][y] for y in h.elements)
        if u not in enumerated:
            raise AssertionError(f"left translation by {x} is not an endomorphism")
        mapping.append(gamma.end.index(u))
    hom = MonoidHom(h, gamma.end.monoid, tuple(mapping))
    if len(enumerated) != h.order or not hom.is_injective():
        raise AssertionError("left translations do not exhaust End")
    if not is_homomorphism(h, gamma.end.monoid, hom.map):
        raise AssertionError("left translation is not multiplicative")
    return hom


@dataclass(frozen=True)
class StageMonoid:
    """End of a galois stage with the images of the signature generators.

    Element i is the endomorphism sending the root to state i; a word w maps
    to the element root.w.
    """

    stage: GaloisObject
    stamp: tuple

    @property
    def monoid(self):
        return self.stage.end

    @property
    def order(self):
        return self.stage.n

    def word_image(self, letters):
        return self.stage.object.run(self.stage.root, letters)

    def element_image(self, m):
        return self.stage.object.full[self.stage.root][m]

    def words(self):
        """A shortest representing generator word for every element."""
        x = self.stage.object
        words = {self.stage.root: ()}
        queue = deque([self.stage.root])
        while queue:
            s = queue.popleft()
            for g, tr in enumerate(x.trans):
                t = tr[s]
                if t not in words:
                    words[t] = words[s] + (g,)
                    queue.append(t)
        return [words[i] for i in x.states]


def fundamental_monoid(generators, cap=DEFAULT_TUPLE_CAP) -> StageMonoid:
    """Finite stage of the fundamental monoid determined by ``generators``."""
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generating action")
    top = generators[0]
    for y in generators[1:]:
        top = product(top, y)[0]
    gamma, _ = galois_closure(top, cap)
    stamp = tuple(tr[gamma.root] for tr in gamma.object.trans)
    if len(submonoid_generated(gamma.end.monoid, stamp)) != gamma.n:
        raise AssertionError("stamp images do not generate the stage")
    return StageMonoid(gamma, stamp)


@dataclass(frozen=True)
class Reconstruction:
    gamma: GaloisObject
    end: TransformationMonoid
    iso: MonoidHom


def reconstruct_check(m: FiniteMonoid, cap=DEFAULT_HOM_CAP) -> Reconstruction:
    """m -> left translation, verified to be an isomorphism onto End(Γ_m)."""
    try:
        gamma = stamp_to_galois(identity_hom(m))
        end = end_monoid(gamma.object, cap)
        mapping = []
        for x in m.elements:
            mapping.append(end.index(tuple(m.table[x][y] for y in m.elements)))
    except (KeyError, ValueError) as exc:
        raise ReconstructionFailure(f"reconstruction failed: {exc}") from exc
    iso = MonoidHom(m, end.monoid, tuple(mapping))
    if end.order != m.order or not iso.is_injective():
        raise ReconstructionFailure("left translations are not a bijection onto End")
    if not is_homomorphism(m, end.monoid, iso.map):
        raise ReconstructionFailure("left translation is not a homomorphism")
    return Reconstruction(gamma, end, iso)


def stage_signature(stage: StageMonoid):
    return Signature.explicit(stage.monoid.monoid, stage.stamp)


def realize_as_mset(x: Action, stage: StageMonoid, signature=None) -> Action:
    """Turn a DFA acted on through the stage into an M-set over the stage monoid.

    State s moved by element i goes to s.w for a representing word w of i;
    IllDefined is raised when two words for the same element disagree on x.
    """
    if not x.signature.is_free or x.signature != stage.stage.signature:
        raise SignatureMismatch("realization needs a DFA over the stage alphabet")
    gamma = stage.stage.object
    words = stage.words()
    full = [[x.run(s, w) for w in words] for s in x.states]
    for i in gamma.states:
        for a, (tg, tx) in enumerate(zip(gamma.trans, x.trans)):
            j = tg[i]
            for s in x.states:
                if full[s][j] != tx[full[s][i]]:
                    raise IllDefined(j, s)
    sig = signature if signature is not None else stage_signature(stage)
    phi = validate_action(sig, x.trans)
    if phi.full != tuple(tuple(r) for r in full):
        raise AssertionError("generator extension disagrees with word realization")
    return phi


def fullness_report(x: Action, others, stage: StageMonoid, cap=DEFAULT_HOM_CAP):
    """For each y compare Hom(x, y) before and after realization as state-map sets."""
    sig = stage_signature(stage)
    px = realize_as_mset(x, stage, sig)
    report = []
    for y in others:
        py = realize_as_mset(y, stage, sig)
        free = set(iter_homs(x, y, cap))
        explicit = set(iter_homs(px, py, cap))
        report.append({"states": y.n, "free": len(free), "explicit": len(explicit),
                       "equal": free == explicit})
    return report


@dataclass(frozen=True)
class CyclicComponent:
    root: int
    congruence: Congruence
    quotient: Action
    projection: Morphism
    witness: Morphism
    inclusion: Morphism


def cyclic_decomposition(s: Action):
    """Express each maximal orbit a.M as a quotient of the regular action.

    For every root a of the optimal covering, E_a relates m and m' when
    a.m = a.m'; the regular action modulo the left translations realizing E_a
    is isomorphic to a.M via [m] -> a.m.
    """
    if s.signature.is_free:
        raise SignatureMismatch("cyclic decomposition needs an explicit monoid")
    m = s.signature.monoid
    gamma = stamp_to_galois(identity_hom(m), s.signature.generators)
    covering, _ = optimal_covering(s)
    out = []
    for comp in covering.components:
        a = comp.map[0]
        row = s.full[a]
        part = normalize_partition(list(row))
        if not is_congruence(m, part, RIGHT):
            raise AssertionError("orbit kernel is not a right congruence")
        rep = {}
        for x in m.elements:
            rep.setdefault(part[x], x)
        left = lambda x: tuple(m.table[x][y] for y in m.elements)
        pairs = [(left(x), left(rep[part[x]])) for x in m.elements if x != rep[part[x]]]
        proj, q = universal_quotient(gamma.object, pairs)
        orbit_action, incl = orbit_subobject(s, a)
        where = {st: i for i, st in enumerate(incl.map)}
        wit = [None] * q.n
        for x in m.elements:
            wit[proj.map[x]] = where[row[x]]
        witness = Morphism(q, orbit_action, tuple(wit))
        if len(set(witness.map)) != orbit_action.n:
            raise AssertionError("quotient is not isomorphic to the orbit")
        out.append(CyclicComponent(a, Congruence(m, tuple(part), RIGHT), q, proj, witness, incl))
    return out


def glue_components(s: Action, components):
    """Image of the coproduct of the cyclic pieces in s."""
    total = None
    for c in components:
        piece = c.witness.then(c.inclusion)
        if total is None:
            total, pieces = c.quotient, list(piece.map)
        else:
            total, _, _ = coproduct(total, c.quotient)
            pieces.extend(piece.map)
    glued = Morphism(total, s, tuple(pieces))
    _, image, _ = image_factorize(glued)
    return image
