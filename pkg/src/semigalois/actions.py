"""Finite right actions and equivariant maps.

An :class:`Action` is either a DFA (an action of the free monoid on a finite
alphabet) or a finite M-set for an explicit :class:`FiniteMonoid`.  Both are
stored as one transition map per generator; M-sets additionally carry the
full ``state x element`` table so the action laws can be checked directly.

Limits and colimits are computed on state sets with the componentwise action,
so the forgetful functor to finite sets preserves them by construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from semigalois._util import UnionFind
from semigalois.errors import (
    ActionLawViolation,
    ArityMismatch,
    EmptyAction,
    NotEndomorphism,
    NotMono,
    SignatureMismatch,
    SizeCapExceeded,
)
from semigalois.monoid import (
    LEFT_CONVENTION,
    FiniteMonoid,
    MonoidHom,
    generating_set,
    submonoid_generated,
    transformation_monoid,
)

DEFAULT_HOM_CAP = 10**6


@dataclass(frozen=True)
class Signature:
    """What acts: a free monoid on ``alphabet`` or an explicit monoid."""

    alphabet: tuple = ()
    monoid: Optional[FiniteMonoid] = None
    generators: tuple = ()

    @classmethod
    def free(cls, alphabet):
        alphabet = tuple(str(a) for a in alphabet)
        if not alphabet:
            raise ValueError("alphabet must be non-empty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet has duplicate letters")
        return cls(alphabet=alphabet)

    @classmethod
    def explicit(cls, monoid, generators=None):
        if generators is None:
            generators = generating_set(monoid)
        generators = tuple(int(g) for g in generators)
        if len(submonoid_generated(monoid, generators)) != monoid.order:
            raise ValueError("generators do not generate the monoid")
        return cls(monoid=monoid, generators=generators)

    @property
    def is_free(self):
        return self.monoid is None

    @property
    def kind(self):
        return "free" if self.is_free else "explicit"

    @property
    def n_generators(self):
        return len(self.alphabet) if self.is_free else len(self.generators)

    @property
    def labels(self):
        return self.alphabet if self.is_free else tuple(str(g) for g in self.generators)

    def letter_index(self, letter):
        return self.alphabet.index(letter)


@dataclass(frozen=True, eq=True)
class Action:
    signature: Signature
    n: int
    trans: tuple
    full: Optional[tuple] = None

    @property
    def states(self):
        return range(self.n)

    def act(self, s, g):
        return self.trans[g][s]

    def run(self, s, word):
        """Run a word given as generator indices."""
        for g in word:
            s = self.trans[g][s]
        return s

    def act_element(self, s, m):
        return self.full[s][m]

    def __repr__(self):
        return f"Action({self.signature.kind}, states={self.n})"


def _same_signature(a: Signature, b: Signature):
    return a is b or a == b


def _check_trans(signature, trans):
    trans = tuple(tuple(int(v) for v in t) for t in trans)
    if len(trans) != signature.n_generators:
        raise ArityMismatch(
            f"expected {signature.n_generators} transition maps, got {len(trans)}"
        )
    n = len(trans[0]) if trans else None
    for t in trans:
        if len(t) != n:
            raise ArityMismatch("transition maps have different lengths")
        if any(not 0 <= v < n for v in t):
            raise ArityMismatch("transition map is not total on the state set")
    return trans, n


def _full_from_generators(signature, n, trans):
    """Extend generator maps to the whole monoid; fails on a law violation."""
    m = signature.monoid
    full = [[None] * m.order for _ in range(n)]
    for s in range(n):
        full[s][m.identity] = s
    seen = {m.identity}
    queue = deque([m.identity])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(signature.generators):
            y = m.table[x][g]
            col = trans[gi]
            for s in range(n):
                v = col[full[s][x]]
                if full[s][y] is None:
                    full[s][y] = v
                elif full[s][y] != v:
                    raise ActionLawViolation(s, x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(tuple(r) for r in full)


def validate_action(signature: Signature, trans, full=None, n_states=None) -> Action:
    """Build an action, checking totality and (for M-sets) the action laws.

    ``n_states`` is only needed when there are no generators to infer it from.
    With a supplied ``full`` table the unit and associativity laws are checked
    on every state and pair of elements.
    """
    trans, n = _check_trans(signature, trans)
    if n is None:
        if n_states is None and full is not None:
            n_states = len(full)
        if n_states is None:
            raise ArityMismatch("cannot infer the state count without generators")
        n = n_states
    elif n_states is not None and n_states != n:
        raise ArityMismatch("state count disagrees with transition maps")
    if signature.is_free:
        if full is not None:
            raise ArityMismatch("free actions carry no full table")
        return Action(signature, n, trans)
    m = signature.monoid
    if full is None:
        return Action(signature, n, trans, _full_from_generators(signature, n, trans))
    full = tuple(tuple(int(v) for v in row) for row in full)
    if len(full) != n or any(len(row) != m.order for row in full):
        raise ArityMismatch("full table has the wrong shape")
    for s in range(n):
        if any(not 0 <= v < n for v in full[s]):
            raise ArityMismatch("full table leaves the state set")
        if full[s][m.identity] != s:
            raise ActionLawViolation(s, m.identity, m.identity)
        for x in m.elements:
            sx = full[s][x]
            for y in m.elements:
                if full[sx][y] != full[s][m.table[x][y]]:
                    raise ActionLawViolation(s, x, y)
    for gi, g in enumerate(signature.generators):
        if tuple(full[s][g] for s in range(n)) != trans[gi]:
            raise ArityMismatch(f"generator column {g} disagrees with its transition map")
    return Action(signature, n, trans, full)


def action_from_full(signature: Signature, full) -> Action:
    """Explicit action given only by its full table."""
    full = tuple(tuple(row) for row in full)
    trans = tuple(tuple(full[s][g] for s in range(len(full))) for g in signature.generators)
    return validate_action(signature, trans, full, n_states=len(full))


def _derived(signature, n, trans, element_fn=None):
    """Assemble an action built by a construction; M-set tables come from ``element_fn``."""
    trans = tuple(tuple(t) for t in trans)
    if signature.is_free:
        return Action(signature, n, trans)
    m = signature.monoid
    full = tuple(tuple(element_fn(s, x) for x in m.elements) for s in range(n))
    return Action(signature, n, trans, full)


@dataclass(frozen=True)
class Morphism:
    dom: Action
    cod: Action
    map: tuple

    def __post_init__(self):
        if not _same_signature(self.dom.signature, self.cod.signature):
            raise SignatureMismatch("domain and codomain act by different signatures")
        if len(self.map) != self.dom.n or any(not 0 <= v < self.cod.n for v in self.map):
            raise ValueError("state map has the wrong shape")
        for td, tc in zip(self.dom.trans, self.cod.trans):
            for s in range(self.dom.n):
                if self.map[td[s]] != tc[self.map[s]]:
                    raise ValueError(f"map is not equivariant at state {s}")

    def __call__(self, s):
        return self.map[s]

    def then(self, other: "Morphism"):
        """``other o self``."""
        return Morphism(self.dom, other.cod, tuple(other.map[v] for v in self.map))


def is_equivariant(dom: Action, cod: Action, mapping):
    for td, tc in zip(dom.trans, cod.trans):
        for s in range(dom.n):
            if mapping[td[s]] != tc[mapping[s]]:
                return False
    return True


def identity_morphism(x: Action):
    return Morphism(x, x, tuple(range(x.n)))


def fiber(x: Action):
    return list(range(x.n))


def terminal(signature: Signature):
    return _derived(signature, 1, [(0,)] * signature.n_generators, lambda s, m: 0)


def initial(signature: Signature):
    return _derived(signature, 0, [()] * signature.n_generators, lambda s, m: 0)


def to_terminal(x: Action):
    return Morphism(x, terminal(x.signature), (0,) * x.n)


def from_initial(x: Action):
    return Morphism(initial(x.signature), x, ())


# --- hom sets ---------------------------------------------------------------

def iter_homs(x: Action, y: Action, cap=DEFAULT_HOM_CAP, injective=False):
    """Yield every equivariant state map x -> y in lexicographic order.

    Choosing an image for the least unassigned state forces the image of its
    whole forward orbit; conflicts prune the branch.  ``cap`` bounds the
    number of tentative assignments.
    """
    if not _same_signature(x.signature, y.signature):
        raise SignatureMismatch("hom sets need a common signature")
    assign = [None] * x.n
    used = set()
    visits = [0]

    def propagate(s, v):
        assigned = [s]
        assign[s] = v
        if injective:
            if v in used:
                return assigned, False
            used.add(v)
        stack = [s]
        while stack:
            a = stack.pop()
            va = assign[a]
            for tx, ty in zip(x.trans, y.trans):
                b, vb = tx[a], ty[va]
                if assign[b] is None:
                    if injective:
                        if vb in used:
                            return assigned, False
                        used.add(vb)
                    assign[b] = vb
                    assigned.append(b)
                    stack.append(b)
                elif assign[b] != vb:
                    return assigned, False
        return assigned, True

    def undo(assigned):
        for a in assigned:
            if injective and assign[a] is not None:
                used.discard(assign[a])
            assign[a] = None

    def search(start):
        s = start
        while s < x.n and assign[s] is not None:
            s += 1
        if s == x.n:
            yield tuple(assign)
            return
        for v in range(y.n):
            visits[0] += 1
            if cap is not None and visits[0] > cap:
                raise SizeCapExceeded(cap, "hom search")
            assigned, ok = propagate(s, v)
            if ok:
                yield from search(s + 1)
            undo(assigned)

    yield from search(0)


def hom_set(x: Action, y: Action, cap=DEFAULT_HOM_CAP):
    return [Morphism(x, y, m) for m in iter_homs(x, y, cap)]


def is_mono(f: Morphism):
    return len(set(f.map)) == len(f.map)


def is_epi(f: Morphism):
    return len(set(f.map)) == f.cod.n


def is_iso(f: Morphism):
    return is_mono(f) and is_epi(f)


def inverse(f: Morphism):
    """Inverse of a bijective morphism; equivariance of the inverse is checked."""
    if not is_iso(f):
        raise ValueError("morphism is not bijective")
    inv = [0] * f.cod.n
    for s, v in enumerate(f.map):
        inv[v] = s
    return Morphism(f.cod, f.dom, tuple(inv))


def action_isomorphism(x: Action, y: Action, cap=DEFAULT_HOM_CAP):
    """Some isomorphism x -> y, or None."""
    if x.n != y.n or not _same_signature(x.signature, y.signature):
        return None
    for m in iter_homs(x, y, cap, injective=True):
        return Morphism(x, y, m)
    return None


# --- subobjects and images --------------------------------------------------

def subaction(x: Action, states):
    """The subaction on ``states`` (in the given order) and its inclusion."""
    states = list(states)
    pos = {s: i for i, s in enumerate(states)}
    if len(pos) != len(states):
        raise ValueError("repeated state")
    trans = []
    for t in x.trans:
        col = []
        for s in states:
            if t[s] not in pos:
                raise ValueError(f"state set is not closed under the action at {s}")
            col.append(pos[t[s]])
        trans.append(col)
    sub = _derived(x.signature, len(states), trans, lambda i, m: pos[x.full[states[i]][m]])
    return sub, Morphism(sub, x, tuple(states))


def image_factorize(f: Morphism):
    """Split f as mono o epi through its set-theoretic image."""
    image_states = sorted(set(f.map))
    image, mono = subaction(f.cod, image_states)
    pos = {s: i for i, s in enumerate(image_states)}
    epi = Morphism(f.dom, image, tuple(pos[v] for v in f.map))
    return epi, image, mono


def orbit(x: Action, xi):
    """States reachable from ``xi`` in breadth-first order."""
    seen = {xi: 0}
    order = [xi]
    queue = deque([xi])
    while queue:
        s = queue.popleft()
        for t in x.trans:
            v = t[s]
            if v not in seen:
                seen[v] = len(order)
                order.append(v)
                queue.append(v)
    return order


def orbit_subobject(x: Action, xi):
    """The minimal subobject containing ``xi``; ``xi`` becomes state 0."""
    if not 0 <= xi < x.n:
        raise ValueError(f"state {xi} out of range")
    return subaction(x, orbit(x, xi))


def roots(x: Action):
    return [s for s in x.states if len(orbit(x, s)) == x.n]


def is_rooted(x: Action):
    # the empty action has no state to serve as root
    return bool(roots(x))


# --- products and limits ----------------------------------------------------

def product(x: Action, y: Action):
    """x * y with pairs (i, j) numbered i * |y| + j, plus both projections."""
    if not _same_signature(x.signature, y.signature):
        raise SignatureMismatch("product needs a common signature")
    k = y.n
    n = x.n * k
    trans = [
        tuple(tx[i // k] * k + ty[i % k] for i in range(n)) for tx, ty in zip(x.trans, y.trans)
    ]
    p = _derived(x.signature, n, trans,
                 lambda i, m: x.full[i // k][m] * k + y.full[i % k][m])
    return p, Morphism(p, x, tuple(i // k for i in range(n))), Morphism(p, y, tuple(i % k for i in range(n)))


def pullback(f: Morphism, g: Morphism):
    """Matching pairs {(a, b) : f(a) = g(b)} in lexicographic order."""
    if f.cod != g.cod:
        raise ValueError("pullback needs a cospan")
    x, y = f.dom, g.dom
    pairs = [(a, b) for a in range(x.n) for b in range(y.n) if f.map[a] == g.map[b]]
    pos = {p: i for i, p in enumerate(pairs)}
    trans = [tuple(pos[(tx[a], ty[b])] for a, b in pairs) for tx, ty in zip(x.trans, y.trans)]
    p = _derived(x.signature, len(pairs), trans,
                 lambda i, m: pos[(x.full[pairs[i][0]][m], y.full[pairs[i][1]][m])])
    return p, Morphism(p, x, tuple(a for a, _ in pairs)), Morphism(p, y, tuple(b for _, b in pairs))


def equalizer(f: Morphism, g: Morphism):
    if f.dom != g.dom or f.cod != g.cod:
        raise ValueError("equalizer needs a parallel pair")
    return subaction(f.dom, [s for s in f.dom.states if f.map[s] == g.map[s]])


def coproduct(x: Action, y: Action):
    """Disjoint union with x's states first, plus both injections."""
    if not _same_signature(x.signature, y.signature):
        raise SignatureMismatch("coproduct needs a common signature")
    k = x.n
    n = k + y.n
    trans = [tuple(tx) + tuple(v + k for v in ty) for tx, ty in zip(x.trans, y.trans)]
    c = _derived(x.signature, n, trans,
                 lambda i, m: x.full[i][m] if i < k else y.full[i - k][m] + k)
    return c, Morphism(x, c, tuple(range(k))), Morphism(y, c, tuple(range(k, n)))


def quotient_by_pairs(x: Action, pairs, saturate=True):
    """Quotient by the smallest action-compatible equivalence containing ``pairs``.

    Returns ``(quotient, projection, extra)`` where ``extra`` counts the
    merges that only the generator saturation produced.
    """
    uf = UnionFind(x.n)
    pending = deque()
    for a, b in pairs:
        if uf.union(a, b):
            pending.append((a, b))
    extra = 0
    if saturate:
        while pending:
            a, b = pending.popleft()
            for t in x.trans:
                if uf.union(t[a], t[b]):
                    extra += 1
                    pending.append((t[a], t[b]))
    labels = uf.labels()
    n = max(labels) + 1 if labels else 0
    rep = [None] * n
    for s, b in enumerate(labels):
        if rep[b] is None:
            rep[b] = s
    trans = []
    for t in x.trans:
        col = []
        for r in rep:
            col.append(labels[t[r]])
        trans.append(tuple(col))
    for t, col in zip(x.trans, trans):
        for s in x.states:
            if labels[t[s]] != col[labels[s]]:
                raise ValueError("relation is not compatible with the action")
    q = _derived(x.signature, n, trans, lambda i, m: labels[x.full[rep[i]][m]])
    return q, Morphism(x, q, labels), extra


def pushout(f: Morphism, g: Morphism):
    """Pushout of a span x <- z -> y, with both injections into the result."""
    if f.dom != g.dom:
        raise ValueError("pushout needs a span")
    c, i1, i2 = coproduct(f.cod, g.cod)
    pairs = [(i1.map[f.map[z]], i2.map[g.map[z]]) for z in f.dom.states]
    q, proj, _ = quotient_by_pairs(c, pairs)
    return q, i1.then(proj), i2.then(proj)


def coequalizer(f: Morphism, g: Morphism):
    if f.dom != g.dom or f.cod != g.cod:
        raise ValueError("coequalizer needs a parallel pair")
    q, proj, _ = quotient_by_pairs(f.cod, [(f.map[z], g.map[z]) for z in f.dom.states])
    return q, proj


def _as_endomorphism(x: Action, h):
    if isinstance(h, Morphism):
        if h.dom != x or h.cod != x:
            raise NotEndomorphism(h.map)
        return h.map
    h = tuple(h)
    if len(h) != x.n or any(not 0 <= v < x.n for v in h) or not is_equivariant(x, x, h):
        raise NotEndomorphism(h)
    return h


def universal_quotient(x: Action, pairs):
    """Universal quotient of ``x`` by a relation on End(x).

    The fiber is the quotient of the states by the equivalence generated by
    (h(s), k(s)); since h and k are equivariant this relation is already
    stable under the action, and the saturation pass confirms it.
    """
    maps = [(_as_endomorphism(x, h), _as_endomorphism(x, k)) for h, k in pairs]
    rel = [(h[s], k[s]) for h, k in maps for s in x.states]
    q, p, extra = quotient_by_pairs(x, rel)
    if extra:
        raise AssertionError("saturation merged extra states for equivariant pairs")
    return p, q


def factor_through(p: Morphism, q: Morphism):
    """The unique q' with q = q' o p for an epi p; ValueError if none exists."""
    if p.dom != q.dom:
        raise ValueError("p and q need a common domain")
    img = [None] * p.cod.n
    for s in p.dom.states:
        t = p.map[s]
        if img[t] is None:
            img[t] = q.map[s]
        elif img[t] != q.map[s]:
            raise ValueError("q does not factor through p")
    if any(v is None for v in img):
        raise ValueError("p is not an epimorphism")
    return Morphism(p.cod, q.cod, tuple(img))


def end_monoid(x: Action, cap=DEFAULT_HOM_CAP):
    """End(x) under composition: element i times j is ``maps[i] o maps[j]``."""
    maps = list(iter_homs(x, x, cap))
    return transformation_monoid(x.n, maps, convention=LEFT_CONVENTION)


# --- coverings --------------------------------------------------------------

@dataclass(frozen=True)
class Covering:
    target: Action
    components: tuple


def is_covering(target: Action, components):
    for i, c in enumerate(components):
        if c.cod != target:
            raise ValueError(f"component {i} does not land in the target")
        if not is_mono(c):
            raise NotMono(i)
    covered = set()
    for c in components:
        covered.update(c.map)
    return len(covered) == target.n


def optimal_covering(x: Action):
    """Maximal orbit subobjects covering x, one per distinct state set."""
    if x.n == 0:
        raise EmptyAction("the empty action has no optimal covering")
    orbit_sets = {}
    for s in x.states:
        key = frozenset(orbit(x, s))
        orbit_sets.setdefault(key, s)
    maximal = [
        (rep, key) for key, rep in orbit_sets.items()
        if not any(key < other for other in orbit_sets)
    ]
    maximal.sort()
    components = tuple(orbit_subobject(x, rep)[1] for rep, _ in maximal)
    return Covering(x, components), len(components)


# --- change of monoid -------------------------------------------------------

def restrict_scalars(f: MonoidHom, x: Action):
    """View an M'-set as an M-set along f: M -> M'."""
    if x.signature.is_free or not (x.signature.monoid is f.target or x.signature.monoid == f.target):
        raise SignatureMismatch("action is not over the target of the homomorphism")
    sig = Signature.explicit(f.source)
    full = tuple(tuple(x.full[s][f.map[m]] for m in f.source.elements) for s in x.states)
    trans = tuple(tuple(full[s][g] for s in x.states) for g in sig.generators)
    return Action(sig, x.n, trans, full)


def relabel(x: Action, perm):
    """Copy of x with state s renamed perm[s], and the isomorphism x -> copy."""
    perm = tuple(perm)
    inv = [0] * x.n
    for s, v in enumerate(perm):
        inv[v] = s
    trans = [tuple(perm[t[inv[i]]] for i in range(x.n)) for t in x.trans]
    y = _derived(x.signature, x.n, trans, lambda i, m: perm[x.full[inv[i]][m]])
    return y, Morphism(x, y, perm)
