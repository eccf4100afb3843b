"""Finite monoids given by multiplication tables.

Elements are the integers ``0..order-1``.  Everything here is pure: values are
frozen after construction and every function returns fresh objects.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from semigalois._util import UnionFind, normalize_partition
from semigalois.errors import (
    AssociativityViolation,
    IdentityViolation,
    NotSurjective,
    SideMismatch,
    SizeCapExceeded,
)

RIGHT = "right"
TWO_SIDED = "two-sided"
LEFT_CONVENTION = "left"

DEFAULT_CLOSURE_CAP = 20000


@dataclass(frozen=True)
class FiniteMonoid:
    table: tuple
    identity: int

    @property
    def order(self):
        return len(self.table)

    @property
    def elements(self):
        return range(len(self.table))

    def mul(self, x, y):
        return self.table[x][y]

    def product(self, xs):
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def __repr__(self):
        return f"FiniteMonoid(order={self.order}, identity={self.identity})"


def _as_table(table):
    return tuple(tuple(int(v) for v in row) for row in table)


def validate_monoid(table, identity) -> FiniteMonoid:
    """Check the table is square, associative and has ``identity`` as unit."""
    table = _as_table(table)
    n = len(table)
    if n == 0:
        raise ValueError("a monoid has at least one element")
    for row in table:
        if len(row) != n:
            raise ValueError("multiplication table is not square")
        for v in row:
            if not 0 <= v < n:
                raise ValueError(f"table entry {v} out of range")
    if not 0 <= identity < n:
        raise ValueError(f"identity {identity} out of range")
    for x in range(n):
        if table[identity][x] != x or table[x][identity] != x:
            raise IdentityViolation(x)
    for x in range(n):
        row = table[x]
        for y in range(n):
            xy = row[y]
            for z in range(n):
                if table[xy][z] != row[table[y][z]]:
                    raise AssociativityViolation(x, y, z)
    return FiniteMonoid(table, identity)


# --- small standard monoids -------------------------------------------------

def trivial_monoid():
    return FiniteMonoid(((0,),), 0)


def cyclic_group(n):
    return FiniteMonoid(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0)


def boolean_monoid():
    """{1, 0} under multiplication; element 0 is the identity, 1 the zero."""
    return FiniteMonoid(((0, 1), (1, 1)), 0)


def direct_product(m: FiniteMonoid, n: FiniteMonoid):
    """Pairs (x, y) are numbered x * |N| + y."""
    k = n.order
    table = tuple(
        tuple(m.table[a // k][b // k] * k + n.table[a % k][b % k] for b in range(m.order * k))
        for a in range(m.order * k)
    )
    return FiniteMonoid(table, m.identity * k + n.identity)


# --- homomorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class MonoidHom:
    source: FiniteMonoid
    target: FiniteMonoid
    map: tuple

    def __call__(self, x):
        return self.map[x]

    def is_surjective(self):
        return len(set(self.map)) == self.target.order

    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    def compose(self, after: "MonoidHom"):
        """``after`` applied to the result of ``self``."""
        return MonoidHom(self.source, after.target, tuple(after.map[v] for v in self.map))

    def kernel(self):
        return normalize_partition(self.map)


def is_homomorphism(source, target, mapping):
    if len(mapping) != source.order:
        return False
    if mapping[source.identity] != target.identity:
        return False
    st, tt = source.table, target.table
    for x in source.elements:
        fx = mapping[x]
        for y in source.elements:
            if mapping[st[x][y]] != tt[fx][mapping[y]]:
                return False
    return True


def make_hom(source, target, mapping):
    mapping = tuple(mapping)
    if not is_homomorphism(source, target, mapping):
        raise ValueError("map is not a monoid homomorphism")
    return MonoidHom(source, target, mapping)


def identity_hom(m):
    return MonoidHom(m, m, tuple(m.elements))


# --- congruences ------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    base: FiniteMonoid
    partition: tuple
    side: str = TWO_SIDED

    @property
    def n_blocks(self):
        return max(self.partition) + 1

    def blocks(self):
        out = [[] for _ in range(self.n_blocks)]
        for x, b in enumerate(self.partition):
            out[b].append(x)
        return [tuple(b) for b in out]

    def related(self, x, y):
        return self.partition[x] == self.partition[y]


def is_congruence(m: FiniteMonoid, partition, side=RIGHT):
    """Check stability: the block of x*z (and z*x) depends only on the block of x."""
    t = m.table
    right = {}
    left = {}
    for x in m.elements:
        bx = partition[x]
        for z in m.elements:
            if right.setdefault((bx, z), partition[t[x][z]]) != partition[t[x][z]]:
                return False
            if side == TWO_SIDED and left.setdefault((bx, z), partition[t[z][x]]) != partition[t[z][x]]:
                return False
    return True


def congruence_closure(m: FiniteMonoid, pairs, side=RIGHT) -> Congruence:
    """Smallest congruence of the given side containing ``pairs``."""
    if side not in (RIGHT, TWO_SIDED):
        raise ValueError(f"unknown side {side!r}")
    uf = UnionFind(m.order)
    t = m.table
    pending = deque()
    for x, y in pairs:
        if not (0 <= x < m.order and 0 <= y < m.order):
            raise ValueError(f"pair ({x}, {y}) out of range")
        pending.append((x, y))
    while pending:
        x, y = pending.popleft()
        if not uf.union(x, y):
            continue
        for z in m.elements:
            pending.append((t[x][z], t[y][z]))
            if side == TWO_SIDED:
                pending.append((t[z][x], t[z][y]))
    return Congruence(m, uf.labels(), side)


def quotient_monoid(m: FiniteMonoid, c: Congruence):
    if c.side != TWO_SIDED:
        raise SideMismatch("quotient monoids need a two-sided congruence")
    reps = [b[0] for b in c.blocks()]
    p = c.partition
    table = tuple(tuple(p[m.table[r][s]] for s in reps) for r in reps)
    q = FiniteMonoid(table, p[m.identity])
    return q, MonoidHom(m, q, p)


# --- transformation monoids -------------------------------------------------

@dataclass(frozen=True)
class TransformationMonoid:
    """A monoid of total maps on ``range(degree)``.

    ``convention`` fixes how products read: with ``"right"`` the product
    ``x*y`` applies ``x`` first (transition monoids of right actions); with
    ``"left"`` it is ordinary composition ``x o y`` (endomorphism monoids).
    """

    degree: int
    elements: tuple
    table: tuple
    generators: tuple
    convention: str = RIGHT

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return self.index(tuple(range(self.degree)))

    def index(self, f):
        return self._lookup()[tuple(f)]

    def _lookup(self):
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {f: i for i, f in enumerate(self.elements)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    @property
    def monoid(self):
        cached = self.__dict__.get("_monoid_cache")
        if cached is None:
            cached = FiniteMonoid(self.table, self.identity)
            object.__setattr__(self, "_monoid_cache", cached)
        return cached


def compose_maps(first, then):
    """The map ``x -> then[first[x]]``."""
    return tuple(then[v] for v in first)


def _product(f, g, convention):
    return compose_maps(f, g) if convention == RIGHT else compose_maps(g, f)


def transformation_monoid(degree, maps, generators=(), convention=RIGHT):
    """Package an already closed list of maps with its multiplication table."""
    maps = tuple(tuple(f) for f in maps)
    index = {f: i for i, f in enumerate(maps)}
    if len(index) != len(maps):
        raise ValueError("maps are not distinct")
    if tuple(range(degree)) not in index:
        raise ValueError("identity map missing")
    table = []
    for f in maps:
        row = []
        for g in maps:
            h = _product(f, g, convention)
            if h not in index:
                raise ValueError("maps are not closed under composition")
            row.append(index[h])
        table.append(tuple(row))
    return TransformationMonoid(degree, maps, tuple(table), tuple(generators), convention)


def submonoid_closure(degree, generator_maps, cap=DEFAULT_CLOSURE_CAP, convention=RIGHT):
    """Breadth-first closure of ``generator_maps`` under composition.

    The identity comes first; later elements appear in the order they are
    discovered by multiplying known elements by generators on the right.
    """
    gens = [tuple(g) for g in generator_maps]
    for g in gens:
        if len(g) != degree or any(not 0 <= v < degree for v in g):
            raise ValueError(f"generator {g} is not a total map on {degree} states")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        f = queue.popleft()
        for g in gens:
            h = _product(f, g, convention)
            if h not in index:
                if cap is not None and len(elements) >= cap:
                    raise SizeCapExceeded(cap, "submonoid closure")
                index[h] = len(elements)
                elements.append(h)
                queue.append(h)
    table = tuple(
        tuple(index[_product(f, g, convention)] for g in elements) for f in elements
    )
    gen_idx = tuple(index[g] for g in gens)
    return TransformationMonoid(degree, tuple(elements), table, gen_idx, convention)


# --- decision procedures ----------------------------------------------------

def is_group(m: FiniteMonoid):
    e = m.identity
    t = m.table
    return all(any(t[x][y] == e and t[y][x] == e for y in m.elements) for x in m.elements)


def idempotent_power(m: FiniteMonoid, x):
    """Return x^omega, the unique idempotent among the powers of x."""
    t = m.table
    seen = {}
    powers = []
    p = x
    while p not in seen:
        seen[p] = len(powers)
        powers.append(p)
        p = t[p][x]
    start = seen[p]
    period = len(powers) - start
    # the cycle powers[start:] is a cyclic group; its identity is x^k with
    # k >= start (1-based exponents) and k divisible by period
    for i in range(start, len(powers)):
        if (i + 1) % period == 0:
            return powers[i]
    raise AssertionError("no idempotent power found")  # unreachable


def aperiodicity_witness(m: FiniteMonoid) -> Optional[int]:
    """First element with x^omega != x^(omega+1), or None if aperiodic."""
    for x in m.elements:
        w = idempotent_power(m, x)
        if m.table[w][x] != w:
            return x
    return None


def is_aperiodic(m: FiniteMonoid):
    return aperiodicity_witness(m) is None


def generating_set(m: FiniteMonoid):
    """Greedy generating set: scan elements in order, keep those not yet generated."""
    gens = []
    generated = {m.identity}
    for x in m.elements:
        if x in generated:
            continue
        gens.append(x)
        frontier = deque(generated)
        generated_now = set(generated)
        while frontier:
            y = frontier.popleft()
            for g in gens:
                z = m.table[y][g]
                if z not in generated_now:
                    generated_now.add(z)
                    frontier.append(z)
        generated = generated_now
    return tuple(gens)


def submonoid_generated(m: FiniteMonoid, gens):
    seen = {m.identity}
    queue = deque([m.identity])
    while queue:
        y = queue.popleft()
        for g in gens:
            z = m.table[y][g]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def extend_on_generators(source, target, gens, images):
    """Propagate generator images along right multiplication.

    Returns a dict from the submonoid generated by ``gens`` to ``target``, or
    None when two products of generators are forced to different images.
    """
    image = {source.identity: target.identity}
    queue = deque([source.identity])
    while queue:
        x = queue.popleft()
        fx = image[x]
        for g, ig in zip(gens, images):
            y = source.table[x][g]
            fy = target.table[fx][ig]
            if y in image:
                if image[y] != fy:
                    return None
            else:
                image[y] = fy
                queue.append(y)
    return image


def _cyclic_profile(m, x):
    t = m.table
    seen = {}
    p = x
    k = 0
    while p not in seen:
        seen[p] = k
        p = t[p][x]
        k += 1
    return seen[p], k - seen[p]


def monoid_iso_check(m: FiniteMonoid, n: FiniteMonoid):
    """Some isomorphism m -> n as an element tuple, or None.

    Backtracks over images of a greedy generating set of ``m``, trying
    candidates in increasing index order.
    """
    if m.order != n.order:
        return None
    prof_m = [_cyclic_profile(m, x) for x in m.elements]
    prof_n = [_cyclic_profile(n, x) for x in n.elements]
    if sorted(prof_m) != sorted(prof_n):
        return None
    gens = generating_set(m)
    candidates = [[y for y in n.elements if prof_n[y] == prof_m[g]] for g in gens]

    def search(k, chosen):
        partial = extend_on_generators(m, n, gens[:k], chosen)
        if partial is None or len(set(partial.values())) != len(partial):
            return None
        if k == len(gens):
            mapping = tuple(partial[x] for x in m.elements)
            return mapping if is_homomorphism(m, n, mapping) else None
        for y in candidates[k]:
            found = search(k + 1, chosen + [y])
            if found is not None:
                return found
        return None

    return search(0, [])


def find_hom_on_generators(source, target, gens, images):
    """The unique homomorphism with prescribed generator images, if any."""
    partial = extend_on_generators(source, target, gens, images)
    if partial is None or len(partial) != source.order:
        return None
    mapping = tuple(partial[x] for x in source.elements)
    if not is_homomorphism(source, target, mapping):
        return None
    return MonoidHom(source, target, mapping)


def check_surjective(h: MonoidHom):
    if not h.is_surjective():
        raise NotSurjective("homomorphism is not onto its target")


# --- exhaustive enumeration -------------------------------------------------

def _canonical_fixing_identity(table):
    n = len(table)
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        relabeled = tuple(tuple(p[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or relabeled < best:
            best = relabeled
    return best


def enumerate_monoids(order):
    """All monoids of the given order up to isomorphism, identity at index 0.

    Fills the non-identity cells by backtracking, pruning any partial table
    with a fully determined associativity failure, then keeps one canonical
    table per isomorphism class.
    """
    n = order
    if n < 1:
        raise ValueError("order must be positive")
    table = [[None] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = x
        table[x][0] = x
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]
    found = set()

    def consistent():
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                if ab is None:
                    continue
                for c in range(n):
                    bc = table[b][c]
                    if bc is None:
                        continue
                    l, r = table[ab][c], table[a][bc]
                    if l is not None and r is not None and l != r:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            found.add(_canonical_fixing_identity(tuple(tuple(r) for r in table)))
            return
        x, y = cells[k]
        for v in range(n):
            table[x][y] = v
            if consistent():
                fill(k + 1)
        table[x][y] = None

    fill(0)
    return [FiniteMonoid(t, 0) for t in sorted(found)]
