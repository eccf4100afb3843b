"""Regular languages, stamps and generated local varieties.

Languages are kept as canonical minimal complete DFAs: reachable states only,
Moore-minimized, numbered breadth first from the start state with letters in
alphabet order.  Equal languages therefore have equal representations, so
Python equality and hashing act as language equality.

A local variety is stored as one recognizing stamp; its languages are the
preimages of subsets of the stamp's target.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian

from semigalois.actions import Action, Signature, validate_action
from semigalois.errors import (
    AlphabetMismatch,
    NotSurjective,
    ParseError,
    SizeCapExceeded,
    UnknownLetter,
)
from semigalois.monoid import (
    DEFAULT_CLOSURE_CAP,
    FiniteMonoid,
    MonoidHom,
    aperiodicity_witness,
    extend_on_generators,
    is_homomorphism,
    submonoid_closure,
    submonoid_generated,
    trivial_monoid,
)

DEFAULT_LANG_CAP = 12
EMPTY_SYMBOLS = ("∅", "[]")
EPSILON_SYMBOLS = ("ε", "()")


def _letters(alphabet, word):
    """Letter indices of ``word`` (a string of one-character letters or a sequence)."""
    out = []
    for c in word:
        try:
            out.append(alphabet.index(c))
        except ValueError:
            raise UnknownLetter(f"letter {c!r} is not in the alphabet {list(alphabet)}") from None
    return out


@dataclass(frozen=True)
class RegularLanguage:
    alphabet: tuple
    dfa: Action
    start: int
    accept: tuple
    canonical: bool = True

    @property
    def n_states(self):
        return self.dfa.n

    def accepts(self, word):
        return self.dfa.run(self.start, _letters(self.alphabet, word)) in self.accept

    def is_empty(self):
        return not self.accept

    def __repr__(self):
        return f"RegularLanguage(alphabet={''.join(self.alphabet)}, states={self.dfa.n}, accept={self.accept})"


def canonicalize(alphabet, trans, start, accepts) -> RegularLanguage:
    """Canonical minimal DFA for the language of ``(trans, start, accepts)``."""
    alphabet = tuple(alphabet)
    accepts = set(accepts)
    # reachable part, breadth first
    order = [start]
    seen = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in trans:
            v = t[s]
            if v not in seen:
                seen[v] = len(order)
                order.append(v)
                queue.append(v)
    # Moore refinement on the reachable states
    block = [1 if s in accepts else 0 for s in order]
    n_blocks = len(set(block))
    while True:
        keys = {}
        new = []
        for i, s in enumerate(order):
            key = (block[i],) + tuple(block[seen[t[s]]] for t in trans)
            new.append(keys.setdefault(key, len(keys)))
        block = new
        if len(keys) == n_blocks:
            break
        n_blocks = len(keys)
    # renumber blocks breadth first from the start block
    rep = {}
    for i, b in enumerate(block):
        rep.setdefault(b, order[i])
    number = {block[0]: 0}
    queue = deque([block[0]])
    while queue:
        b = queue.popleft()
        for t in trans:
            c = block[seen[t[rep[b]]]]
            if c not in number:
                number[c] = len(number)
                queue.append(c)
    n = len(number)
    by_number = sorted(number, key=number.get)
    new_trans = tuple(
        tuple(number[block[seen[t[rep[b]]]]] for b in by_number) for t in trans
    )
    accept = tuple(number[b] for b in by_number if rep[b] in accepts)
    dfa = Action(Signature.free(alphabet), n, new_trans)
    return RegularLanguage(alphabet, dfa, 0, tuple(sorted(accept)), True)


def from_components(alphabet, transitions, start, accepts, n_states=None) -> RegularLanguage:
    """Language of a DFA given as (state, letter, state) triples."""
    alphabet = tuple(alphabet)
    triples = list(transitions)
    if n_states is None:
        n_states = 1 + max([start] + [max(s, t) for s, _, t in triples])
    trans = [[None] * n_states for _ in alphabet]
    for s, letter, t in triples:
        (a,) = _letters(alphabet, [letter])
        if not (0 <= s < n_states and 0 <= t < n_states):
            raise ValueError(f"transition {s} {letter} {t} leaves the state range")
        trans[a][s] = t
    for a, col in enumerate(trans):
        for s, v in enumerate(col):
            if v is None:
                raise ValueError(f"missing transition from state {s} on {alphabet[a]!r}")
    return canonicalize(alphabet, trans, start, accepts)


def from_action(x: Action, start, accepts) -> RegularLanguage:
    return canonicalize(x.signature.alphabet, x.trans, start, accepts)


def empty_language(alphabet):
    return canonicalize(alphabet, [(0,)] * len(alphabet), 0, ())


def full_language(alphabet):
    return canonicalize(alphabet, [(0,)] * len(alphabet), 0, (0,))


# --- regular expressions ----------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def error(self, msg):
        return ParseError(msg, column=self.pos + 1)

    def parse(self):
        node = self.alternation()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def alternation(self):
        branches = [self.concatenation()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.concatenation())
        return branches[0] if len(branches) == 1 else ("alt", branches)

    def concatenation(self):
        parts = []
        while self.peek() is not None and self.peek() not in "|)":
            parts.append(self.starred())
        if not parts:
            raise self.error("expected an expression")
        return parts[0] if len(parts) == 1 else ("cat", parts)

    def starred(self):
        node = self.atom()
        while self.peek() == "*":
            self.pos += 1
            node = ("star", node)
        return node

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return ("eps",)
            node = self.alternation()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return node
        if c == "[":
            self.pos += 1
            if self.peek() != "]":
                raise self.error("expected ']'")
            self.pos += 1
            return ("empty",)
        if c == "∅":
            self.pos += 1
            return ("empty",)
        if c == "ε":
            self.pos += 1
            return ("eps",)
        if c is None or c in "*|)]":
            raise self.error(f"unexpected {c!r}" if c else "unexpected end of input")
        self.pos += 1
        return ("sym", c)


def _symbols(node, out):
    if node[0] == "sym":
        out.add(node[1])
    elif node[0] in ("alt", "cat"):
        for child in node[1]:
            _symbols(child, out)
    elif node[0] == "star":
        _symbols(node[1], out)
    return out


def _thompson(node, alphabet):
    """Epsilon-NFA as (n_states, eps edges, letter edges, start, final)."""
    eps = []
    edges = []
    count = [0]

    def new():
        count[0] += 1
        return count[0] - 1

    def build(nd):
        kind = nd[0]
        s, f = new(), new()
        if kind == "sym":
            edges.append((s, alphabet.index(nd[1]), f))
        elif kind == "eps":
            eps.append((s, f))
        elif kind == "empty":
            pass
        elif kind == "cat":
            prev = s
            for child in nd[1]:
                cs, cf = build(child)
                eps.append((prev, cs))
                prev = cf
            eps.append((prev, f))
        elif kind == "alt":
            for child in nd[1]:
                cs, cf = build(child)
                eps.append((s, cs))
                eps.append((cf, f))
        elif kind == "star":
            cs, cf = build(nd[1])
            eps.extend([(s, f), (s, cs), (cf, cs), (cf, f)])
        return s, f

    start, final = build(node)
    return count[0], eps, edges, start, final


def parse_regex(text, alphabet=None) -> RegularLanguage:
    """Compile a regular expression to its canonical DFA.

    Grammar: letters (single characters), concatenation, ``|``, ``*``,
    parentheses, ``∅`` (or ``[]``) for the empty language and ``ε`` (or
    ``()``) for the empty word.  Without ``alphabet`` the letters used are
    taken in sorted order.
    """
    node = _Parser(text).parse()
    used = _symbols(node, set())
    if alphabet is None:
        if not used:
            raise ParseError("cannot infer an alphabet from a letter-free expression")
        alphabet = tuple(sorted(used))
    alphabet = tuple(alphabet)
    for c in sorted(used):
        if c not in alphabet:
            raise UnknownLetter(f"letter {c!r} is not in the alphabet {list(alphabet)}")
    n, eps, edges, start, final = _thompson(node, alphabet)
    eps_out = [[] for _ in range(n)]
    for a, b in eps:
        eps_out[a].append(b)
    moves = [[[] for _ in alphabet] for _ in range(n)]
    for a, letter, b in edges:
        moves[a][letter].append(b)

    def closure(states):
        stack = list(states)
        seen = set(states)
        while stack:
            s = stack.pop()
            for t in eps_out[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    first = closure([start])
    index = {first: 0}
    subsets = [first]
    trans = [[] for _ in alphabet]
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        for letter in range(len(alphabet)):
            nxt = closure([t for s in cur for t in moves[s][letter]])
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
            trans[letter].append(index[nxt])
        i += 1
    accepts = [k for k, sub in enumerate(subsets) if final in sub]
    return canonicalize(alphabet, trans, 0, accepts)


# --- Boolean operations and quotients ----------------------------------------

def _same_alphabet(l1, l2):
    if l1.alphabet != l2.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {l1.alphabet} vs {l2.alphabet}")


def complement(lang: RegularLanguage):
    rejected = [s for s in lang.dfa.states if s not in lang.accept]
    return canonicalize(lang.alphabet, lang.dfa.trans, lang.start, rejected)


def _product_language(l1, l2, keep):
    _same_alphabet(l1, l2)
    k = l2.n_states
    n = l1.n_states * k
    trans = [
        tuple(t1[i // k] * k + t2[i % k] for i in range(n))
        for t1, t2 in zip(l1.dfa.trans, l2.dfa.trans)
    ]
    a1, a2 = set(l1.accept), set(l2.accept)
    accepts = [i for i in range(n) if keep(i // k in a1, i % k in a2)]
    return canonicalize(l1.alphabet, trans, l1.start * k + l2.start, accepts)


def union(l1, l2):
    return _product_language(l1, l2, lambda x, y: x or y)


def intersection(l1, l2):
    return _product_language(l1, l2, lambda x, y: x and y)


def left_quotient(word, lang: RegularLanguage):
    """Words v with word.v in lang."""
    start = lang.dfa.run(lang.start, _letters(lang.alphabet, word))
    return canonicalize(lang.alphabet, lang.dfa.trans, start, lang.accept)


def right_quotient(lang: RegularLanguage, word):
    """Words v with v.word in lang."""
    w = _letters(lang.alphabet, word)
    acc = set(lang.accept)
    accepts = [s for s in lang.dfa.states if lang.dfa.run(s, w) in acc]
    return canonicalize(lang.alphabet, lang.dfa.trans, lang.start, accepts)


@dataclass(frozen=True)
class FreeHom:
    """Letter-to-word map from words over ``source`` to words over ``target``."""

    source: tuple
    target: tuple
    images: tuple

    def __post_init__(self):
        if len(self.images) != len(self.source):
            raise ValueError("one image word per source letter is required")
        for w in self.images:
            _letters(self.target, w)

    def apply(self, word):
        out = []
        for a in _letters(self.source, word):
            out.extend(self.images[a])
        return out


def free_hom(source, target, images):
    """Build a FreeHom; images may be strings or letter sequences."""
    return FreeHom(tuple(source), tuple(target), tuple(tuple(w) for w in images))


def pullback_action(f: FreeHom, x: Action) -> Action:
    """The DFA over f's source where letter a runs f(a) in x."""
    if tuple(x.signature.alphabet) != f.target:
        raise AlphabetMismatch("action alphabet differs from the homomorphism target")
    words = [_letters(f.target, w) for w in f.images]
    trans = [tuple(x.run(s, w) for s in x.states) for w in words]
    return validate_action(Signature.free(f.source), trans, n_states=x.n)


def inverse_hom_image(f: FreeHom, lang: RegularLanguage):
    if lang.alphabet != f.target:
        raise AlphabetMismatch("language alphabet differs from the homomorphism target")
    x = pullback_action(f, lang.dfa)
    return from_action(x, lang.start, lang.accept)


# --- stamps -----------------------------------------------------------------

@dataclass(frozen=True)
class Stamp:
    """Onto homomorphism from words over ``alphabet`` to ``target``."""

    alphabet: tuple
    target: FiniteMonoid
    letter_images: tuple

    def __post_init__(self):
        if len(self.letter_images) != len(self.alphabet):
            raise ValueError("one image per letter is required")
        if len(submonoid_generated(self.target, self.letter_images)) != self.target.order:
            raise NotSurjective("letter images do not generate the target")

    def image(self, word):
        m = self.target
        x = m.identity
        for a in _letters(self.alphabet, word):
            x = m.table[x][self.letter_images[a]]
        return x


def stamps_isomorphic(s: Stamp, t: Stamp):
    """The letter-respecting isomorphism s.target -> t.target, or None."""
    if s.alphabet != t.alphabet or s.target.order != t.target.order:
        return None
    ext = extend_on_generators(s.target, t.target, s.letter_images, t.letter_images)
    if ext is None or len(set(ext.values())) != s.target.order:
        return None
    return MonoidHom(s.target, t.target, tuple(ext[x] for x in s.target.elements))


def factoring_hom(s: Stamp, t: Stamp):
    """The h with t = h o s, when t is a quotient of s; otherwise None."""
    if s.alphabet != t.alphabet:
        raise AlphabetMismatch("stamps over different alphabets")
    ext = extend_on_generators(s.target, t.target, s.letter_images, t.letter_images)
    if ext is None:
        return None
    h = MonoidHom(s.target, t.target, tuple(ext[x] for x in s.target.elements))
    assert is_homomorphism(h.source, h.target, h.map)
    return h


def transition_stamp(alphabet, n, trans, cap=DEFAULT_CLOSURE_CAP):
    closure = submonoid_closure(n, trans, cap)
    images = tuple(closure.index(t) for t in trans)
    return Stamp(tuple(alphabet), closure.monoid, images), closure


def syntactic_stamp(lang: RegularLanguage, cap=DEFAULT_CLOSURE_CAP):
    """Transition stamp of the minimal DFA and the accepting element set."""
    stamp, closure = transition_stamp(lang.alphabet, lang.n_states, lang.dfa.trans, cap)
    acc = set(lang.accept)
    accept_set = tuple(i for i, f in enumerate(closure.elements) if f[lang.start] in acc)
    if preimage(stamp, accept_set) != lang:
        raise AssertionError("syntactic stamp does not recognize its language")
    return stamp, accept_set


def stamp_to_action(s: Stamp) -> Action:
    """Right-regular DFA: states are target elements, letter a multiplies by its image."""
    m = s.target
    trans = [tuple(m.table[x][g] for x in m.elements) for g in s.letter_images]
    return validate_action(Signature.free(s.alphabet), trans, n_states=m.order)


def preimage(s: Stamp, subset):
    return from_action(stamp_to_action(s), s.target.identity, subset)


def action_to_stamp(x: Action, cap=DEFAULT_CLOSURE_CAP) -> Stamp:
    if x.n == 0:
        raise ValueError("the empty action has no transition stamp")
    return transition_stamp(x.signature.alphabet, x.n, x.trans, cap)[0]


def stamp_trivial(alphabet) -> Stamp:
    alphabet = tuple(alphabet)
    return Stamp(alphabet, trivial_monoid(), (0,) * len(alphabet))


def stamp_product(s: Stamp, t: Stamp) -> Stamp:
    """Image of the pairing of s and t inside the product of their targets."""
    if s.alphabet != t.alphabet:
        raise AlphabetMismatch("stamps over different alphabets")
    m, n = s.target, t.target
    pairs = list(zip(s.letter_images, t.letter_images))
    ident = (m.identity, n.identity)
    order = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x, y = queue.popleft()
        for g, h in pairs:
            z = (m.table[x][g], n.table[y][h])
            if z not in index:
                index[z] = len(order)
                order.append(z)
                queue.append(z)
    table = tuple(
        tuple(index[(m.table[a][c], n.table[b][d])] for c, d in order) for a, b in order
    )
    return Stamp(s.alphabet, FiniteMonoid(table, 0), tuple(index[p] for p in pairs))


def stamp_quotient(h: MonoidHom, s: Stamp) -> Stamp:
    if h.source != s.target:
        raise ValueError("homomorphism does not start at the stamp target")
    if not h.is_surjective():
        raise NotSurjective("quotient map is not onto")
    return Stamp(s.alphabet, h.target, tuple(h.map[g] for g in s.letter_images))


def recognized_languages(s: Stamp, cap=DEFAULT_LANG_CAP):
    """Every preimage of a subset of the target, in subset bitmask order."""
    n = s.target.order
    if cap is not None and n > cap:
        raise SizeCapExceeded(cap, "recognized languages (target order)")
    x = stamp_to_action(s)
    out = []
    seen = set()
    for mask in range(1 << n):
        lang = from_action(x, s.target.identity, [i for i in range(n) if mask >> i & 1])
        if lang not in seen:
            seen.add(lang)
            out.append(lang)
    return out


def action_languages(x: Action, cap=DEFAULT_LANG_CAP):
    """Languages of x for every start state and accepting set."""
    if x.n == 0:
        raise ValueError("the empty action accepts no start state")
    if cap is not None and x.n > cap:
        raise SizeCapExceeded(cap, "action languages (state count)")
    out = []
    seen = set()
    for q0 in x.states:
        for mask in range(1 << x.n):
            lang = from_action(x, q0, [i for i in x.states if mask >> i & 1])
            if lang not in seen:
                seen.add(lang)
                out.append(lang)
    return out


# --- local varieties --------------------------------------------------------

@dataclass(frozen=True)
class LocalVariety:
    alphabet: tuple
    stamp: Stamp

    def languages(self, cap=DEFAULT_LANG_CAP):
        return recognized_languages(self.stamp, cap)


def local_variety_generate(languages, cap=DEFAULT_CLOSURE_CAP) -> LocalVariety:
    languages = list(languages)
    if not languages:
        raise ValueError("need at least one language")
    alphabet = languages[0].alphabet
    stamp = None
    for lang in languages:
        if lang.alphabet != alphabet:
            raise AlphabetMismatch("generators over different alphabets")
        syn, _ = syntactic_stamp(lang, cap)
        stamp = syn if stamp is None else stamp_product(stamp, syn)
    v = LocalVariety(alphabet, stamp)
    for lang in languages:
        if not variety_membership(v, lang):
            raise AssertionError("generated variety misses one of its generators")
    return v


def membership_witness(v: LocalVariety, lang: RegularLanguage):
    """Factoring hom from the variety stamp onto the syntactic stamp of lang, or None."""
    if lang.alphabet != v.alphabet:
        raise AlphabetMismatch("language and variety over different alphabets")
    syn, _ = syntactic_stamp(lang)
    return factoring_hom(v.stamp, syn)


def variety_membership(v: LocalVariety, lang: RegularLanguage):
    return membership_witness(v, lang) is not None


def action_in_variety(v: LocalVariety, x: Action):
    """Whether the transition stamp of x is a quotient of the variety stamp."""
    return factoring_hom(v.stamp, action_to_stamp(x)) is not None


def brute_closure_oracle(languages, alphabet=None, cap=4096):
    """Closure under Boolean operations and word quotients, by direct search.

    First every language reachable by one-letter left and right quotients is
    collected with a worklist; then the Boolean algebra they generate is
    enumerated as all unions of its atoms.  Quotients commute with Boolean
    operations, so the result is closed under all of them (checked at the end).
    """
    languages = list(languages)
    if alphabet is None:
        if not languages:
            raise ValueError("need an alphabet or at least one language")
        alphabet = languages[0].alphabet
    alphabet = tuple(alphabet)
    for lang in languages:
        if lang.alphabet != alphabet:
            raise AlphabetMismatch("inputs over different alphabets")
    found = set()
    work = deque()
    for lang in languages:
        if lang not in found:
            found.add(lang)
            work.append(lang)
    while work:
        lang = work.popleft()
        for a in alphabet:
            for q in (left_quotient([a], lang), right_quotient(lang, [a])):
                if q not in found:
                    if len(found) >= cap:
                        raise SizeCapExceeded(cap, "quotient closure")
                    found.add(q)
                    work.append(q)
    atoms = [full_language(alphabet)]
    for lang in sorted(found, key=_sort_key):
        other = complement(lang)
        split = []
        for atom in atoms:
            for piece in (intersection(atom, lang), intersection(atom, other)):
                if not piece.is_empty():
                    split.append(piece)
        atoms = split
    if 1 << len(atoms) > cap:
        raise SizeCapExceeded(cap, "Boolean closure")
    closure = [empty_language(alphabet)]
    for atom in atoms:
        closure += [union(x, atom) for x in closure]
    result = set(closure)
    for lang in closure:
        assert complement(lang) in result
        for a in alphabet:
            assert left_quotient([a], lang) in result and right_quotient(lang, [a]) in result
    return sorted(result, key=_sort_key)


def _sort_key(lang: RegularLanguage):
    return (lang.n_states, lang.dfa.trans, lang.accept)


def variety_correspondence_check(languages, actions, lang_cap=DEFAULT_LANG_CAP):
    """Compare the variety generated by languages with the one generated by actions.

    Checks, each reported separately:
    ``languages``: languages -> stamp -> languages equals the brute closure;
    ``actions``: actions -> stage stamp -> right-regular action -> stamp is
    the same stamp up to a letter-respecting isomorphism;
    ``action_languages``: every language of a generating action is recognized
    by the action stamp;
    ``same_variety``: the two stamps agree up to isomorphism (only when both
    generator lists are given).
    """
    from semigalois.galois import fundamental_monoid

    report = {}
    lang_stamp = act_stamp = None
    if languages:
        v = local_variety_generate(languages)
        lang_stamp = v.stamp
        generated = set(recognized_languages(v.stamp, lang_cap))
        oracle = set(brute_closure_oracle(languages))
        report["languages"] = generated == oracle
    if actions:
        stage = fundamental_monoid(actions)
        alphabet = actions[0].signature.alphabet
        act_stamp = Stamp(alphabet, stage.monoid.monoid, stage.stamp)
        again = action_to_stamp(stamp_to_action(act_stamp))
        report["actions"] = stamps_isomorphic(again, act_stamp) is not None
        va = LocalVariety(alphabet, act_stamp)
        report["action_languages"] = all(
            variety_membership(va, lang) for x in actions for lang in action_languages(x, lang_cap)
        )
    if lang_stamp is not None and act_stamp is not None:
        report["same_variety"] = stamps_isomorphic(lang_stamp, act_stamp) is not None
    return report


def is_fo_definable(lang: RegularLanguage):
    return fo_witness(lang) is None


def fo_witness(lang: RegularLanguage):
    """An element x of the syntactic monoid with x^omega != x^(omega+1), if any."""
    stamp, _ = syntactic_stamp(lang)
    return aperiodicity_witness(stamp.target)


# --- closure along free-monoid homomorphisms ---------------------------------

def m4_holds(s: Stamp, t: Stamp, f: FreeHom, j: MonoidHom):
    """Whether j is an embedding of s's target into t's with j o s = t o f."""
    if s.alphabet != f.source or t.alphabet != f.target:
        raise AlphabetMismatch("stamps do not match the homomorphism alphabets")
    if j.source != s.target or j.target != t.target:
        return False
    if not j.is_injective() or not is_homomorphism(j.source, j.target, j.map):
        return False
    return all(j.map[s.letter_images[a]] == t.image(f.images[a]) for a in range(len(s.alphabet)))


def pulled_back_stamp(f: FreeHom, t: Stamp) -> Stamp:
    """t o f corestricted to its image submonoid."""
    images = [t.image(w) for w in f.images]
    elems = sorted(submonoid_generated(t.target, images))
    pos = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(pos[t.target.table[x][y]] for y in elems) for x in elems)
    sub = FiniteMonoid(table, pos[t.target.identity])
    return Stamp(f.source, sub, tuple(pos[x] for x in images))


def r4_check(f: FreeHom, v_source: LocalVariety, v_target: LocalVariety):
    """Whether every inverse image along f of a target-variety language lies in the source variety.

    Those inverse images are exactly the languages recognized by t o f, so it
    suffices that the corestricted stamp is a quotient of the source stamp.
    """
    if v_source.alphabet != f.source or v_target.alphabet != f.target:
        raise AlphabetMismatch("varieties do not match the homomorphism alphabets")
    return factoring_hom(v_source.stamp, pulled_back_stamp(f, v_target.stamp)) is not None


def d5_check(f: FreeHom, v_source: LocalVariety, x: Action):
    """Whether the pullback of the action x along f lies in the source variety."""
    return action_in_variety(v_source, pullback_action(f, x))


def words_up_to(alphabet, length):
    """All words (as tuples of letters) of length at most ``length``, shortlex."""
    out = [()]
    for k in range(1, length + 1):
        out.extend(cartesian(alphabet, repeat=k))
    return out
