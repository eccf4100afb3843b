import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from semigalois.actions import Signature, action_isomorphism, validate_action
from semigalois.axioms import random_dfa
from semigalois.errors import AlphabetMismatch, ParseError, SizeCapExceeded, UnknownLetter
from semigalois.languages import (
    LocalVariety,
    Stamp,
    action_languages,
    action_to_stamp,
    brute_closure_oracle,
    complement,
    d5_check,
    empty_language,
    factoring_hom,
    free_hom,
    from_action,
    from_components,
    full_language,
    intersection,
    inverse_hom_image,
    is_fo_definable,
    left_quotient,
    local_variety_generate,
    m4_holds,
    membership_witness,
    parse_regex,
    pullback_action,
    r4_check,
    recognized_languages,
    right_quotient,
    stamp_product,
    stamp_quotient,
    stamp_to_action,
    stamp_trivial,
    stamps_isomorphic,
    syntactic_stamp,
    union,
    variety_correspondence_check,
    variety_membership,
    words_up_to,
)
from semigalois.monoid import (
    MonoidHom,
    cyclic_group,
    direct_product,
    is_aperiodic,
    is_homomorphism,
    monoid_iso_check,
    trivial_monoid,
)

A = ("a",)
AB = ("a", "b")


def even():
    return parse_regex("(aa)*", A)


def odd():
    return parse_regex("a(aa)*", A)


def contains_a():
    return parse_regex("(a|b)*a(a|b)*", AB)


def random_language(rng, alphabet=AB, max_states=3):
    x = random_dfa(rng, Signature.free(alphabet), max_states)
    return from_action(x, 0, [s for s in x.states if rng.random() < 0.5])


def same_words(l1, l2, length):
    return all(l1.accepts(w) == l2.accepts(w) for w in words_up_to(l1.alphabet, length))


# --- construction ----------------------------------------------------------------

def test_even_length_dfa():
    lang = even()
    assert lang.n_states == 2 and lang.start == 0 and lang.accept == (0,)
    assert lang.dfa.trans == ((1, 0),)


def test_empty_regex_is_sink():
    lang = parse_regex("∅", A)
    assert lang.n_states == 1 and lang.accept == ()
    assert parse_regex("[]", A) == lang


def test_a_or_b():
    lang = parse_regex("a|b", AB)
    assert lang.n_states == 3
    assert [lang.accepts(w) for w in ["", "a", "b", "ab"]] == [False, True, True, False]


def test_epsilon_forms():
    assert parse_regex("ε", A) == parse_regex("()", A)
    assert parse_regex("ε", A).accepts("") and not parse_regex("ε", A).accepts("a")


def test_parse_errors():
    with pytest.raises(ParseError) as err:
        parse_regex("(ab", AB)
    assert err.value.column == 4
    for bad in ["a|", "*a", ")", "[a]"]:
        with pytest.raises(ParseError):
            parse_regex(bad, AB)
    with pytest.raises(UnknownLetter):
        parse_regex("c", AB)


def test_from_components_minimizes():
    # three states, two of them equivalent accepting sinks
    lang = from_components(A, [(0, "a", 1), (1, "a", 2), (2, "a", 2)], 0, [1, 2])
    assert lang.n_states == 2
    assert lang == parse_regex("aa*", A)
    with pytest.raises(UnknownLetter):
        from_components(A, [(0, "z", 0)], 0, [])


def nfa_regex(rng, depth=3):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(["a", "b", "ε", "∅"])
    kind = rng.choice(["cat", "alt", "star"])
    if kind == "star":
        return f"({nfa_regex(rng, depth - 1)})*"
    sep = "" if kind == "cat" else "|"
    return f"({nfa_regex(rng, depth - 1)}{sep}{nfa_regex(rng, depth - 1)})"


def regex_matches(expr, word):
    import re

    pattern = expr.replace("ε", "").replace("∅", "[^\\s\\S]").replace("()", "(?:)")
    return re.fullmatch(pattern, word) is not None


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_regex_agrees_with_backtracking_matcher(seed):
    rng = random.Random(seed)
    expr = nfa_regex(rng)
    lang = parse_regex(expr, AB)
    for w in words_up_to(AB, 5):
        assert lang.accepts(w) == regex_matches(expr, "".join(w)), (expr, w)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_canonical_form_is_sound_and_idempotent(seed):
    rng = random.Random(seed)
    x = random_dfa(rng, Signature.free(AB), 4)
    accepts = [s for s in x.states if rng.random() < 0.5]
    raw_start = rng.randrange(x.n)
    lang = from_action(x, raw_start, accepts)
    assert from_action(lang.dfa, lang.start, lang.accept) == lang
    for w in words_up_to(AB, 6):
        assert lang.accepts(w) == (x.run(raw_start, [AB.index(c) for c in w]) in accepts)
    other = random_language(rng, AB, 4)
    # DFAs with n1 and n2 states that agree on words shorter than n1 + n2 agree everywhere
    bound = lang.n_states + other.n_states
    assert (lang == other) == same_words(lang, other, bound)


# --- Boolean operations and quotients --------------------------------------------------

def test_boolean_examples():
    assert complement(empty_language(A)) == full_language(A)
    lang = contains_a()
    assert union(lang, complement(lang)) == full_language(AB)
    assert intersection(even(), odd()).is_empty()
    with pytest.raises(AlphabetMismatch):
        union(even(), contains_a())


def test_quotient_examples():
    assert left_quotient("", even()) == even()
    assert left_quotient("a", even()) == odd()
    assert right_quotient(contains_a(), "a") == full_language(AB)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_operations_pointwise(seed):
    rng = random.Random(seed)
    l1, l2 = random_language(rng), random_language(rng)
    u, i, c = union(l1, l2), intersection(l1, l2), complement(l1)
    lq, rq = left_quotient("ab", l1), right_quotient(l1, "ba")
    for w in words_up_to(AB, 5):
        w = "".join(w)
        assert u.accepts(w) == (l1.accepts(w) or l2.accepts(w))
        assert i.accepts(w) == (l1.accepts(w) and l2.accepts(w))
        assert c.accepts(w) != l1.accepts(w)
        assert lq.accepts(w) == l1.accepts("ab" + w)
        assert rq.accepts(w) == l1.accepts(w + "ba")


def test_inverse_image_examples():
    ident = free_hom("ab", "ab", ["a", "b"])
    lang = contains_a()
    assert inverse_hom_image(ident, lang) == lang
    doubled = free_hom("c", "a", ["aa"])
    assert inverse_hom_image(doubled, even()) == parse_regex("c*", ("c",))
    single = free_hom("c", "a", ["a"])
    assert inverse_hom_image(single, odd()) == parse_regex("c(cc)*", ("c",))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_inverse_image_membership(seed):
    rng = random.Random(seed)
    lang = random_language(rng)
    images = ["".join(rng.choice("ab") for _ in range(rng.randint(0, 3))) for _ in "cd"]
    f = free_hom("cd", "ab", images)
    pre = inverse_hom_image(f, lang)
    for w in words_up_to(("c", "d"), 6):
        assert pre.accepts(w) == lang.accepts(f.apply(w))


# --- stamps -----------------------------------------------------------------------

def test_syntactic_examples(c2, u2):
    s, acc = syntactic_stamp(full_language(AB))
    assert s.target.order == 1
    s, acc = syntactic_stamp(even())
    assert monoid_iso_check(s.target, c2) is not None and acc == (s.target.identity,)
    s, _ = syntactic_stamp(contains_a())
    assert monoid_iso_check(s.target, u2) is not None and is_aperiodic(s.target)


def parity_of(letter):
    return parse_regex({"a": "(b*ab*a)*b*", "b": "(a*ba*b)*a*"}[letter], AB)


def test_product_examples():
    s, _ = syntactic_stamp(contains_a())
    assert stamps_isomorphic(stamp_product(s, stamp_trivial(AB)), s) is not None
    pa, _ = syntactic_stamp(parity_of("a"))
    pb, _ = syntactic_stamp(parity_of("b"))
    both = stamp_product(pa, pb)
    assert monoid_iso_check(both.target, direct_product(cyclic_group(2), cyclic_group(2))) is not None
    assert stamps_isomorphic(stamp_product(s, s), s) is not None
    with pytest.raises(AlphabetMismatch):
        stamp_product(s, stamp_trivial(A))


def test_quotient_stamp_examples():
    pa, _ = syntactic_stamp(parity_of("a"))
    pb, _ = syntactic_stamp(parity_of("b"))
    assert stamp_quotient(MonoidHom(pa.target, pa.target, (0, 1)), pa) == pa
    both = stamp_product(pa, pb)
    h = factoring_hom(both, pa)
    assert stamps_isomorphic(stamp_quotient(h, both), pa) is not None
    to_one = MonoidHom(pa.target, trivial_monoid(), (0, 0))
    assert stamp_quotient(to_one, pa) == stamp_trivial(AB)


def test_trivial_stamp():
    s = stamp_trivial(A)
    assert s.letter_images == (0,)
    assert recognized_languages(s) == [empty_language(A), full_language(A)]


def test_recognized_examples():
    s, _ = syntactic_stamp(even())
    assert set(recognized_languages(s)) == {empty_language(A), even(), odd(), full_language(A)}
    s, _ = syntactic_stamp(contains_a())
    expected = {empty_language(AB), contains_a(), complement(contains_a()), full_language(AB)}
    assert set(recognized_languages(s)) == expected


def test_recognized_cap():
    s, _ = syntactic_stamp(parse_regex("(a|b)*abb", AB))
    with pytest.raises(SizeCapExceeded):
        recognized_languages(s, cap=2)


def random_stamp(rng, max_order=5):
    while True:
        s, _ = syntactic_stamp(random_language(rng, AB, 3))
        if s.target.order <= max_order:
            return s


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_recognized_languages_closed(seed):
    rng = random.Random(seed)
    s = random_stamp(rng)
    langs = set(recognized_languages(s))
    for lang in langs:
        assert complement(lang) in langs
        for a in AB:
            assert left_quotient(a, lang) in langs and right_quotient(lang, a) in langs
    for l1, l2 in itertools.combinations(langs, 2):
        assert union(l1, l2) in langs and intersection(l1, l2) in langs


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_product_recognizes_both(seed):
    rng = random.Random(seed)
    s, t = random_stamp(rng, 3), random_stamp(rng, 3)
    both = set(recognized_languages(stamp_product(s, t)))
    assert set(recognized_languages(s)) | set(recognized_languages(t)) <= both


def test_action_stamp_examples(parity, c2):
    s = action_to_stamp(parity)
    assert monoid_iso_check(s.target, c2) is not None
    p, _ = syntactic_stamp(even())
    assert action_isomorphism(stamp_to_action(p), parity) is not None
    assert set(action_languages(parity)) == {empty_language(A), even(), odd(), full_language(A)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_action_stamp_round_trip(seed):
    rng = random.Random(seed)
    s, _ = syntactic_stamp(random_language(rng, AB, 3))
    again = action_to_stamp(stamp_to_action(s))
    iso = stamps_isomorphic(again, s)
    assert iso is not None and is_homomorphism(iso.source, iso.target, iso.map)


# --- varieties ---------------------------------------------------------------------

def test_generate_examples():
    v = local_variety_generate([full_language(A)])
    assert v.stamp.target.order == 1 and len(v.languages()) == 2
    v = local_variety_generate([even()])
    assert set(v.languages()) == set(brute_closure_oracle([even()]))
    assert len(v.languages()) == 4
    single = local_variety_generate([even(), parse_regex("a*aa*", A)])
    assert single.stamp.target.order == 3  # parity together with "non-empty"
    # b-parity times "contains a" is C2 x U2
    two = local_variety_generate([parity_of("b"), contains_a()])
    assert two.stamp.target.order == 4


def test_membership_examples():
    v = local_variety_generate([even()])
    assert variety_membership(v, full_language(A))
    assert variety_membership(v, odd())
    assert not variety_membership(local_variety_generate([full_language(A)]), even())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_membership_matches_enumeration(seed):
    rng = random.Random(seed)
    v = LocalVariety(AB, random_stamp(rng, 6))
    langs = set(v.languages())
    for _ in range(4):
        lang = random_language(rng)
        h = membership_witness(v, lang)
        assert (h is not None) == (lang in langs)
        if h is not None:
            syn, _ = syntactic_stamp(lang)
            assert h.is_surjective() and is_homomorphism(h.source, syn.target, h.map)


def test_oracle_examples():
    assert set(brute_closure_oracle([empty_language(A)])) == {empty_language(A), full_language(A)}
    assert len(brute_closure_oracle([even()])) == 4


def test_correspondence_examples(parity, point):
    rep = variety_correspondence_check([even()], [parity])
    assert rep == {"languages": True, "actions": True, "action_languages": True, "same_variety": True}
    rep = variety_correspondence_check([full_language(A)], [point])
    assert all(rep.values())
    lang = contains_a()
    assert all(variety_correspondence_check([lang], [lang.dfa]).values())


def test_fo_examples():
    assert is_fo_definable(contains_a())
    assert not is_fo_definable(even())
    assert is_fo_definable(full_language(AB))


# --- inverse images along letter maps ------------------------------------------------

def test_m4_predicate(c2):
    s, _ = syntactic_stamp(parse_regex("(cc)*", ("c",)))
    t, _ = syntactic_stamp(even())
    f = free_hom("c", "a", ["a"])
    assert m4_holds(s, t, f, MonoidHom(s.target, t.target, (0, 1)))
    f2 = free_hom("c", "a", ["aa"])
    assert not m4_holds(s, t, f2, MonoidHom(s.target, t.target, (0, 1)))


def test_r4_matches_language_enumeration():
    rng = random.Random(23)
    for _ in range(20):
        vt = LocalVariety(AB, random_stamp(rng, 4))
        vs = LocalVariety(AB, random_stamp(rng, 6))
        images = ["".join(rng.choice("ab") for _ in range(rng.randint(0, 2))) for _ in AB]
        f = free_hom(AB, AB, images)
        source = set(vs.languages())
        brute = all(inverse_hom_image(f, lang) in source for lang in vt.languages())
        assert r4_check(f, vs, vt) == brute


def test_d5_and_pullback(parity):
    f = free_hom("c", "a", ["aa"])
    pulled = pullback_action(f, parity)
    assert pulled.trans == ((0, 1),)
    trivial = LocalVariety(("c",), stamp_trivial("c"))
    assert d5_check(f, trivial, parity)
    assert not d5_check(free_hom("c", "a", ["a"]), trivial, parity)
