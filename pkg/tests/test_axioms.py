import random

import pytest

from semigalois.actions import Morphism, Signature, identity_morphism, to_terminal, validate_action
from semigalois.axioms import (
    categorical_epi,
    categorical_mono,
    check_semi_galois_axioms,
    has_inverse,
    random_action,
    random_dfa,
    random_morphism_from,
    random_morphism_into,
    random_mset,
)
from semigalois.monoid import cyclic_group


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_axioms_hold_for_other_seeds(seed):
    rep = check_semi_galois_axioms(seed=seed, n_diagrams=60)
    assert rep.passed, rep.failures[:3]
    assert rep.diagrams == 60 and rep.checks > 60 * 10


def test_axioms_small_states():
    rep = check_semi_galois_axioms(seed=9, n_diagrams=80, max_states=2, max_monoid_order=2)
    assert rep.passed, rep.failures[:3]


def test_samplers_respect_bounds():
    rng = random.Random(0)
    free = Signature.free("ab")
    explicit = Signature.explicit(cyclic_group(3))
    for _ in range(50):
        assert 2 <= random_dfa(rng, free, 4, min_states=2).n <= 4
        assert 1 <= random_mset(rng, explicit, 3).n <= 3
        x = random_action(rng, explicit, 4)
        validate_action(x.signature, x.trans, x.full)
        f = random_morphism_into(rng, x, 4)
        g = random_morphism_from(rng, x, 4)
        assert f.cod == x and g.dom == x


def test_independent_predicates(parity):
    point_map = to_terminal(parity)
    assert categorical_epi(point_map) and not categorical_mono(point_map)
    assert not has_inverse(point_map)
    swap = Morphism(parity, parity, (1, 0))
    assert categorical_epi(swap) and categorical_mono(swap) and has_inverse(swap)
    assert has_inverse(identity_morphism(parity))
