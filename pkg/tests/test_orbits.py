import pytest

from houghton import (
    HoughtonElement,
    Word,
    apply,
    compose,
    cycle_decomposition,
    cycle_type,
    ends_partition,
    evaluate,
    generator,
    identity,
    infinite_orbit_count,
    inverse,
    sym_conjugate,
)
from houghton.oracle import random_element, random_word


def element(n, text):
    return evaluate(Word.parse(n, text))


def test_identity_has_no_orbits():
    d = cycle_decomposition(identity(3))
    assert d.finite_cycles == ()
    assert d.infinite_orbits == ()


def test_transposition_single_cycle():
    g = HoughtonElement(2, (0, 0), {(1, 0): (2, 0), (2, 0): (1, 0)})
    d = cycle_decomposition(g)
    assert d.finite_cycles == (((1, 0), (2, 0)),)
    assert d.infinite_orbits == ()


def test_g2_single_infinite_orbit():
    d = cycle_decomposition(generator(3, "g2"))
    assert d.finite_cycles == ()
    assert len(d.infinite_orbits) == 1
    o = d.infinite_orbits[0]
    assert (o.pos_ray, o.pos_residue) == (1, 0)
    assert (o.neg_ray, o.neg_residue) == (2, 0)
    assert o.spine == ((2, 0), (1, 0))
    assert o.pos_cutoff == 1
    assert o.neg_cutoff == 1


def test_orbit_count_matches_translation_mass():
    for n in (2, 3, 4):
        for seed in range(40):
            g = evaluate(random_word(n, seed, 10))
            d = cycle_decomposition(g)
            assert len(d.infinite_orbits) == infinite_orbit_count(g)
            assert infinite_orbit_count(g) == sum(abs(v) for v in g.t) // 2


def test_successor_reproduces_action():
    for seed in range(25):
        g = evaluate(random_word(3, seed, 8))
        d = cycle_decomposition(g)
        top = g.max_exception_offset() + 6
        for i in range(1, 4):
            for m in range(top + 1):
                assert d.successor((i, m)) == apply(g, (i, m))


def test_finite_cycles_are_disjoint_and_minimal_rotated():
    for seed in range(30):
        g = random_element(3, seed, profile="fsym")
        d = cycle_decomposition(g)
        seen = set()
        for cycle in d.finite_cycles:
            assert len(cycle) >= 2
            assert cycle[0] == min(cycle)
            for p in cycle:
                assert p not in seen
                seen.add(p)
        # every exceptional point of a zero-translation element is in a cycle
        assert seen == set(g.exceptions)


def test_infinite_tails_are_stable():
    # beyond the cutoffs the element acts by pure translation on the class
    for seed in range(20):
        g = evaluate(random_word(3, seed, 9))
        for o in cycle_decomposition(g).infinite_orbits:
            up = g.t[o.pos_ray - 1]
            down = g.t[o.neg_ray - 1]
            for k in range(6):
                m = o.pos_cutoff + k * up
                assert apply(g, (o.pos_ray, m)) == (o.pos_ray, m + up)
                m = o.neg_cutoff + (k + 1) * -down
                assert apply(g, (o.neg_ray, m)) == (o.neg_ray, m + down)


def test_cycle_type_examples():
    two = HoughtonElement(2, (0, 0), {(1, 0): (1, 1), (1, 1): (1, 0)})
    three = HoughtonElement(
        2, (0, 0), {(1, 0): (1, 1), (1, 1): (1, 2), (1, 2): (1, 0)}
    )
    assert cycle_type(two) == ((2,), 0)
    assert cycle_type(three) == ((3,), 0)
    assert cycle_type(generator(3, "g2")) == ((), 1)


def test_cycle_type_is_conjugation_invariant():
    for seed in range(20):
        g = evaluate(random_word(3, seed, 6))
        x = evaluate(random_word(3, seed + 100, 5))
        conj = compose(compose(inverse(x), g), x)
        assert cycle_type(conj) == cycle_type(g)


def test_sym_conjugate_is_cycle_type_equality():
    a = HoughtonElement(2, (0, 0), {(1, 0): (2, 0), (2, 0): (1, 0)})
    b = HoughtonElement(2, (0, 0), {(1, 3): (1, 4), (1, 4): (1, 3)})
    c = HoughtonElement(
        2, (0, 0), {(1, 0): (1, 1), (1, 1): (1, 2), (1, 2): (1, 0)}
    )
    assert sym_conjugate(a, b)
    assert not sym_conjugate(a, c)


def test_ends_partition_single_class():
    parts = ends_partition(element(3, "g2 g3"))
    assert parts.classes == (frozenset({1, 2, 3}),)
    assert parts.class_of(2) == frozenset({1, 2, 3})


def test_ends_partition_skips_fixed_rays():
    parts = ends_partition(generator(4, "g2"))
    assert parts.classes == (frozenset({1, 2}),)
    with pytest.raises(KeyError):
        parts.class_of(3)


def test_ends_partition_identity_empty():
    assert ends_partition(identity(3)).classes == ()


def test_ends_classes_cover_moving_rays():
    for seed in range(30):
        g = evaluate(random_word(4, seed, 10))
        parts = ends_partition(g)
        covered = set().union(*parts.classes) if parts.classes else set()
        assert covered == {i for i in range(1, 5) if g.t[i - 1] != 0}
