import numpy as np
import pytest

from cosetsemi.cosets import (
    Coset,
    compatible,
    compatible_by_definition,
    greens_relations,
    inverse,
    k1_abelian,
    maximal_elements,
    natural_leq,
    natural_leq_algebraic,
    order_filter,
    order_filter_by_order,
    product,
)
from cosetsemi.lattice import generated_subgroup, mask_of

from conftest import group, k, k1, lattice


def coset_set(s, x):
    return frozenset(s.lattice.group.mul(h, x.rep) for h in s.lattice[x.subgroup_id].elements)


def smallest_coset_containing(s, xs):
    best = None
    for c in s.elements:
        cs = coset_set(s, c)
        if xs <= cs and (best is None or len(cs) < len(coset_set(s, best))):
            best = c
    return best


def test_sizes_are_index_sums():
    assert k1("C2xC2").size == 7
    assert k1("C5").size == 1 and k1("C5").degenerate
    assert k1("C6").size == 6
    assert k1("C4").size == 3
    for spec in ("S3", "D8", "A4"):
        lat, g = lattice(spec), group(spec)
        assert k(spec).size == sum(g.order // s.order for s in lat.all)


def test_product_is_smallest_coset_containing_set_product(small_spec):
    s = k(small_spec)
    g = s.group
    sets = [coset_set(s, c) for c in s.elements]
    for i, x in enumerate(s.elements):
        for j, y in enumerate(s.elements):
            setwise = frozenset(g.mul(a, b) for a in sets[i] for b in sets[j])
            assert s.elements[s.mul[i, j]] == smallest_coset_containing(s, setwise)


def test_inverse_is_setwise_inverse(small_spec):
    s = k(small_spec)
    g = s.group
    for x in s.elements:
        inv = frozenset(g.inv(a) for a in coset_set(s, x))
        assert coset_set(s, inverse(s, x)) == inv


def test_s3_product_and_inverse_examples():
    s, g, lat = k1("S3"), group("S3"), lattice("S3")
    invols = [x for x in g.elements if g.element_order(x) == 2]
    r = next(x for x in g.elements if g.element_order(x) == 3)
    h = generated_subgroup(lat, [invols[0]]).lattice_id
    kk = generated_subgroup(lat, [invols[1]]).lattice_id
    x = Coset(h, lat.coset_rep(h, r))
    assert product(s, x, Coset(kk, 0)) == Coset(lat.whole, 0)
    xi = inverse(s, x)
    assert xi.subgroup_id == lat.conj(h, r) != h
    assert lat.coset_rep(xi.subgroup_id, g.inv(r)) == xi.rep


def test_idempotents_and_c4_example():
    s, lat = k1("C4"), lattice("C4")
    h = lat.id_of(mask_of([0, 2]))
    for e in s.idempotents:
        assert s.mul[e, e] == e and s.inv[e] == e
    assert product(s, Coset(h, 1), Coset(h, 1)) == Coset(h, 0)
    assert inverse(s, Coset(h, 1)) == Coset(h, 1)


def test_abelian_inverse_is_inverse_rep():
    s, g = k1("C6"), group("C6")
    for x in s.elements:
        assert inverse(s, x) == Coset(x.subgroup_id, s.lattice.coset_rep(x.subgroup_id, g.inv(x.rep)))


def test_green_examples():
    s, g, lat = k("S3"), group("S3"), lattice("S3")
    gr = greens_relations(s)
    r_sizes = np.bincount(gr.r)
    for sub in lat.all:
        assert r_sizes[sub.lattice_id] == g.order // sub.order
    order2 = [sub.lattice_id for sub in lat.all if sub.order == 2]
    assert len({gr.d[s.idempotent_of(h)] for h in order2}) == 1
    ab = k1("C2xC2")
    gr = greens_relations(ab)
    assert gr.r == gr.l


def test_green_classes_match_table(small_spec):
    s = k(small_spec)
    gr = greens_relations(s)
    # R-related iff x x^-1 equal, L-related iff x^-1 x equal
    for x in range(s.size):
        for y in range(s.size):
            assert (gr.r[x] == gr.r[y]) == (s.right_id[x] == s.right_id[y])
            assert (gr.l[x] == gr.l[y]) == (s.left_id[x] == s.left_id[y])


def test_natural_order_examples():
    s, lat = k("C4"), lattice("C4")
    top = Coset(lat.whole, 0)
    for x in s.elements:
        assert natural_leq(s, top, x)
    h = lat.id_of(mask_of([0, 2]))
    H, H1 = Coset(h, 0), Coset(h, 1)
    assert natural_leq(s, top, H) and natural_leq(s, H, H)
    assert not natural_leq(s, H, H1)


def test_natural_order_algebraic_equals_inclusion(small_spec):
    s = k(small_spec)
    for i, x in enumerate(s.elements):
        for j, y in enumerate(s.elements):
            assert natural_leq_algebraic(s, i, j) == natural_leq(s, x, y)


def test_maximal_elements_are_cosets_of_minimal_subgroups(small_spec):
    s = k1(small_spec)
    assert {s.elements[i].subgroup_id for i in maximal_elements(s)} == set(s.lattice.minimal)


def test_order_filter_examples(small_spec):
    s = k1(small_spec)
    for i in maximal_elements(s):
        assert order_filter(s, s.elements[i]) == {s.elements[i]}
    assert order_filter(s, Coset(s.lattice.whole, 0)) == frozenset(s.elements)
    for x in s.elements:
        assert order_filter(s, x) == order_filter_by_order(s, x)


def test_order_filter_c6_example():
    s, lat = k1("C6"), lattice("C6")
    c3 = lat.id_of(mask_of([0, 2, 4]))
    assert order_filter(s, Coset(c3, 1)) == {Coset(c3, 1)}


def test_compatible_examples():
    s, lat = k1("C2xC2"), lattice("C2xC2")
    h, kk = lat.minimal[0], lat.minimal[1]
    a = next(x for x in lat[h].elements if x)
    b = next(x for x in lat[kk].elements if x)
    assert compatible(s, Coset(h, lat.coset_rep(h, b)), Coset(kk, 0))
    assert compatible(s, Coset(h, a), Coset(kk, 0))
    for x in s.elements:
        assert compatible(s, x, x)


def test_compatible_formula_equals_definition(small_spec):
    s = k1(small_spec)
    for i, x in enumerate(s.elements):
        for j, y in enumerate(s.elements):
            assert compatible(s, x, y) == compatible_by_definition(s, i, j)


def test_k1_abelian_examples():
    assert k1_abelian(k1("C6"))
    assert k1_abelian(k1("Q8"))
    assert not k1_abelian(k1("S3"))


def test_trivial_group_has_no_k1():
    from cosetsemi.cosets import build_coset_semigroup

    with pytest.raises(ValueError):
        build_coset_semigroup(group("C1"))
