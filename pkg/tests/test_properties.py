"""Property-based checks over random catalog groups, elements and relabellings."""
from functools import lru_cache

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cosetsemi import completion as cp
from cosetsemi.cosets import NONTRIVIAL, build_coset_semigroup, compatible, compatible_by_definition, natural_leq
from cosetsemi.lattice import members
from cosetsemi.semigroup_iso import is_semigroup_isomorphism, semigroup_isomorphic

from conftest import catalog, k1

NAMES = [e.name for e in catalog(16) if e.build().order > 3]
WITH_UNITS = [n for n in NAMES if cp.tuple_budget(k1(n)) <= 10**5]

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@st.composite
def semigroup_and_elements(draw, count, names=NAMES):
    s = k1(draw(st.sampled_from(names)))
    return s, [draw(st.integers(0, s.size - 1)) for _ in range(count)]


@given(semigroup_and_elements(3))
def test_associative(data):
    s, (x, y, z) = data
    assert s.mul[s.mul[x, y], z] == s.mul[x, s.mul[y, z]]


@given(semigroup_and_elements(2))
def test_inverse_laws(data):
    s, (x, y) = data
    xi = s.inv[x]
    assert s.mul[s.mul[x, xi], x] == x and s.mul[s.mul[xi, x], xi] == xi
    assert s.inv[xi] == x
    assert s.inv[s.mul[x, y]] == s.mul[s.inv[y], xi]


@given(semigroup_and_elements(2))
def test_idempotents_commute(data):
    s, (x, y) = data
    e, f = s.right_id[x], s.left_id[y]
    assert s.mul[e, f] == s.mul[f, e]


@given(semigroup_and_elements(2))
def test_natural_order_is_reverse_inclusion(data):
    s, (x, y) = data
    by_order = s.mul[s.right_id[x], y] == x
    assert by_order == natural_leq(s, s.elements[x], s.elements[y])


@given(semigroup_and_elements(2))
def test_compatibility_formula(data):
    s, (x, y) = data
    assert compatible(s, s.elements[x], s.elements[y]) == compatible_by_definition(s, x, y)


@lru_cache(maxsize=None)
def unit_group(name):
    return cp.build_A_G(k1(name))


@given(st.sampled_from(WITH_UNITS), st.data())
def test_tuple_product_is_a_group(name, data):
    ag = unit_group(name)
    n = len(ag)
    a, b, c = (ag.tuples[data.draw(st.integers(0, n - 1))] for _ in range(3))
    m = ag.multiply
    assert m(m(a, b), c) == m(a, m(b, c))
    assert any(m(a, t) == ag.tuples[0] for t in ag.tuples)
    tau_ab = ag.tau(m(a, b))
    assert tau_ab == tuple(ag.tau(b)[i] for i in ag.tau(a))


@given(st.sampled_from(WITH_UNITS), st.data())
def test_unit_ideal_is_permissible_and_meets_classes_once(name, data):
    ag = unit_group(name)
    t = ag.tuples[data.draw(st.integers(0, len(ag) - 1))]
    s = ag.semigroup
    elems = members(ag.ideal(t))
    assert cp.is_permissible(s, elems)
    assert cp.meets_classes_once(s, elems)
    assert cp.is_unit(s, elems)


@given(st.sampled_from(NAMES), st.data())
def test_eta_is_a_homomorphism(name, data):
    s = k1(name)
    g = s.group
    a = data.draw(st.integers(0, g.order - 1))
    b = data.draw(st.integers(0, g.order - 1))
    assert cp.set_product(s, cp.eta(s, a), cp.eta(s, b)) == cp.eta(s, g.mul(a, b))


@given(st.sampled_from([n for n in NAMES if k1(n).size <= 200]), st.permutations(range(1, 16)))
def test_relabelling_gives_isomorphic_k1(name, shuffled):
    s = k1(name)
    g = s.group
    rest = [x for x in shuffled if x < g.order] + list(range(16, g.order))
    h = g.relabeled([0] + rest)
    t = build_coset_semigroup(h, NONTRIVIAL)
    assert t.size == s.size and len(t.idempotents) == len(s.idempotents)
    phi = semigroup_isomorphic(s, t)
    assert phi is not None and is_semigroup_isomorphism(s, t, phi)
