from itertools import combinations

import pytest

from cosetsemi import completion as cp
from cosetsemi.errors import BudgetExceeded
from cosetsemi.lattice import members

from conftest import group, k, k1, lattice


def all_permissible(s):
    """Every downward-closed, pairwise compatible subset, by subset scan."""
    out = []
    for r in range(1, s.size + 1):
        for c in combinations(range(s.size), r):
            if cp.is_permissible(s, c):
                out.append(cp.as_mask(c))
    return out


def units_by_scan(s):
    e = frozenset(s.idempotents)
    out = []
    for m in all_permissible(s):
        a = members(m)
        ai = cp.set_inverse(s, a)
        if cp.set_product(s, a, ai) == e and cp.set_product(s, ai, a) == e:
            out.append(m)
    return sorted(out, key=members)


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "C6", "S3"])
def test_bruteforce_units_match_subset_scan(spec):
    s = k1(spec)
    assert cp.units_bruteforce(s).units == units_by_scan(s)


@pytest.mark.parametrize("spec,n", [("C2xC2", 8), ("C6", 6), ("C3xC3", 81), ("C2xC2xC2", 8), ("C12", 12)])
def test_unit_counts(spec, n):
    s = k1(spec)
    brute = cp.units_bruteforce(s)
    ag = cp.build_A_G(s)
    assert len(brute) == len(ag) == n
    assert not brute.criterion_mismatches


@pytest.mark.parametrize("spec", ["C2xC2", "C6", "S3", "D8", "Q8", "C3xC3", "A4"])
def test_tuple_group_is_isomorphic_to_bruteforce_units(spec):
    s = k1(spec)
    brute, ag = cp.units_bruteforce(s), cp.build_A_G(s)
    bij = cp.ideal_bijection(ag, brute)
    assert bij is not None
    bt = cp.brute_unit_table(s, brute)
    for i in range(len(ag)):
        for j in range(len(ag)):
            assert bt[bij[i], bij[j]] == bij[ag.table[i, j]]


def test_identity_and_translation_count():
    s = k1("C2xC2")
    ag = cp.build_A_G(s)
    ident = ag.tuples[0]
    assert ident.reps == (0,) * len(ag.minimal)
    assert all(ag.multiply(ident, t) == t == ag.multiply(t, ident) for t in ag.tuples)
    h = ag.minimal[ag.anchor]
    assert len(ag) == len(ag.anchored) * (group("C2xC2").order // lattice("C2xC2").order_of(h))


def test_tau_examples():
    ab = cp.build_A_G(k1("C2xC2"))
    n = len(ab.minimal)
    assert all(ab.tau(t) == tuple(range(n)) for t in ab.tuples)
    s3 = cp.build_A_G(k1("S3"))
    assert s3.tau(s3.tuples[0]) == tuple(range(len(s3.minimal)))
    assert any(ab_ != tuple(range(len(s3.minimal))) for ab_ in map(s3.tau, s3.tuples))
    assert cp.tau_homomorphism_violation(s3) is None
    assert cp.tau_respects_orbits(s3)


def test_tau_moves_s3_involution_subgroup_to_its_conjugate():
    s, lat, g = k1("S3"), lattice("S3"), group("S3")
    ag = cp.build_A_G(s)
    r = next(x for x in g.elements if g.element_order(x) == 3)
    for t in ag.tuples:
        for i, (h, a) in enumerate(zip(ag.minimal, t.reps)):
            if lat.order_of(h) == 2 and a == lat.coset_rep(h, r):
                assert ag.minimal[ag.tau(t)[i]] == lat.conj(h, r) != h


def test_r_side_and_translation_closure():
    for spec in ("C2xC2", "S3", "D8", "A4"):
        ag = cp.build_A_G(k1(spec))
        assert cp.r_side_violations(ag) == []
        assert cp.translation_closed(ag)


def test_eta_examples():
    s = k1("C2xC2")
    assert cp.eta(s, 0) == frozenset(s.idempotents)
    assert cp.eta_kernel_by_fibre(s) == [0]
    images = {cp.eta(s, a) for a in group("C2xC2").elements}
    assert len(images) == 4 < len(cp.units_bruteforce(s))
    assert cp.eta_kernel_by_fibre(k1("C4")) == [0, 2]


@pytest.mark.parametrize("spec", ["C4", "C2xC2", "S3", "D8", "Q8", "A4"])
def test_eta_kernel_and_homomorphism(spec):
    s = k1(spec)
    assert cp.eta_kernel_by_fibre(s) == cp.eta_kernel_by_intersection(s)
    assert cp.eta_homomorphism_violation(s) is None


@pytest.mark.parametrize("spec", ["C4", "C2xC2"])
def test_full_completion(spec):
    s = k1(spec)
    c = cp.full_completion(s)
    assert sorted(m for m in c.ideals if m) == sorted(all_permissible(s))
    assert c.identity == cp.as_mask(s.idempotents)
    assert sorted(c.units(), key=members) == cp.units_bruteforce(s).units
    assert cp.completion_closed(c) is None
    assert cp.iota_is_embedding(c)
    for m in c.ideals:
        assert c.inverse(m) == cp.as_mask(s.inv[x] for x in members(m))


def test_permissible_examples():
    s = k1("S3")
    assert cp.is_permissible(s, s.idempotents)
    for x in range(s.size):
        assert cp.is_permissible(s, members(cp.ideal_of(s, [x])))
    h = s.lattice.minimal[0]
    two = [i for i, c in enumerate(s.elements) if c.subgroup_id == h][:2]
    assert not cp.is_permissible(s, members(cp.ideal_of(s, two)))


def test_budget_and_degenerate():
    with pytest.raises(BudgetExceeded):
        cp.units_bruteforce(k1("D8"), budget=10)
    assert len(cp.units_bruteforce(k1("C5"))) == 1
    with pytest.raises(ValueError):
        cp.units_bruteforce(k("C4"))
