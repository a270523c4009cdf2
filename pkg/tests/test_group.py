from collections import defaultdict
from itertools import combinations

import pytest

from cosetsemi.catalog import GROUP_COUNTS
from cosetsemi.errors import AxiomError, CapExceeded, ParseError
from cosetsemi.group import (
    FiniteGroup,
    build_group,
    cyclic,
    read_cayley_file,
    write_cayley_file,
)
from cosetsemi.isomorphism import group_isomorphic, is_isomorphism

from conftest import catalog, group


def brute_order(g, x):
    y, n = x, 1
    while y != 0:
        y, n = g.mul(y, x), n + 1
    return n


def test_spec_examples():
    c6 = group("C6")
    assert c6.order == 6 and c6.is_abelian
    q8 = group("Q8")
    assert q8.order == 8
    assert sum(1 for x in q8.elements if brute_order(q8, x) == 2) == 1
    assert group("C2xC2").exponent == 2
    assert group("C4xC2").exponent == 4
    assert q8.exponent == 4


def test_element_order_matches_repeated_multiplication(small_spec):
    g = group(small_spec)
    assert g.element_order(0) == 1
    for x in g.elements:
        assert g.element_order(x) == brute_order(g, x)


def test_cyclic_generator_order():
    assert cyclic(6).element_order(1) == 6


def test_quaternion_minus_one():
    q8 = group("Q8")
    (minus_one,) = [x for x in q8.elements if brute_order(q8, x) == 2]
    assert q8.element_order(minus_one) == 2


def test_axioms_hold_exhaustively_for_catalog():
    for e in catalog():
        g = e.build()
        n = g.order
        for a in range(n):
            for b in range(n):
                ab = g.mul(a, b)
                for c in range(n):
                    assert g.mul(ab, c) == g.mul(a, g.mul(b, c))
            assert g.mul(a, g.inv(a)) == 0 == g.mul(g.inv(a), a)
            assert g.mul(a, 0) == a == g.mul(0, a)


def test_catalog_covers_every_isomorphism_class():
    by_order = defaultdict(list)
    for e in catalog():
        by_order[e.build().order].append(e.build())
    for n in range(2, 25):
        gs = by_order[n]
        assert len(gs) == GROUP_COUNTS[n - 1], n
        for a, b in combinations(gs, 2):
            assert group_isomorphic(a, b) is None, (a.name, b.name)


def test_non_associative_table_raises_with_witness():
    t = [[0, 1, 2], [1, 0, 2], [2, 2, 0]]
    with pytest.raises(AxiomError) as info:
        FiniteGroup(t)
    assert info.value.witness is not None


def test_missing_inverse_raises():
    t = [[0, 1, 2], [1, 1, 1], [2, 1, 0]]
    with pytest.raises(AxiomError):
        FiniteGroup(t)


def test_parse_errors():
    with pytest.raises(ParseError):
        build_group("X7")
    with pytest.raises(ParseError):
        build_group("C4x")


def test_cap():
    with pytest.raises(CapExceeded):
        build_group("C50")
    assert build_group("C50", cap=None).order == 50


def test_cayley_round_trip(tmp_path):
    g = group("D8")
    path = tmp_path / "d8.txt"
    write_cayley_file(g, path)
    h = read_cayley_file(path)
    assert h.rows == g.rows


def test_corrupted_cayley_file(tmp_path):
    g = group("S3")
    rows = [list(r) for r in g.rows]
    rows[1][2], rows[1][3] = rows[1][3], rows[1][2]
    path = tmp_path / "bad.txt"
    path.write_text(f"{g.order}\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    with pytest.raises((AxiomError, ParseError)):
        read_cayley_file(path)


def test_isomorphism_examples():
    phi = group_isomorphic(group("C6"), group("C2xC3"))
    assert phi is not None and is_isomorphism(group("C6"), group("C2xC3"), phi)
    assert group_isomorphic(group("Q8"), group("D8")) is None
    g = group("A4")
    assert group_isomorphic(g, g) is not None


def test_relabeled_copy_is_isomorphic():
    g = group("Q8")
    perm = [0, 5, 3, 7, 1, 2, 6, 4]
    h = g.relabeled(perm)
    assert all(h.mul(perm[a], perm[b]) == perm[g.mul(a, b)] for a in g.elements for b in g.elements)
    assert group_isomorphic(g, h) is not None
