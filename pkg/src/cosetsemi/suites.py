"""Theorem suites run over a catalog of groups.

Every suite returns ``Report`` objects.  A suite never asserts a result on
a group outside the result's hypotheses; such groups are reported as
skipped with a reason tag, so "fail" always means a genuine contradiction.
"""
from __future__ import annotations

import os
import random
import zlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from math import lcm

import numpy as np

from . import completion as cp
from . import report as rp
from .catalog import Catalog, CatalogEntry
from .cosets import (
    FULL,
    NONTRIVIAL,
    CosetSemigroup,
    build_coset_semigroup,
    compatible,
    greens_relations,
    k1_abelian,
    maximal_elements,
    order_filter,
)
from .errors import (
    AxiomError,
    BudgetExceeded,
    CapExceeded,
    Degenerate,
    ParseError,
    SearchTimeout,
    UnknownSuite,
)
from .group import DEFAULT_ORDER_CAP, FiniteGroup, _factor, quaternion
from .isomorphism import group_isomorphic, posets_isomorphic
from .lattice import (
    members,
    SubgroupLattice,
    center,
    center_via_maximal_abelian,
    enumerate_subgroups,
    frattini,
    is_metacyclic,
    omega_subgroups,
    quotient,
    subgroup_as_group,
)
from .mingraph import (
    anchored_from_components,
    build_gamma,
    edge_symmetry_violation,
    mixed_order_violations,
    permutability,
    predicted_J,
    set_product_mask,
    sigma_order_formula,
)
from .semigroup_iso import DEFAULT_SEMIGROUP_CAP, semigroup_isomorphic

BUDGET_ENV = "COSETSEMI_BUDGET"
DEFAULT_BUDGET = 10.0
EXHAUSTIVE_CAP = 80
SAMPLED_TRIPLES = 100_000


def default_budget() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return float(raw)
    except ValueError as exc:
        raise ParseError(f"{BUDGET_ENV}={raw!r} is not a number") from exc


@dataclass
class Options:
    max_order: int = 24
    budget: float = field(default_factory=default_budget)  # seconds per semigroup isomorphism search
    tuple_budget: int = cp.DEFAULT_TUPLE_BUDGET
    semigroup_cap: int = DEFAULT_SEMIGROUP_CAP
    order_cap: int = DEFAULT_ORDER_CAP
    samples: int = SAMPLED_TRIPLES
    seed: int = 0


def _is_prime(n: int) -> bool:
    f = _factor(n)
    return len(f) == 1 and next(iter(f.values())) == 1


def composite(n: int) -> bool:
    return n > 1 and not _is_prime(n)


class Workspace:
    """Lazily built objects for one catalog entry, shared across suites."""

    def __init__(self, entry: CatalogEntry, options: Options):
        self.entry = entry
        self.name = entry.name
        self.options = options

    @cached_property
    def group(self) -> FiniteGroup:
        return self.entry.build(self.options.order_cap)

    @cached_property
    def lattice(self) -> SubgroupLattice:
        return enumerate_subgroups(self.group, self.options.order_cap)

    @cached_property
    def k(self) -> CosetSemigroup:
        return build_coset_semigroup(self.group, FULL, self.lattice, self.options.order_cap)

    @cached_property
    def k1(self) -> CosetSemigroup:
        return build_coset_semigroup(self.group, NONTRIVIAL, self.lattice, self.options.order_cap)

    @cached_property
    def perm(self):
        return permutability(self.lattice)

    @property
    def permutable(self) -> bool:
        return self.perm.by_products

    @property
    def n_minimal(self) -> int:
        return len(self.lattice.minimal)

    @property
    def hypotheses(self) -> bool:
        """Minimal subgroups permute and there are at least two of them."""
        return self.permutable and self.n_minimal >= 2

    @cached_property
    def omega(self) -> int:
        return omega_subgroups(self.lattice)[1].order

    @cached_property
    def _brute(self):
        try:
            return cp.units_bruteforce(self.k1, self.options.tuple_budget)
        except BudgetExceeded as exc:
            return exc

    @property
    def brute(self) -> cp.BruteUnits:
        if isinstance(self._brute, Exception):
            raise self._brute
        return self._brute

    @cached_property
    def _ag(self):
        try:
            return cp.build_A_G(self.k1, 0, self.options.tuple_budget)
        except BudgetExceeded as exc:
            return exc

    @property
    def ag(self) -> cp.UnitGroup:
        if isinstance(self._ag, Exception):
            raise self._ag
        return self._ag

    @cached_property
    def relabeled(self) -> FiniteGroup:
        g = self.group
        rng = random.Random(zlib.crc32(self.name.encode()) ^ self.options.seed)
        rest = list(range(1, g.order))
        rng.shuffle(rest)
        return g.relabeled([0] + rest, f"{self.name}'")

    @cached_property
    def relabeled_k1(self) -> CosetSemigroup:
        return build_coset_semigroup(self.relabeled, NONTRIVIAL, cap=self.options.order_cap)

    @cached_property
    def theorems(self) -> list[str]:
        """Reconstruction theorems whose hypotheses this group meets."""
        g = self.group
        if not composite(g.order):
            return []
        out = []
        p = g.prime_divisors[0]
        if self.hypotheses and (not g.is_p_group or self.omega > p * p):
            out.append("permutable-connected")
        if g.is_p_group and self.omega == p:
            out.append("omega-p")
        if g.is_abelian:
            out.append("abelian")
        if g.is_p_group and is_metacyclic(self.lattice):
            out.append("metacyclic-p")
        if g.is_p_group and p > 2 and self.omega == p * p:
            out.append("omega-p2-odd")
        return out


# --- helpers ----------------------------------------------------------------


def _guard(suite: str, ws: Workspace, fn):
    """Run ``fn(ws)`` turning build and budget errors into skip reports."""
    try:
        ws.group
    except (AxiomError, ParseError, CapExceeded, OSError) as exc:
        return rp.skipped(suite, [ws.name], rp.BUILD_ERROR, error=f"{type(exc).__name__}: {exc}")
    try:
        return fn(ws)
    except BudgetExceeded as exc:
        return rp.skipped(suite, [ws.name], rp.BUDGET, error=str(exc))
    except Degenerate as exc:
        return rp.skipped(suite, [ws.name], rp.DEGENERATE, error=str(exc))
    except CapExceeded as exc:
        return rp.skipped(suite, [ws.name], rp.BUDGET, error=str(exc))


def _hclass_group(s: CosetSemigroup, e: int) -> FiniteGroup:
    """The H-class of idempotent ``e`` as a group, with ``e`` relabelled 0."""
    cls = [x for x in range(s.size) if s.right_id[x] == e and s.left_id[x] == e]
    cls.remove(e)
    cls.insert(0, e)
    pos = {x: k for k, x in enumerate(cls)}
    t = [[pos[int(s.mul[x, y])] for y in cls] for x in cls]
    return FiniteGroup(t, f"H[{e}]")


def _normalizer_quotient(lat: SubgroupLattice, h: int) -> FiniteGroup:
    n = lat.normalizer(h)
    ng = subgroup_as_group(lat, n)
    el = lat[n].elements
    pos = {x: k for k, x in enumerate(el)}
    sub = enumerate_subgroups(ng, cap=None)
    mask = 0
    for x in lat[h].elements:
        mask |= 1 << pos[x]
    return quotient(sub, sub.id_of(mask))


def _assoc_violation(mul: np.ndarray, samples: int | None, seed: int):
    m = len(mul)
    if samples is None:
        lhs = mul[mul]  # (xy)z
        rhs = mul[:, mul]  # x(yz)
        bad = np.argwhere(lhs != rhs)
        return tuple(int(v) for v in bad[0]) if len(bad) else None
    rng = np.random.default_rng(seed)
    tr = rng.integers(0, m, size=(samples, 3))
    x, y, z = tr[:, 0], tr[:, 1], tr[:, 2]
    bad = np.nonzero(mul[mul[x, y], z] != mul[x, mul[y, z]])[0]
    return tuple(int(v) for v in tr[bad[0]]) if len(bad) else None


# --- suites -----------------------------------------------------------------


def suite_axioms(ws: Workspace, opts: Options) -> rp.Report:
    ev = {}
    for label, s in (("K", ws.k), ("K1", ws.k1)):
        mul, inv, m = s.mul, s.inv, s.size
        if not ((mul >= 0).all() and (mul < m).all() and (inv >= 0).all() and (inv < m).all()):
            return rp.failed("axioms", [ws.name], {"semigroup": label, "check": "closure"})
        exhaustive = m <= EXHAUSTIVE_CAP
        bad = _assoc_violation(mul, None if exhaustive else opts.samples, opts.seed)
        if bad is not None:
            return rp.failed("axioms", [ws.name], {"semigroup": label, "check": "associativity", "triple": bad})
        ar = np.arange(m)
        bad = np.nonzero((mul[mul[ar, inv], ar] != ar) | (mul[mul[inv, ar], inv] != inv))[0]
        if len(bad):
            return rp.failed("axioms", [ws.name], {"semigroup": label, "check": "inverse-law", "element": int(bad[0])})
        for x in range(m):
            xy = mul[x, ar]
            yx = mul[ar, x]
            ok = (mul[xy, x] == x) & (mul[yx, ar] == ar)
            if ok.sum() != 1 or not ok[inv[x]]:
                return rp.failed("axioms", [ws.name], {"semigroup": label, "check": "unique-inverse", "element": x})
        idem = [i for i in range(m) if mul[i, i] == i]
        if idem != sorted(s.idempotents):
            return rp.failed("axioms", [ws.name], {"semigroup": label, "check": "idempotents-are-subgroups"})
        sub = mul[np.ix_(idem, idem)]
        if not (sub == sub.T).all():
            i, j = np.argwhere(sub != sub.T)[0]
            return rp.failed("axioms", [ws.name], {"semigroup": label, "check": "idempotents-commute",
                                                    "pair": (idem[i], idem[j])})
        ev[label] = {"size": m, "associativity": "exhaustive" if exhaustive else f"sampled-{opts.samples}"}
    return rp.passed("axioms", [ws.name], **ev)


def suite_green(ws: Workspace, opts: Options) -> rp.Report:
    name = [ws.name]
    s, lat, g = ws.k, ws.lattice, ws.group
    m = s.size
    greens = greens_relations(s)
    for x, c in enumerate(s.elements):
        if s.right_id[x] != s.idempotent_of(greens.r[x]) or s.left_id[x] != s.idempotent_of(greens.l[x]):
            return rp.failed("green", name, {"check": "R/L keys", "coset": repr(c)})
    r_sizes = np.bincount(s.right_id, minlength=m)
    for h in s.subgroup_ids:
        if r_sizes[s.idempotent_of(h)] != g.order // lat.order_of(h):
            return rp.failed("green", name, {"check": "|R_H|=|G:H|", "subgroup": h})
    # D on idempotents from the table against conjugacy
    d_pairs = {(int(a), int(b)) for a, b in zip(s.right_id, s.left_id)}
    sub_of = {s.idempotent_of(h): h for h in s.subgroup_ids}
    for e in s.idempotents:
        for f in s.idempotents:
            conj = sub_of[f] in lat.conjugacy_class(sub_of[e])
            if ((e, f) in d_pairs) != conj:
                return rp.failed("green", name, {"check": "D=conjugacy", "pair": (sub_of[e], sub_of[f])})
            if greens.d[e] != greens.d[f] and conj:
                return rp.failed("green", name, {"check": "D keys", "pair": (sub_of[e], sub_of[f])})
    # principal two-sided ideals of idempotents: e <=_J f iff e in S f S
    for f in s.idempotents:
        ideal = set(np.unique(s.mul[s.mul[:, f]][:, :]).tolist())
        for e in s.idempotents:
            want = lat.is_conjugate_to_subgroup_of(sub_of[f], sub_of[e])
            if (e in ideal) != want:
                return rp.failed("green", name, {"check": "J-order", "pair": (sub_of[e], sub_of[f])})
    # central idempotents are the normal subgroups
    for e in s.idempotents:
        if bool((s.mul[e, :] == s.mul[:, e]).all()) != lat.is_normal(sub_of[e]):
            return rp.failed("green", name, {"check": "central=normal", "subgroup": sub_of[e]})
    # natural order: x = e y for an idempotent e  <=>  x contains y
    idem = np.array(s.idempotents)
    masks = s.masks
    for y in range(m):
        below = set(s.mul[idem, y].tolist())
        my = masks[y]
        for x in range(m):
            if (x in below) != (masks[x] & my == my):
                return rp.failed("green", name, {"check": "natural-order", "pair": (x, y)})
    # the same inside K1, plus the filter formula and maximal elements
    s1 = ws.k1
    idem1 = np.array(s1.idempotents)
    above = [set() for _ in range(s1.size)]
    for y in range(s1.size):
        for x in set(s1.mul[idem1, y].tolist()):
            above[x].add(y)
    for x, c in enumerate(s1.elements):
        got = {s1.index[d] for d in order_filter(s1, c)}
        if got != above[x]:
            return rp.failed("green", name, {"check": "order-filter", "coset": repr(c)})
    maxi = {s1.elements[i].subgroup_id for i in maximal_elements(s1)}
    if len(s1.elements) > 0 and maxi != set(lat.minimal):
        return rp.failed("green", name, {"check": "maximal=minimal-subgroup-cosets"})
    # H-class of each idempotent is N_G(H)/H
    for h in s.subgroup_ids:
        hc = _hclass_group(s, s.idempotent_of(h))
        nq = _normalizer_quotient(lat, h)
        if group_isomorphic(hc, nq, cap=None) is None:
            return rp.failed("green", name, {"check": "H-class=N(H)/H", "subgroup": h})
    return rp.passed("green", name, K_size=m, subgroups=len(lat), j_order="K conj. into H  =>  Ha <=_J Kb")


def _r_class_size(s: CosetSemigroup, h: int) -> int:
    return int((s.right_id == s.idempotent_of(h)).sum())


def suite_order_lcm(ws: Workspace, opts: Options) -> rp.Report:
    g, lat, s = ws.group, ws.lattice, ws.k1
    if not composite(g.order):
        return rp.skipped("order-lcm", [ws.name], rp.HYPOTHESIS_FAILED, note="order is not composite")
    sizes = [_r_class_size(s, h) for h in lat.minimal]
    primes = set()
    for n in sizes:
        primes |= set(_factor(n))
    value = lcm(*sizes)
    if len(primes) > 1:
        expected, case = value, "mixed"
    else:
        expected, case = next(iter(primes)) * value, "p-group"
    ev = dict(order=g.order, r_sizes=sizes, case=case)
    if (len(primes) > 1) == g.is_p_group:
        return rp.failed("order-lcm", [ws.name], {"check": "prime-set", "primes": sorted(primes)}, **ev)
    if expected != g.order:
        return rp.failed("order-lcm", [ws.name], {"predicted": expected}, **ev)
    return rp.passed("order-lcm", [ws.name], **ev)


def _chain_product_leq(lengths):
    elems = list(cartesian(*[range(n + 1) for n in lengths]))
    return elems, lambda i, j: all(a <= b for a, b in zip(elems[i], elems[j]))


def suite_cyclic_filter(ws: Workspace, opts: Options) -> rp.Report:
    g, lat, s = ws.group, ws.lattice, ws.k1
    if not composite(g.order):
        return rp.skipped("cyclic-filter", [ws.name], rp.HYPOTHESIS_FAILED, note="order is not composite")
    cyclic_count = 0
    for h in s.subgroup_ids:
        x = s.idempotent_of(h)
        up = sorted(s.index[c] for c in order_filter(s, s.elements[x]))
        idem = [e for e in up if s.mul[e, e] == e]
        n = len(idem)
        mul = s.mul

        def leq(i, j, idem=idem, n=n):
            if j == n:
                return True
            if i == n:
                return False
            return mul[idem[i], idem[j]] == idem[i]

        lengths = list(_factor(lat.order_of(h)).values())
        elems, cleq = _chain_product_leq(lengths)
        is_product = posets_isomorphic(n + 1, leq, len(elems), cleq)
        cyc = lat.is_cyclic(h)
        cyclic_count += cyc
        if is_product != cyc:
            return rp.failed("cyclic-filter", [ws.name], {"subgroup": list(lat[h].elements), "cyclic": cyc,
                                                           "chain_product": is_product})
    return rp.passed("cyclic-filter", [ws.name], subgroups=len(s.subgroup_ids), cyclic=cyclic_count)


def suite_permute_prime(ws: Workspace, opts: Options) -> rp.Report:
    """HK = KH against "|R_H inside (H*K)^| is prime" for distinct minimal H, K.

    The count equals |<H,K>:H|, so the sharper statement "the count equals
    |K|" is checked alongside and reported as evidence.
    """
    g, lat, s = ws.group, ws.lattice, ws.k1
    if not composite(g.order):
        return rp.skipped("permute-prime", [ws.name], rp.HYPOTHESIS_FAILED, note="order is not composite")
    pairs = permuting = 0
    literal_bad, sharp_bad = [], []
    for h in lat.minimal:
        for k in lat.minimal:
            if h == k:
                continue
            e_h, e_k = s.idempotent_of(h), s.idempotent_of(k)
            joined = int(s.mul[e_h, e_k])
            up = [s.index[c] for c in order_filter(s, s.elements[joined])]
            r_size = sum(1 for x in up if s.right_id[x] == e_h)
            permute = set_product_mask(lat, h, k) == set_product_mask(lat, k, h)
            pairs += 1
            permuting += permute
            pair = {"pair": (list(lat[h].elements), list(lat[k].elements)), "permute": permute, "r_size": r_size}
            if permute != _is_prime(r_size):
                literal_bad.append(pair)
            if permute != (r_size == lat.order_of(k)):
                sharp_bad.append(pair)
    ev = dict(ordered_pairs=pairs, permuting=permuting, literal_counterexamples=len(literal_bad),
              sharp_form_holds=not sharp_bad)
    if literal_bad or sharp_bad:
        return rp.failed("permute-prime", [ws.name], (literal_bad or sharp_bad)[0], **ev)
    return rp.passed("permute-prime", [ws.name], **ev)


def suite_compat(ws: Workspace, opts: Options) -> rp.Report:
    s = ws.k1
    mul, inv = s.mul, s.inv
    p = mul[:, inv]  # x y^-1
    q = mul[inv, :]  # x^-1 y
    by_def = (mul[p, p] == p) & (mul[q, q] == q)
    els = s.elements
    for i in range(s.size):
        for j in range(s.size):
            if compatible(s, els[i], els[j]) != bool(by_def[i, j]):
                return rp.failed("compat", [ws.name], {"pair": (repr(els[i]), repr(els[j]))})
    same_r = s.right_id[:, None] == s.right_id[None, :]
    same_l = s.left_id[:, None] == s.left_id[None, :]
    off = ~np.eye(s.size, dtype=bool)
    for label, rel in (("R", same_r), ("L", same_l)):
        bad = np.argwhere(by_def & rel & off)
        if len(bad):
            i, j = bad[0]
            return rp.failed("compat", [ws.name], {"check": f"compat-and-{label}", "pair": (repr(els[i]), repr(els[j]))})
    return rp.passed("compat", [ws.name], pairs=s.size * s.size, compatible=int(by_def.sum()))


def _units_checks(ws: Workspace) -> tuple[dict, dict | None]:
    """Dual-oracle comparison; returns (evidence, witness-or-None)."""
    ag = ws.ag
    ev: dict = {"sigma_tuples": len(ag), "anchored": len(ag.anchored)}
    bad = cp.r_side_violations(ag)
    if bad:
        return ev, {"check": "class-count", "tuple": bad[0].reps}
    if not cp.translation_closed(ag):
        return ev, {"check": "translation-closure"}
    v = cp.tau_homomorphism_violation(ag)
    if v is not None:
        return ev, {"check": "tau-homomorphism", "pair": v}
    if not cp.tau_respects_orbits(ag):
        return ev, {"check": "tau-orbits"}
    try:
        brute = ws.brute
    except BudgetExceeded:
        ev["mode"] = "tuples-only"
        return ev, None
    ev["mode"] = "dual"
    ev["sigma_bruteforce"] = len(brute)
    ev["compatible_choices"] = brute.candidates
    if brute.criterion_mismatches:
        return ev, {"check": "unit-criterion", "choice": brute.criterion_mismatches[0]}
    bij = cp.ideal_bijection(ag, brute)
    if bij is None:
        return ev, {"check": "same-ideals"}
    # bij is a homomorphism iff it respects right multiplication by generators
    s, units = ws.k1, [members(u) for u in brute.units]
    pos = {u: i for i, u in enumerate(brute.units)}
    for j in ag.generators:
        for i, k in enumerate(ag.right_products(j)):
            prod_ij = pos.get(cp.as_mask(cp.set_product(s, units[bij[i]], units[bij[j]])))
            if prod_ij != bij[k]:
                return ev, {"check": "tables", "pair": (i, j)}
    ev["isomorphic"] = True
    return ev, None


def suite_units_dual(ws: Workspace, opts: Options) -> rp.Report:
    s = ws.k1
    if s.degenerate:
        return rp.skipped("units-dual", [ws.name], rp.DEGENERATE, note="K1 has one element")
    ev, bad = _units_checks(ws)
    if bad is not None:
        return rp.failed("units-dual", [ws.name], bad, **ev)
    if ws.n_minimal < 2:
        return rp.skipped("units-dual", [ws.name], rp.DEGENERATE, note="one minimal subgroup", **ev)
    if not ws.permutable:
        return rp.skipped("units-dual", [ws.name], rp.HYPOTHESIS_FAILED, note="minimal subgroups do not permute", **ev)
    gamma = build_gamma(ws.lattice, ws.lattice.minimal[0])
    formula = sigma_order_formula(ws.lattice, gamma)
    ev.update(J=gamma.J, sigma_formula=formula)
    if formula != len(ws.ag):
        return rp.failed("units-dual", [ws.name], {"formula": formula, "sigma": len(ws.ag)}, **ev)
    return rp.passed("units-dual", [ws.name], **ev)


def suite_counting(ws: Workspace, opts: Options) -> rp.Report:
    lat, g, s = ws.lattice, ws.group, ws.k1
    if ws.n_minimal < 2:
        return rp.skipped("counting", [ws.name], rp.DEGENERATE, minimal=ws.n_minimal)
    if not ws.permutable:
        return rp.skipped("counting", [ws.name], rp.HYPOTHESIS_FAILED, note="minimal subgroups do not permute")
    pc = ws.perm
    if not pc.consistent:
        return rp.failed("counting", [ws.name], {"check": "permutability-equivalence", "tests": vars(pc)})
    predicted = predicted_J(lat)
    js, sigmas = [], []
    for pos, h in enumerate(lat.minimal):
        gamma = build_gamma(lat, h)
        v = edge_symmetry_violation(lat, h)
        if v is not None:
            return rp.failed("counting", [ws.name], {"check": "edge-symmetry", "anchor": h, "pair": v})
        if not g.is_p_group:
            mv = mixed_order_violations(lat, gamma)
            if mv:
                return rp.failed("counting", [ws.name], {"check": "mixed-order-edges", "anchor": h, "pair": mv[0]})
        ag = cp.build_A_G(s, pos, opts.tuple_budget)
        anchored = cp.anchored_tuples(s, pos, opts.tuple_budget)
        if sorted(anchored) != anchored_from_components(s, gamma):
            return rp.failed("counting", [ws.name], {"check": "anchored-tuples", "anchor": h})
        if len(anchored) != lat.order_of(h) ** gamma.J:
            return rp.failed("counting", [ws.name], {"check": "|A(H_r)|", "anchor": h, "got": len(anchored)})
        if len(ag) != len(anchored) * (g.order // lat.order_of(h)):
            return rp.failed("counting", [ws.name], {"check": "translation-count", "anchor": h})
        formula = sigma_order_formula(lat, gamma)
        if formula != len(ag):
            return rp.failed("counting", [ws.name], {"check": "sigma-formula", "anchor": h,
                                                      "formula": formula, "sigma": len(ag)})
        if predicted is not None and predicted != gamma.J:
            return rp.failed("counting", [ws.name], {"check": "predicted-J", "anchor": h,
                                                      "predicted": predicted, "J": gamma.J})
        js.append(gamma.J)
        sigmas.append(len(ag))
    ev = dict(J=sorted(set(js)), sigma=sigmas[0], predicted_J=predicted, anchors=len(js))
    try:
        brute = ws.brute
        ev["sigma_bruteforce"] = len(brute)
        if len(brute) != sigmas[0]:
            return rp.failed("counting", [ws.name], {"check": "bruteforce-count"}, **ev)
    except BudgetExceeded:
        pass
    return rp.passed("counting", [ws.name], **ev)


def suite_eta(ws: Workspace, opts: Options) -> rp.Report:
    s, g, lat = ws.k1, ws.group, ws.lattice
    fibre = cp.eta_kernel_by_fibre(s)
    meet = cp.eta_kernel_by_intersection(s)
    ev = dict(kernel=fibre)
    if fibre != meet:
        return rp.failed("eta", [ws.name], {"fibre": fibre, "intersection": meet})
    images = [cp.eta(s, a) for a in g.elements]
    for a in g.elements:
        if not cp.is_unit(s, images[a]):
            return rp.failed("eta", [ws.name], {"check": "image-is-unit", "element": a})
    gens = _generators(g)
    for a in g.elements:
        for b in gens:
            if cp.set_product(s, images[a], images[b]) != images[g.mul(a, b)]:
                return rp.failed("eta", [ws.name], {"check": "homomorphism", "pair": (a, b)})
    injective = len(fibre) == 1
    ev["injective"] = injective
    if not ws.hypotheses:
        ev["iso_claim"] = "not-applicable"
        return rp.passed("eta", [ws.name], **ev)
    ag = ws.ag
    gamma = build_gamma(lat, lat.minimal[0])
    image = {cp.eta_as_tuple(ag, a) for a in g.elements}
    if not image <= set(ag.tuples):
        return rp.failed("eta", [ws.name], {"check": "image-in-A_G"})
    iso = injective and len(image) == len(ag)
    ev.update(J=gamma.J, sigma=len(ag), isomorphism=iso, iso_claim="checked")
    if iso != (gamma.J == 1):
        return rp.failed("eta", [ws.name], {"check": "iso-iff-J=1"}, **ev)
    return rp.passed("eta", [ws.name], **ev)


def _generators(g: FiniteGroup) -> list[int]:
    from .isomorphism import generating_sequence

    return generating_sequence(g) if g.order > 1 else []


_Q8 = None


def _is_q8(g: FiniteGroup) -> bool:
    global _Q8
    if g.order != 8:
        return False
    if _Q8 is None:
        _Q8 = quaternion(8)
    return group_isomorphic(g, _Q8) is not None


def suite_abelian_char(ws: Workspace, opts: Options) -> rp.Report:
    g = ws.group
    got = k1_abelian(ws.k1)
    want = g.is_abelian or _is_q8(g)
    ev = dict(k1_abelian=got, abelian=g.is_abelian, q8=_is_q8(g))
    if got != want:
        return rp.failed("abelian-char", [ws.name], {"k1_abelian": got, "expected": want}, **ev)
    return rp.passed("abelian-char", [ws.name], **ev)


def suite_omega1(ws: Workspace, opts: Options) -> rp.Report:
    g, lat, s = ws.group, ws.lattice, ws.k1
    if s.degenerate:
        return rp.skipped("omega1", [ws.name], rp.DEGENERATE, note="K1 has one element")
    p = g.prime_divisors[0]
    if not (g.is_p_group and ws.omega == p):
        return rp.skipped("omega1", [ws.name], rp.HYPOTHESIS_FAILED, omega=ws.omega)
    if ws.n_minimal != 1:
        return rp.failed("omega1", [ws.name], {"check": "single-minimal", "minimal": ws.n_minimal})
    k = lat.minimal[0]
    e = s.idempotent_of(k)
    if not ((s.mul[e, :] == np.arange(s.size)).all() and (s.mul[:, e] == np.arange(s.size)).all()):
        return rp.failed("omega1", [ws.name], {"check": "K-is-identity"})
    units = _hclass_group(s, e)
    if group_isomorphic(units, quotient(lat, k), cap=None) is None:
        return rp.failed("omega1", [ws.name], {"check": "units=G/K"})
    return rp.passed("omega1", [ws.name], units=units.order, quotient_order=g.order // p)


def _preservation_violation(s1: CosetSemigroup, s2: CosetSemigroup, phi) -> dict | None:
    """Order and exponent of every nontrivial K against its image."""
    l1, l2 = s1.lattice, s2.lattice
    for h in s1.subgroup_ids:
        e = s1.idempotent_of(h)
        img = phi[e]
        if s2.mul[img, img] != img:
            return {"subgroup": h, "check": "idempotent-image"}
        k = int(s2.sub[img])
        if l1.order_of(h) != l2.order_of(k) or l1.exponent_of(h) != l2.exponent_of(k):
            return {"subgroup": list(l1[h].elements), "image": list(l2[k].elements)}
    return None


def _search(s1, s2, opts: Options):
    """(verdict-string, witness): 'iso', 'non-iso' or 'timeout'."""
    try:
        phi = semigroup_isomorphic(s1, s2, cap=opts.semigroup_cap, timeout=opts.budget)
    except SearchTimeout:
        return "timeout", None
    return ("iso", phi) if phi is not None else ("non-iso", None)


def suite_exp_preserve(ws: Workspace, opts: Options) -> rp.Report:
    g = ws.group
    if not composite(g.order):
        return rp.skipped("exp-preserve", [ws.name], rp.HYPOTHESIS_FAILED, note="order is not composite")
    s1, s2 = ws.k1, ws.relabeled_k1
    verdict, phi = _search(s1, s2, opts)
    if verdict == "timeout":
        return rp.inconclusive("exp-preserve", [ws.name], pair="relabeled copy")
    if phi is None:
        return rp.failed("exp-preserve", [ws.name], {"check": "no witness for a relabeled copy"})
    bad = _preservation_violation(s1, s2, phi)
    if bad is not None:
        return rp.failed("exp-preserve", [ws.name], bad)
    return rp.passed("exp-preserve", [ws.name], subgroups=len(s1.subgroup_ids))


def suite_center(ws: Workspace, opts: Options) -> rp.Report:
    lat = ws.lattice
    z = center(lat)
    m = center_via_maximal_abelian(lat)
    if z.mask != m.mask:
        return rp.failed("center", [ws.name], {"center": list(z.elements), "meet": list(m.elements)})
    return rp.passed("center", [ws.name], center_order=z.order)


PER_GROUP = {
    "axioms": suite_axioms,
    "green": suite_green,
    "order-lcm": suite_order_lcm,
    "cyclic-filter": suite_cyclic_filter,
    "permute-prime": suite_permute_prime,
    "compat": suite_compat,
    "units-dual": suite_units_dual,
    "counting": suite_counting,
    "eta": suite_eta,
    "abelian-char": suite_abelian_char,
    "omega1": suite_omega1,
    "exp-preserve": suite_exp_preserve,
    "center": suite_center,
}
SUITES = tuple(PER_GROUP) + ("reconstruction",)


# --- reconstruction ---------------------------------------------------------


def _pair_report(a: Workspace, b: Workspace, g2: FiniteGroup, s2: CosetSemigroup, opts: Options, label) -> rp.Report:
    names = label
    g1, s1 = a.group, a.k1
    theorems = sorted(set(a.theorems) & (set(b.theorems) if b is not None else set(a.theorems)))
    giso = group_isomorphic(g1, g2, cap=None) is not None
    verdict, phi = _search(s1, s2, opts)
    ev = dict(theorems=theorems, groups_isomorphic=giso, k1_sizes=(s1.size, s2.size))
    if verdict == "timeout":
        return rp.inconclusive("reconstruction", names, **ev)
    siso = phi is not None
    ev["k1_isomorphic"] = siso
    if siso != giso:
        kind = "false-merge" if siso else "false-split"
        return rp.failed("reconstruction", names, {"check": kind}, **ev)
    if siso:
        bad = _preservation_violation(s1, s2, phi)
        if bad is not None:
            return rp.failed("reconstruction", names, dict(bad, check="order/exponent"), **ev)
        l2 = s2.lattice
        if group_isomorphic(subgroup_as_group(a.lattice, center(a.lattice).lattice_id),
                            subgroup_as_group(l2, center(l2).lattice_id), cap=None) is None:
            return rp.failed("reconstruction", names, {"check": "centres"}, **ev)
        if "omega-p" in theorems:
            k1, k2 = a.lattice.minimal, l2.minimal
            if len(k2) != 1 or group_isomorphic(quotient(a.lattice, k1[0]), quotient(l2, k2[0]), cap=None) is None:
                return rp.failed("reconstruction", names, {"check": "G/K"}, **ev)
    return rp.passed("reconstruction", names, **ev)


def reconstruction_pairs(workspaces: list[Workspace], opts: Options) -> list[rp.Report]:
    usable = []
    out = []
    for ws in workspaces:
        try:
            ws.group
        except (AxiomError, ParseError, CapExceeded, OSError) as exc:
            out.append(rp.skipped("reconstruction", [ws.name], rp.BUILD_ERROR, error=f"{type(exc).__name__}: {exc}"))
            continue
        if composite(ws.group.order):
            usable.append(ws)
    for i, a in enumerate(usable):
        if a.theorems:
            out.append(_pair_report(a, None, a.relabeled, a.relabeled_k1, opts, [a.name, a.relabeled.name]))
        for b in usable[i + 1:]:
            # some theorem must cover both members
            if set(a.theorems) & set(b.theorems):
                out.append(_pair_report(a, b, b.group, b.k1, opts, [a.name, b.name]))
    return out


# --- drivers ----------------------------------------------------------------


def workspaces_for(catalog: Catalog, opts: Options) -> list[Workspace]:
    from .catalog import spec_order

    out = []
    for e in catalog:
        try:
            order = spec_order(e.spec)
        except (ParseError, OSError, ValueError):
            order = None
        if order is None or order <= opts.max_order:
            out.append(Workspace(e, opts))
    return out


def run_suite(name: str, catalog: Catalog, opts: Options | None = None, workspaces=None) -> list[rp.Report]:
    opts = opts or Options()
    if name != "all" and name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    if workspaces is None:
        workspaces = workspaces_for(catalog, opts)
    names = SUITES if name == "all" else (name,)
    out = []
    for suite in names:
        if suite == "reconstruction":
            out.extend(reconstruction_pairs(workspaces, opts))
            continue
        fn = PER_GROUP[suite]
        for ws in workspaces:
            out.append(_guard(suite, ws, lambda w: fn(w, opts)))
    return out


def describe_group(spec: str, opts: Options | None = None) -> rp.Report:
    opts = opts or Options()
    ws = Workspace(CatalogEntry(spec, spec), opts)
    g, lat = ws.group, ws.lattice
    _, omega = omega_subgroups(lat)
    ev: dict = {
        "order": g.order,
        "exponent": g.exponent,
        "abelian": g.is_abelian,
        "subgroups": len(lat),
        "center": list(center(lat).elements),
        "frattini": list(frattini(lat).elements),
        "omega": list(omega.elements),
        "minimal_subgroups": ws.n_minimal,
        "minimal_permutable": ws.permutable,
        "K1_size": ws.k1.size,
        "K1_abelian": k1_abelian(ws.k1),
    }
    if ws.n_minimal >= 2:
        ev["J_per_anchor"] = [build_gamma(lat, h).J for h in lat.minimal]
    else:
        ev["J_per_anchor"] = "degenerate"
    kernel = cp.eta_kernel_by_fibre(ws.k1) if g.order > 1 else [0]
    ev["eta_kernel"] = kernel
    try:
        sigma = len(ws.ag) if g.order > 1 else None
        ev["sigma"] = sigma
        if sigma is not None:
            ev["eta_injective"] = len(kernel) == 1
            ev["eta_surjective"] = g.order // len(kernel) == sigma
    except BudgetExceeded:
        ev["sigma"] = "budget"
    return rp.passed("describe", [ws.name], **ev)
