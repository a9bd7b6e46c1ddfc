import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fuzzysoft import semi
from fuzzysoft.algebra import SpaceSignature, complement, intersect, subset_leq, union, union_all
from fuzzysoft.semi import (
    ContractError,
    classify,
    equivalence_report,
    fsscl,
    fssint,
    is_semiclosed_char,
    is_semiclosed_def,
    is_semiopen_char,
    is_semiopen_def,
    operator_image_check,
    point_characterization_check,
    property_suite,
    sandwich_check,
)
from fuzzysoft.topology import generate_from_subbasis

from conftest import crisp_set, spaces, subsets_of


def with_sets(n=2):
    return spaces().flatmap(lambda s: st.tuples(st.just(s), *(subsets_of(s[0], s[1]) for _ in range(n))))


class ClassicalSpace:
    """Crisp topology on frozensets, independent of the fuzzy machinery."""

    def __init__(self, points, opens):
        self.X = frozenset(points)
        self.opens = {frozenset(o) for o in opens}
        self.closed = {self.X - o for o in self.opens}

    def int(self, a):
        return frozenset().union(*(o for o in self.opens if o <= a))

    def cl(self, a):
        return frozenset.intersection(*(c for c in self.closed if a <= c))

    def semiopen(self, a):
        return any(o <= a <= self.cl(o) for o in self.opens)

    def semiclosed(self, a):
        return any(self.int(c) <= a <= c for c in self.closed)

    def subsets(self):
        pts = sorted(self.X)
        return [frozenset(c) for r in range(len(pts) + 1) for c in itertools.combinations(pts, r)]

    def scl(self, a):
        return frozenset.intersection(*(s for s in self.subsets() if a <= s and self.semiclosed(s)))

    def sint(self, a):
        return frozenset().union(*(s for s in self.subsets() if s <= a and self.semiopen(s)))


def to_classical(sig, tau):
    def members(s):
        return frozenset(x for x, v in zip(sig.universe, s.grades) if v)

    return ClassicalSpace(sig.universe, [members(h) for h in tau.opens]), members


class TestExampleSpace:
    def test_extremes(self, example_doc, example_tau):
        sig = example_doc.signature
        assert is_semiopen_def(example_tau, sig.ambient) == (True, sig.ambient)
        assert is_semiopen_def(example_tau, sig.phi) == (True, sig.phi)
        assert is_semiclosed_def(example_tau, sig.phi) == (True, sig.phi)
        assert is_semiclosed_char(example_tau, sig.ambient)
        assert is_semiopen_char(example_tau, sig.phi)

    def test_g_E_not_semiopen_against_printed_members(self, example_doc, example_tau):
        g = example_doc.lookup("g_E")
        # the only open below g_E is phi, whose closure is phi
        below = [h for h in example_tau.opens if subset_leq(h, g)]
        assert below == [example_doc.signature.phi]
        assert is_semiopen_def(example_tau, g) == (False, None)
        assert not is_semiopen_char(example_tau, g)

    def test_opens_are_semiopen(self, example_tau):
        for h in example_tau.opens:
            assert is_semiopen_char(example_tau, h)

    def test_fsscl_fssint_extremes(self, example_doc, example_tau):
        sig = example_doc.signature
        assert fsscl(example_tau, sig.phi) == sig.phi
        assert fssint(example_tau, sig.ambient) == sig.ambient

    def test_equivalence_extremes(self, example_doc, example_tau):
        sig = example_doc.signature
        assert equivalence_report(example_tau, sig.ambient).as_tuple() == (True,) * 4
        assert equivalence_report(example_tau, sig.phi).as_tuple() == (True,) * 4

    def test_point_characterization_extremes(self, example_doc, example_tau):
        sig = example_doc.signature
        assert point_characterization_check(example_tau, sig.phi)
        assert point_characterization_check(example_tau, sig.ambient)

    def test_property_suite_on_extremes(self, example_doc):
        tau = example_doc.space()
        sig = example_doc.signature
        assert all(v.ok for v in property_suite(tau, sig.phi, sig.ambient))

    def test_operator_image_of_ambient(self, example_doc, example_tau):
        r = operator_image_check(example_tau, example_doc.signature.ambient)
        assert r.ok and r.interior_semiopen and r.fsscl_semiclosed


class TestCrisp:
    def test_witnesses_of_non_theorems(self, crisp):
        sig, tau = crisp
        ac, bc, c = crisp_set(sig, "ac"), crisp_set(sig, "bc"), crisp_set(sig, "c")
        assert is_semiopen_char(tau, ac) and is_semiopen_char(tau, bc)
        assert intersect(ac, bc) == c
        assert tau.interior(c) == sig.phi
        assert not is_semiopen_char(tau, c)
        assert not tau.is_open(ac)

    def test_items_ix_x_xii_fail(self, crisp):
        sig, tau = crisp
        a, b = crisp_set(sig, "a"), crisp_set(sig, "b")
        verdicts = {v.item: v for v in property_suite(tau, a, b)}
        # fsscl{a} = {a}, fsscl{b} = {b}, but {a, b} is not semiclosed
        assert verdicts["ix"].status == "fail"
        assert verdicts["ix"].left == sig.ambient
        assert verdicts["ix"].right == crisp_set(sig, "ab")
        ac, bc = crisp_set(sig, "ac"), crisp_set(sig, "bc")
        verdicts = {v.item: v for v in property_suite(tau, ac, bc)}
        assert verdicts["x"].status == "fail"
        assert (verdicts["x"].left, verdicts["x"].right) == (sig.phi, crisp_set(sig, "c"))
        c = crisp_set(sig, "c")
        verdicts = {v.item: v for v in property_suite(tau, a, c)}
        # fssint({a, c}) = {a, c} but fssint{a} | fssint{c} = {a}
        assert verdicts["xii"].status == "fail"
        assert all(v.ok for v in semi.property_supplement(tau, a, c))

    def test_against_classical_oracle(self):
        sig = SpaceSignature(["a", "b", "c"], ["e"])
        power = [sig.make(bits) for bits in itertools.product([0, 1], repeat=3)]
        for family in itertools.combinations(power, 2):
            tau = generate_from_subbasis(list(family), sig)
            space, members = to_classical(sig, tau)
            for g in power:
                A = members(g)
                assert members(tau.interior(g)) == space.int(A)
                assert members(tau.closure(g)) == space.cl(A)
                assert is_semiopen_def(tau, g)[0] == is_semiopen_char(tau, g) == space.semiopen(A)
                assert is_semiclosed_def(tau, g)[0] == is_semiclosed_char(tau, g) == space.semiclosed(A)
                assert members(fsscl(tau, g)) == space.scl(A)
                assert members(fssint(tau, g)) == space.sint(A)


class TestRouteAgreement:
    @settings(max_examples=200, deadline=None)
    @given(with_sets(1))
    def test_routes_agree(self, drawn):
        (sig, d, tau), g = drawn
        r = classify(tau, g)
        assert r.routes_agree
        if r.semiopen_witness is not None:
            h = r.semiopen_witness
            assert tau.is_open(h) and subset_leq(h, g) and subset_leq(g, tau.closure(h))
        if r.semiclosed_witness is not None:
            k = r.semiclosed_witness
            assert tau.is_closed(k) and subset_leq(tau.interior(k), g) and subset_leq(g, k)
        assert equivalence_report(tau, g).agree

    @settings(max_examples=100, deadline=None)
    @given(with_sets(1))
    def test_complement_swaps_classes(self, drawn):
        (sig, d, tau), g = drawn
        assert is_semiopen_char(tau, g) == is_semiclosed_def(tau, complement(g))[0]
        if is_semiopen_char(tau, g):
            assert is_semiclosed_def(tau, complement(g))[0]

    @settings(max_examples=100, deadline=None)
    @given(spaces())
    def test_interiors_of_closed_sets_are_semiclosed(self, space):
        sig, d, tau = space
        for c in tau.closed_family:
            assert is_semiclosed_def(tau, tau.interior(c))[0]
            assert tau.is_closed(c) and is_semiclosed_char(tau, c)
        for h in tau.opens:
            assert is_semiopen_def(tau, tau.closure(h))[0]


class TestSemiOperators:
    @settings(max_examples=200, deadline=None)
    @given(with_sets(2))
    def test_extremal(self, drawn):
        (sig, d, tau), g, k = drawn
        si, sc = fssint(tau, g), fsscl(tau, g)
        assert subset_leq(si, g) and subset_leq(g, sc)
        assert is_semiopen_char(tau, si) and is_semiclosed_char(tau, sc)
        assert fssint(tau, si) == si and fsscl(tau, sc) == sc
        assert (fssint(tau, g) == g) == is_semiopen_char(tau, g)
        assert (fsscl(tau, g) == g) == is_semiclosed_char(tau, g)
        # any semiopen subset of g sits below fssint(g)
        for s in (k, intersect(g, k), fssint(tau, intersect(g, k))):
            if subset_leq(s, g) and is_semiopen_char(tau, s):
                assert subset_leq(s, si)
            if subset_leq(g, s) and is_semiclosed_char(tau, s):
                assert subset_leq(sc, s)
        if subset_leq(g, k):
            assert subset_leq(si, fssint(tau, k)) and subset_leq(sc, fsscl(tau, k))

    @settings(max_examples=100, deadline=None)
    @given(with_sets(3))
    def test_union_and_intersection_stability(self, drawn):
        (sig, d, tau), *sets = drawn
        assert semi.union_stability(tau, [fssint(tau, s) for s in sets])
        assert semi.intersection_stability(tau, [fsscl(tau, s) for s in sets])

    def test_stability_preconditions(self, crisp):
        sig, tau = crisp
        with pytest.raises(ContractError):
            semi.union_stability(tau, [crisp_set(sig, "c")])
        with pytest.raises(ContractError):
            semi.union_stability(tau, [])


class TestSandwich:
    def test_degenerate_and_upper(self, crisp):
        sig, tau = crisp
        g = crisp_set(sig, "a")
        assert sandwich_check(tau, g, g)
        assert sandwich_check(tau, g, tau.closure(g))

    def test_preconditions(self, crisp):
        sig, tau = crisp
        with pytest.raises(ContractError, match="not semiopen"):
            sandwich_check(tau, crisp_set(sig, "c"), sig.ambient)
        with pytest.raises(ContractError, match="k <= cl"):
            sandwich_check(tau, crisp_set(sig, "a"), crisp_set(sig, "ab"))
        with pytest.raises(ContractError, match="g <= k"):
            sandwich_check(tau, crisp_set(sig, "a"), crisp_set(sig, "b"))
        with pytest.raises(ContractError, match="int"):
            sandwich_check(tau, sig.ambient, crisp_set(sig, "c"), kind="semiclosed")

    @settings(max_examples=150, deadline=None)
    @given(with_sets(2))
    def test_fuzzed(self, drawn):
        (sig, d, tau), g, k = drawn
        low = fssint(tau, g)
        mid = intersect(union(low, k), tau.closure(low))
        assert sandwich_check(tau, low, mid)
        high = fsscl(tau, g)
        mid = union(intersect(high, k), tau.interior(high))
        assert sandwich_check(tau, high, mid, kind="semiclosed")


class TestPointCharacterization:
    @settings(max_examples=150, deadline=None)
    @given(with_sets(1))
    def test_fuzzed(self, drawn):
        (sig, d, tau), g = drawn
        assert point_characterization_check(tau, g)
        assert point_characterization_check(tau, fssint(tau, g))


class TestPropertySuite:
    @settings(max_examples=150, deadline=None)
    @given(with_sets(2))
    def test_items_that_hold(self, drawn):
        (sig, d, tau), g, k = drawn
        for pair in ((g, k), (g, union(g, k))):
            verdicts = {v.item: v for v in property_suite(tau, *pair)}
            assert len(verdicts) == 14
            for item in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "xi", "xiii", "xiv"):
                assert verdicts[item].ok, item
            assert all(v.ok for v in semi.property_supplement(tau, *pair))

    def test_monotonicity_vacuous_without_inclusion(self, crisp):
        sig, tau = crisp
        verdicts = {v.item: v for v in property_suite(tau, crisp_set(sig, "a"), crisp_set(sig, "b"))}
        assert verdicts["v"].status == verdicts["vi"].status == "vacuous"


class TestOperatorImage:
    @settings(max_examples=100, deadline=None)
    @given(with_sets(1))
    def test_fuzzed(self, drawn):
        (sig, d, tau), g = drawn
        for s in (g, fssint(tau, g), fsscl(tau, g)):
            assert operator_image_check(tau, s).ok


def test_point_union_equals_set(crisp):
    sig, tau = crisp
    from fuzzysoft.algebra import decompose_points

    g = crisp_set(sig, "ac")
    assert union_all([p.as_set(sig) for p in decompose_points(g)]) == g
