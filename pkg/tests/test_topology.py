import itertools

import pytest
from hypothesis import given, settings

from fuzzysoft.algebra import NotASubsetError, FuzzySoftSet, SpaceSignature, complement, intersect, subset_leq, union
from fuzzysoft.topology import FuzzySoftTopology, TopologyAxiomError, generate_from_subbasis, validate

from conftest import spaces, subsets_of


def crisp_power(sig):
    return [sig.make(bits) for bits in itertools.product([0, 1], repeat=sig.size)]


class TestValidate:
    def test_indiscrete(self):
        sig = SpaceSignature(["a", "b"], ["e"])
        assert validate([sig.phi, sig.ambient], sig).passed

    def test_discrete(self):
        sig = SpaceSignature(["a", "b"], ["e1", "e2"])
        assert validate(crisp_power(sig), sig).passed

    def test_missing_extremes(self):
        sig = SpaceSignature(["a"], ["e"])
        report = validate([], sig)
        assert report.failed_axioms() == ["i"]
        assert {v.computed for v in report.violations} == {sig.phi, sig.ambient}

    def test_missing_meet_reported_with_witnesses(self):
        sig = SpaceSignature(["a", "b"], ["e"])
        a, b = sig.make([1, "0.5"]), sig.make(["0.5", 1])
        report = validate([sig.phi, sig.ambient, a, b], sig)
        assert not report.passed
        assert report.failed_axioms() == ["ii"]
        for v in report.violations:
            x, y = (report.members[i] for i in v.witnesses)
            assert v.computed == (intersect(x, y) if v.axiom == "ii" else union(x, y))

    def test_missing_join(self):
        sig = SpaceSignature(["a", "b", "c"], ["e"])
        a, b = sig.make([1, 0, 0]), sig.make([0, 1, 0])
        report = validate([sig.phi, sig.ambient, a, b], sig)
        assert report.failed_axioms() == ["iii"]
        assert report.violations[0].witnesses == (2, 3)
        assert report.violations[0].computed == sig.make([1, 1, 0])

    def test_rejects_non_subsets_first(self):
        sig = SpaceSignature(["a"], ["e"], ["0.5"])
        with pytest.raises(NotASubsetError):
            validate([FuzzySoftSet(sig, ["0.6"])], sig)

    def test_example_is_not_a_topology(self, example_doc):
        members = list(example_doc.topology.values())
        report = validate(members, example_doc.signature)
        assert not report.passed
        meet = intersect(example_doc.topology["T4"], example_doc.topology["T5"])
        names = list(example_doc.topology)
        hit = [v for v in report.violations if v.axiom == "ii" and {names[i] for i in v.witnesses} == {"T4", "T5"}]
        assert hit and hit[0].computed == meet

    def test_construction_checks_axioms(self, example_doc):
        with pytest.raises(TopologyAxiomError) as exc:
            FuzzySoftTopology(example_doc.signature, example_doc.topology.values())
        assert not exc.value.report.passed


class TestOpenClosed:
    def test_examples(self, example_doc, example_tau):
        sig = example_doc.signature
        assert example_tau.is_open(sig.phi)
        assert example_tau.is_closed(sig.ambient)
        closed = example_tau.closed_family
        assert len(closed) == 11
        assert complement(example_doc.topology["T3"]) in closed

    def test_dedup(self):
        sig = SpaceSignature(["a"], ["e"])
        tau = FuzzySoftTopology(sig, [sig.phi, sig.ambient, sig.make([1])])
        assert len(tau) == 2


class TestInteriorClosure:
    def test_extremes(self, example_doc, example_tau):
        sig = example_doc.signature
        for g in (sig.phi, sig.ambient):
            assert example_tau.interior(g) == g
            assert example_tau.closure(g) == g

    def test_interior_of_g_E_is_phi(self, example_doc, example_tau):
        g = example_doc.lookup("g_E")
        nonzero = [h for h in example_tau.opens if h != example_doc.signature.phi]
        assert not any(subset_leq(h, g) for h in nonzero)
        assert example_tau.interior(g) == example_doc.signature.phi

    def test_closure_of_T3_is_ambient(self, example_doc, example_tau):
        t3 = example_doc.topology["T3"]
        above = [k for k in example_tau.closed_family if subset_leq(t3, k)]
        assert above == [example_doc.signature.ambient]
        assert example_tau.closure(t3) == example_doc.signature.ambient

    @settings(max_examples=150, deadline=None)
    @given(spaces())
    def test_operator_laws(self, space):
        sig, d, tau = space
        for g in tau.opens[:4] + tau.closed_family[:4]:
            i, c = tau.interior(g), tau.closure(g)
            assert subset_leq(i, g) and subset_leq(g, c)
            assert tau.is_open(i) and tau.is_closed(c)
            assert tau.interior(i) == i and tau.closure(c) == c
            assert (tau.interior(g) == g) == tau.is_open(g)
            assert (tau.closure(g) == g) == tau.is_closed(g)
            assert complement(c) == tau.interior(complement(g))

    @settings(max_examples=150, deadline=None)
    @given(spaces().flatmap(lambda s: subsets_of(s[0], s[1]).flatmap(lambda g: subsets_of(s[0], s[1]).map(lambda k: (s, g, k)))))
    def test_monotone_and_additive(self, drawn):
        (sig, d, tau), g, k = drawn
        assert complement(tau.closure(g)) == tau.interior(complement(g))
        assert tau.closure(union(g, k)) == union(tau.closure(g), tau.closure(k))
        assert tau.interior(intersect(g, k)) == intersect(tau.interior(g), tau.interior(k))
        if subset_leq(g, k):
            assert subset_leq(tau.interior(g), tau.interior(k))
            assert subset_leq(tau.closure(g), tau.closure(k))
        # largest open subset / smallest closed superset
        for h in tau.opens:
            if subset_leq(h, g):
                assert subset_leq(h, tau.interior(g))
        for c in tau.closed_family:
            if subset_leq(g, c):
                assert subset_leq(tau.closure(g), c)


class TestGenerate:
    def test_empty_family(self):
        sig = SpaceSignature(["a", "b"], ["e"], ["0.5", "1"])
        tau = generate_from_subbasis([], sig)
        assert set(tau.opens) == {sig.phi, sig.ambient}

    def test_fixpoint(self):
        sig = SpaceSignature(["a", "b"], ["e"])
        power = crisp_power(sig)
        tau = generate_from_subbasis(power, sig)
        assert set(tau.opens) == set(power)

    def test_example_closure(self, example_doc):
        members = list(example_doc.topology.values())
        tau = generate_from_subbasis(members, example_doc.signature)
        assert tau.validate().passed
        assert set(members) <= set(tau.opens)
        assert len(tau) == 46

    @settings(max_examples=100, deadline=None)
    @given(spaces())
    def test_always_valid_and_smallest(self, space):
        sig, d, tau = space
        assert tau.validate().passed
        # any valid topology containing the generated one's members contains all of it
        again = generate_from_subbasis(list(tau.opens), sig)
        assert again == tau


def test_generated_topology_is_the_meet_of_all_containing_topologies():
    sig = SpaceSignature(["a", "b", "c"], ["e"])
    power = crisp_power(sig)
    valid = [
        frozenset(fam)
        for r in range(len(power) + 1)
        for fam in itertools.combinations(power, r)
        if validate(fam, sig).passed
    ]
    for family in ([power[1]], [power[1], power[2]], [power[3], power[6]], [power[4], power[1], power[2]]):
        containing = [t for t in valid if set(family) <= t]
        assert set(generate_from_subbasis(family, sig).opens) == frozenset.intersection(*containing)
