from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from semigroup_absolute.absolute import (
    CentralityEquation,
    Options,
    character_from,
    centrality_equations,
    compare_quotient,
    describe_absolute,
    is_precentral,
    scale_character,
    strata,
    stratum_point,
    violated_equations,
)
from semigroup_absolute.latgeo import DistributionPoint, IntegerLattice, lambda_membership
from semigroup_absolute.presentation import RelationPair
from semigroup_absolute.wordcalc import central_pairs_exact, complete

from conftest import pres

F = Fraction
GOLDEN = ["free2", "free3", "z_pm", "z2", "z3", "z_0_6_m1", "tripod", "two_points", "z5", "z_x_z2", "z_c0"]


def grid(n, den):
    for raw in product(range(den + 1), repeat=n - 1):
        if sum(raw) <= den:
            yield DistributionPoint.exact([F(x, den) for x in raw] + [F(den - sum(raw), den)])


def eqs_of(p):
    return centrality_equations(central_pairs_exact(p))


def test_equation_reduction_and_format(load):
    p = load("tripod")
    (e,) = eqs_of(p)
    assert e.reduced_pair == RelationPair((0, 1, 0), (0, 0, 1))
    assert e.format(p.symbols) == "mu(a)*mu(b) = mu(a)*mu(c)"
    (e,) = eqs_of(load("z_0_6_m1"))
    assert e.format(("z", "p", "m")) == "mu(z)^7 = mu(p)*mu(m)^6"


def test_precentral_examples(load):
    eqs = eqs_of(load("z2"))
    assert is_precentral(eqs, DistributionPoint.uniform(4))
    assert is_precentral(eqs, DistributionPoint.exact([F(1, 2), 0, F(1, 2), 0]))
    bad = DistributionPoint.exact([F(1, 2), F(1, 4), F(1, 8), F(1, 8)])
    assert not is_precentral(eqs, bad)
    assert violated_equations(eqs, bad) == eqs
    assert is_precentral([], bad)


def test_float_equation_tolerance():
    e = CentralityEquation(RelationPair((1, 1), (2, 0)), RelationPair((0, 1), (1, 0)))
    assert e.holds(DistributionPoint.from_floats([0.5, 0.5]))
    assert not e.holds(DistributionPoint.from_floats([0.4, 0.6]))


def test_tripod_strata(load):
    parts = strata(eqs_of(load("tripod")), 3)
    by_support = {tuple(sorted(s.support)): s for s in parts}
    assert set(by_support) == {(0, 1, 2), (1, 2), (0,), (1,), (2,)}
    assert by_support[(0, 1, 2)].dimension == 1 and by_support[(0, 1, 2)].is_main
    assert by_support[(1, 2)].dimension == 1
    assert by_support[(0, 1, 2)].lattice.basis == ((0, 1, -1),)
    assert by_support[(1, 2)].sample.weights == (0, F(1, 2), F(1, 2))


def test_two_points_strata(load):
    parts = strata(eqs_of(load("two_points")), 3)
    assert [(sorted(s.support), s.dimension) for s in parts] == [([0, 1, 2], 0), ([0], 0)]
    assert [s.sample.weights for s in parts] == [(F(1, 3),) * 3, (1, 0, 0)]


def test_z2_strata(load):
    parts = strata(eqs_of(load("z2")), 4)
    dims = sorted(s.dimension for s in parts)
    assert dims == [0, 0, 0, 0, 1, 1, 1, 1, 2]


def test_strata_cap():
    with pytest.raises(Exception):
        strata([], 25)


@pytest.mark.parametrize("name", GOLDEN)
def test_grid_points_belong_to_their_stratum(load, name):
    p = load(name)
    eqs = eqs_of(p)
    parts = {s.support: s for s in strata(eqs, p.size)}
    den = 6 if p.size <= 4 else 3
    for mu in grid(p.size, den):
        st_ = parts.get(mu.support)
        expected = st_ is not None and lambda_membership(st_.lattice.basis, mu)
        assert is_precentral(eqs, mu) == expected


@pytest.mark.parametrize("name", GOLDEN)
def test_stratum_samples_are_precentral(load, name):
    p = load(name)
    eqs = eqs_of(p)
    for s in strata(eqs, p.size):
        assert is_precentral(eqs, s.sample)
        t = [F(k + 2, k + 1) for k in range(s.dimension)]
        mu = stratum_point(s, t)
        assert mu.support == s.support
        assert is_precentral(eqs, mu)


@pytest.mark.parametrize("name", GOLDEN)
def test_excluded_faces_have_no_precentral_points(load, name):
    p = load(name)
    eqs = eqs_of(p)
    present = {s.support for s in strata(eqs, p.size)}
    for mask in range(1, 1 << p.size):
        T = frozenset(i for i in range(p.size) if mask >> i & 1)
        if T in present:
            continue
        for t in [F(1), F(2), F(3, 2)]:
            raw = [t ** i if i in T else 0 for i in range(p.size)]
            for mu in (DistributionPoint.uniform(p.size, sorted(T)),
                       DistributionPoint.exact([x / sum(raw) for x in raw])):
                assert not is_precentral(eqs, mu)


@pytest.mark.parametrize("name", ["free2", "free3", "z_pm", "z2", "z3", "z_0_6_m1", "z5", "z_x_z2", "z_c0"])
def test_cancellative_strata_are_polytope_faces(load, name):
    d = describe_absolute(load(name))
    assert {s.support for s in d.strata} == d.polytope.face_supports()
    for s in d.strata:
        y = d.polytope.project(s.sample.weights)
        assert d.polytope.contains(y)
        assert d.polytope.on_boundary(y) == (not s.is_main)


@pytest.mark.parametrize("name", GOLDEN)
def test_dimension_consistency(load, name):
    d = describe_absolute(load(name))
    assert d.main_stratum.dimension == d.dimension
    assert d.chart.dimension == d.dimension == d.polytope.dimension
    assert d.main_stratum.lattice.rank == d.central_lattice.rank
    assert IntegerLattice.from_generators(d.central_pairs.differences(), len(d.generators)) == d.central_lattice


def test_describe_examples(load):
    d = describe_absolute(load("z2"))
    assert d.central_lattice.basis == ((1, 1, -1, -1),)
    assert d.dimension == 2 and d.topology_claim == "closed_disk(2)" and d.exact
    assert d.group_rank == 2 and not d.branching
    d = describe_absolute(load("free3"))
    assert d.equations == [] and d.dimension == 2 and len(d.strata) == 7
    d = describe_absolute(load("tripod"))
    assert d.topology_claim == "compact_stratified" and d.branching
    d = describe_absolute(load("z5"))
    assert d.dimension == 0 and [s.sample.weights for s in d.strata] == [(F(1, 2), F(1, 2))]
    assert len(describe_absolute(load("z2")).digest) == 16


def test_describe_fallback_marks_inexact(load):
    d = describe_absolute(load("two_points"), Options(max_rules=1, fallback_depth=3))
    assert not d.exact
    assert d.topology_claim == "unknown"
    assert all(not s.exact for s in d.strata)


def test_character_examples(load):
    rs = complete(load("z_0_6_m1"))
    ct = character_from(DistributionPoint.uniform(3), rs)
    for n in range(1, 8):
        assert ct.value((n, 0, 0)) == F(1, 3 ** n)
    assert ct.generator_values() == [F(1, 3)] * 3
    rs = complete(load("z2"))
    ct = character_from(DistributionPoint.uniform(4), rs)
    assert ct.value_at((0, 0, 0, 0), 2) == F(1, 16)
    assert ct.value_at((0, 0, 0, 0), 1) == 0
    delta = character_from(DistributionPoint.exact([1, 0, 0, 0]), rs)
    assert delta.value((3, 0, 0, 0)) == 1 and delta.value((1, 1, 0, 0)) == 0


def test_character_rejects_non_precentral(load):
    with pytest.raises(ValueError):
        character_from(DistributionPoint.exact([F(1, 2), F(1, 4), F(1, 8), F(1, 8)]), complete(load("z2")))


def test_scale_character(load):
    ct = character_from(DistributionPoint.uniform(4), complete(load("z2")))
    sc = scale_character(ct, 2)
    assert sc.value((1, 1, 0, 0)) == 4 * ct.value((1, 1, 0, 0))
    assert sum(scale_character(ct, F(1, 2)).generator_values()) == F(1, 2)
    with pytest.raises(ValueError):
        scale_character(ct, 0)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["z2", "z_0_6_m1", "tripod", "z_x_z2"]),
       st.lists(st.integers(0, 3), min_size=4, max_size=4),
       st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_character_is_multiplicative(load, name, u, v):
    p = load(name)
    rs = complete(p)
    d = describe_absolute(p)
    mu = d.main_stratum.sample
    ct = character_from(mu, rs, d.equations)
    u, v = tuple(u[: p.size]), tuple(v[: p.size])
    assert ct.value(tuple(a + b for a, b in zip(u, v))) == ct.value(u) * ct.value(v)


def test_compare_quotient(load):
    assert compare_quotient(load("z_x_z2"), load("z_c0"))
    assert not compare_quotient(load("z_pm"), pres("generators: a b\nrelations: 5a = 0; a + b = 0"))
    with pytest.raises(ValueError):
        compare_quotient(load("z_pm"), load("z2"))
