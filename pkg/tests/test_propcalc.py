import pytest

from moprops.propcalc import forgetful as fg
from moprops.propcalc.differential import delta, delta_comb, delta_on_graph, verify_d_squared
from moprops.propcalc.dgraph import (
    SKEW,
    Comb,
    DGraph,
    InadmissibleError,
    corolla,
    from_json,
    graft,
    is_admissible,
    to_json,
    validate,
)
from moprops.propcalc.families import IB, AssInf, HoLB, LieBdiop, LieInf, curvature_ok, words
from moprops.propcalc.slices import (
    profiles,
    quotient_dim,
    relation_constants,
    resolution_rows,
    slice_cohomology,
)


@pytest.mark.parametrize(
    "family,bound",
    [
        (AssInf(k=0), 5),
        (AssInf(k=1), 5),
        (LieInf(k=0), 5),
        (LieInf(k=1), 5),
        (LieInf(k=2), 5),
        (HoLB(c=1, d=1, k=0), 5),
        (HoLB(c=1, d=1, k=1), 5),
        (HoLB(c=0, d=1, k=0), 4),
        (HoLB(c=1, d=0, k=0), 4),
        (HoLB(c=0, d=0, k=0), 4),
    ],
    ids=lambda x: x.label() if hasattr(x, "label") else str(x),
)
def test_differential_squares_to_zero(family, bound):
    rep = verify_d_squared(family, bound)
    assert rep.checked > 0
    assert rep.ok


def test_printed_one_oriented_sign_fails():
    assert not verify_d_squared(HoLB(c=1, d=1, k=0, sign_variant="I1"), 5).ok


def test_inner_first_vertex_order_fails():
    assert not verify_d_squared(LieInf(k=0, first="inner"), 5).ok


def test_ass2_is_not_a_complex_at_arity_four():
    rep = verify_d_squared(AssInf(k=2), 4)
    assert len(rep.residuals) == 36


def test_binary_differential_vanishes():
    for fam in (AssInf(k=1), LieInf(k=1)):
        for g in fam.generators(1, 2):
            assert delta(fam, g).is_zero()


def test_curvature_condition():
    g = corolla("h", 0, [(0, (1,))], [(1, (1,)), (2, (1,))], 1)
    assert not curvature_ok(g.verts[0], 1)
    g = corolla("h", 0, [(0, (1,))], [(1, (0,)), (2, (1,))], 1)
    assert curvature_ok(g.verts[0], 1)


def test_graft_and_admissibility():
    a = corolla("a", 0, [(0, (1,))], [(1, (0,)), (2, (0,))], 1)
    b = corolla("a", 0, [(3, (0,))], [(4, (0,)), (5, (1,))], 1)
    g = graft(a, b, [(0, 4)], l=1)
    validate(g)
    assert is_admissible(g, 1)
    with pytest.raises(ValueError):
        graft(a, b, [(0, 5)])  # multidirections do not match


def test_graft_rejects_wheels():
    a = DGraph(1, (corolla("x", 0, [(0, (1,)), (1, (0,))], [(2, (0,))], 1).verts[0],))
    b = corolla("y", 0, [(3, (1,))], [(4, (0,)), (5, (1,))], 1)
    # first edge carries the color upwards, the second downwards: a color wheel
    with pytest.raises(InadmissibleError):
        graft(a, b, [(0, 4), (1, 5)], l=1)
    assert isinstance(graft(a, b, [(0, 4), (1, 5)], l=0), DGraph)


def test_skew_corolla_cancels():
    c = Comb(lambda tag: ("planar", SKEW))
    g = corolla("l", 0, [(0, (0,))], [(1, (1,)), (2, (1,))], 1)
    h = corolla("l", 0, [(0, (0,))], [(2, (1,)), (1, (1,))], 1)
    c.add(g)
    c.add(h)
    assert c.is_zero()


def test_json_round_trip():
    fam = HoLB(c=1, d=1, k=1)
    g = fam.generators(1, 2)[0]
    assert from_json(to_json(g, fam.name, fam.params)) == g


def test_profiles_are_orbit_representatives():
    assert len(profiles(AssInf(k=1), 1, 3)) == 2 * 4
    assert len(profiles(LieInf(k=2), 1, 2)) == 4 * 10
    assert len(words(2)) == 4


def test_quotient_dims_classical():
    ass, lie = AssInf(k=0, binary_only=True), LieInf(k=0, binary_only=True)
    prof3 = profiles(ass, 1, 3)[0]
    prof4 = profiles(ass, 1, 4)[0]
    assert quotient_dim(ass, prof3) == 6
    assert quotient_dim(ass, prof4) == 24
    assert quotient_dim(lie, prof3) == 2
    assert quotient_dim(lie, prof4) == 6


def test_transcribed_relations_match_expanded():
    fam = AssInf(k=1, binary_only=True)
    a = relation_constants(fam, "transcribed")
    b = relation_constants(fam, "derived")
    assert a.keys() == b.keys()
    for key in a:
        assert a[key] == b[key] or a[key] == b[key].scaled(-1)


def test_slice_cohomology_classical():
    for fam, dim in ((AssInf(k=0), 6), (LieInf(k=0), 2)):
        coh = slice_cohomology(fam, profiles(fam, 1, 3)[0])
        assert coh.concentrated_in(0)
        assert coh.dims[0] == dim


@pytest.mark.parametrize("kind,k", [("ass", 0), ("ass", 1), ("lie", 0), ("lie", 1)])
def test_resolution_matches_quotient(kind, k):
    rows = resolution_rows(kind, k, 4)
    assert rows and all(r.ok for r in rows)


def test_forgetful_maps():
    assert fg.verify_morphism("alpha").ok
    assert fg.verify_morphism("beta").ok
    bad = fg.ForgetfulMap("beta", fg.beta.source, fg.beta.target, corrupt=((1, 0, 0),))
    rep = fg.verify_morphism(bad)
    assert rep.failures == ["L1", "L5"]


def test_target_dioperad_relations_have_expected_dims():
    for fam, dims in ((IB(), (6, 16, 6)), (LieBdiop(), (2, 4, 2))):
        got = tuple(quotient_dim(fam, p) for m, n in ((1, 3), (2, 2), (3, 1)) for p in profiles(fam, m, n))
        assert got == dims


def test_delta_is_a_derivation_on_trees():
    fam = HoLB(c=1, d=1, k=0)
    g = fam.generators(2, 2)[0]
    once = delta_on_graph(fam, g)
    assert delta_comb(fam, once).is_zero()
