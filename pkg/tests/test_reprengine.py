import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from moprops.propcalc.dgraph import HalfEdge, Vertex, DGraph, corolla, graft, is_admissible
from moprops.propcalc.families import AssInf, LieInf
from moprops.reprengine import (
    Representation,
    as_tensor,
    build_braned_space,
    check_relations,
    coboundary,
    contract,
    divergence_family,
    divergence_probe,
    evaluate,
    ib_from_algebra,
    infinitesimal_bialgebra_conditions,
    is_infinitesimal_bialgebra,
    is_lie_bialgebra,
    leg_block,
    lie_bialgebra_conditions,
    manin_from_bialgebra,
    manin_suite,
    random_bialgebra_pairs,
    reduced_representation,
    rep_from_json,
    rep_to_json,
    two_edge_diagram,
)

LIE1 = LieInf(k=1, binary_only=True)
ASS1 = AssInf(k=1, binary_only=True)


def zeros(n):
    return np.zeros((n, n, n), dtype=int)


def axb(extra=False):
    br = zeros(2)
    br[0, 1, 1], br[1, 0, 1] = 1, -1
    cob = zeros(2)
    cob[1, 0, 1], cob[1, 1, 0] = 1, -1
    if extra:
        cob[0, 0, 1], cob[0, 1, 0] = 1, -1
    return br, cob


# ---------------------------------------------------------------- spaces


def test_lagrangian_space():
    sp = build_braned_space(1, {"+": 2, "-": 2}, lagrangian=True)
    assert sp.total == 4
    assert sp.brane(0, "+") == 2
    assert sp.pairing("+").shape == (2, 2)


def test_four_block_space():
    sp = build_braned_space(2, {"++": 1, "+-": 1, "-+": 1, "--": 1}, lagrangian=True)
    assert sp.total == 4
    assert sp.brane(0, "+") == sp.brane(1, "-") == 2


def test_imbalance_rejected():
    with pytest.raises(ValueError):
        build_braned_space(1, {"+": 2, "-": 1}, lagrangian=True)
    with pytest.raises(ValueError):
        build_braned_space(1, {"+": -1})
    with pytest.raises(ValueError):
        build_braned_space(2, {"+": 1})


def test_leg_blocks():
    assert leg_block("out", (1, 0)) == "+-"
    assert leg_block("in", (1, 0)) == "-+"


# ---------------------------------------------------------------- evaluation


def _random_tensor(rng, shape):
    return as_tensor(rng.integers(-2, 3, size=shape))


def test_single_vertex_is_its_tensor():
    rng = np.random.default_rng(0)
    sp = build_braned_space(1, {"+": 2, "-": 3})
    key = ("m", ((1,),), ((0,), (1,)))
    T = _random_tensor(rng, (2, 2, 3))
    rep = Representation(sp, {key: T})
    g = corolla("m", 0, [(0, (1,))], [(1, (0,)), (2, (1,))], 1)
    assert np.array_equal(evaluate(g, rep).array, T)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_graft_evaluates_to_contraction(seed):
    rng = np.random.default_rng(seed)
    sp = build_braned_space(1, {"+": 2, "-": 2})
    keys = [("m", ((1,),), ((0,), (0,))), ("m", ((0,),), ((0,), (1,))), ("d", ((1,), (0,)), ((0,),))]
    rep = Representation(sp, {k: _random_tensor(rng, (2, 2, 2)) for k in keys})
    a = corolla("d", 0, [(0, (1,)), (1, (0,))], [(2, (0,))], 1)
    b = corolla("m", 0, [(3, (1,))], [(4, (0,)), (5, (0,))], 1)
    c = corolla("m", 0, [(6, (0,))], [(7, (0,)), (8, (1,))], 1)
    for x, y, match in ((a, b, [(0, 4)]), (a, c, [(1, 8)]), (a, c, [])):
        g = graft(x, y, match, l=1)
        assert is_admissible(g, 1)
        want = contract(evaluate(x, rep), evaluate(y, rep), match)
        got = evaluate(g, rep)
        assert got.legs == want.legs
        assert np.array_equal(got.array, want.array)


def test_readings_along_colors_are_reshapings():
    rng = np.random.default_rng(3)
    sp = build_braned_space(1, {"+": 2, "-": 3})
    key = ("m", ((1,),), ((0,), (1,)))
    rep = Representation(sp, {key: _random_tensor(rng, (2, 2, 3))})
    g = corolla("m", 0, [(0, (1,))], [(1, (0,)), (2, (1,))], 1)
    ev = evaluate(g, rep)
    A, outs_a, ins_a = ev.as_map(0)
    B, outs_b, ins_b = ev.as_map(1)
    assert (outs_a, ins_a) == ([0], [1, 2])
    assert (outs_b, ins_b) == ([0, 2], [1])
    assert sorted(A.reshape(-1)) == sorted(B.reshape(-1))
    for i, j, k in itertools.product(range(2), range(2), range(3)):
        assert A[i, j * 3 + k] == B[i * 3 + k, j]


def test_wheel_graph_has_a_finite_trace():
    fam = divergence_family((2,))
    g = two_edge_diagram(reversed_edge=True)
    assert not is_admissible(g, 1)
    rep = fam.at(2)
    got = evaluate(g, rep).array
    lo = rep.tensors[("Delta", ((1,), (0,)), ((0,),))]
    up = rep.tensors[("mu", ((1,),), ((0,), (1,)))]
    for c, d in itertools.product(range(2), range(2)):
        direct = sum(up[c, a, b] * lo[a, b, d] for a in range(2) for b in range(2))
        assert got[c, d] == direct
    assert got[0, 0] == 2


def test_skew_lookup_sign():
    sp = build_braned_space(1, {"+": 2, "-": 2}, lagrangian=True)
    br, cob = axb()
    rep = manin_from_bialgebra(br, cob)
    g = corolla("l", 0, [(0, (0,))], [(1, (0,)), (2, (1,))], 1)
    h = corolla("l", 0, [(0, (0,))], [(2, (1,)), (1, (0,))], 1)
    assert np.array_equal(evaluate(g, rep).array, -evaluate(h, rep).array)
    assert rep.space == sp


def test_shape_and_symmetry_checks():
    sp = build_braned_space(1, {"+": 2, "-": 2})
    with pytest.raises(ValueError):
        Representation(sp, {("m", ((1,),), ((0,), (0,))): as_tensor(np.zeros((2, 2, 3)))})
    T = as_tensor(np.arange(8).reshape(2, 2, 2))
    with pytest.raises(ValueError):
        Representation(sp, {("l", ((1,),), ((0,), (0,))): T}, blocks=LIE1.blocks)


def test_missing_generator():
    sp = build_braned_space(1, {"+": 1, "-": 1})
    rep = Representation(sp, {})
    with pytest.raises(KeyError):
        evaluate(corolla("m", 0, [(0, (1,))], [(1, (0,)), (2, (0,))], 1), rep)


# ---------------------------------------------------------------- relations


def test_zero_assignment_has_zero_residuals():
    for fam, build in ((LIE1, manin_from_bialgebra), (ASS1, ib_from_algebra)):
        rep = check_relations(build(zeros(2), zeros(2)), fam)
        assert rep.ok and len(rep.residuals) == 6


def test_abelian_bracket_zero_cobracket():
    assert check_relations(manin_from_bialgebra(zeros(3), zeros(3)), LIE1).ok


def test_axb_bialgebra():
    br, cob = axb()
    assert is_lie_bialgebra(br, cob)
    assert check_relations(manin_from_bialgebra(br, cob), LIE1).ok


def test_every_two_dim_pair_is_a_bialgebra():
    # in dimension 2 all three conditions hold identically, including the
    # ax+b bracket with delta(e1) = e1^e2 added
    br, cob = axb(extra=True)
    assert is_lie_bialgebra(br, cob)
    assert check_relations(manin_from_bialgebra(br, cob), LIE1).ok


def test_cocycle_failure_detected():
    # heisenberg bracket with a cobracket that is not a 1-cocycle
    br = zeros(3)
    br[0, 1, 2], br[1, 0, 2] = 1, -1
    cob = zeros(3)
    cob[0, 0, 1], cob[0, 1, 0] = 1, -1
    conds = lie_bialgebra_conditions(br, cob)
    assert conds["jacobi"] and conds["cojacobi"] and not conds["cocycle"]
    assert not check_relations(manin_from_bialgebra(br, cob), LIE1).ok


def test_jacobi_failure_detected():
    br = zeros(3)
    for i, j, c in ((0, 1, 2), (1, 2, 1)):
        br[i, j, c], br[j, i, c] = 1, -1
    assert not lie_bialgebra_conditions(br, zeros(3))["jacobi"]
    rep = check_relations(manin_from_bialgebra(br, zeros(3)), LIE1)
    assert not rep.ok and rep.max_residual > 0


def test_coboundaries_are_bialgebras():
    so3 = zeros(3)
    for i, j, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        so3[i, j, c], so3[j, i, c] = 1, -1
    r = np.array([[0, 1, -2], [-1, 0, 1], [2, -1, 0]])
    cob = coboundary(so3, r)
    assert is_lie_bialgebra(so3, cob)
    assert check_relations(manin_from_bialgebra(so3, cob), LIE1).ok


def test_manin_agreement_on_random_pairs():
    rows = manin_suite(60, seed=1)
    assert all(a == b for _, a, b in rows)
    assert 0 < sum(a for _, a, _ in rows) < len(rows)
    assert {n for n, _, _ in rows} == {2, 3}


def test_random_pairs_are_skew():
    for br, cob in random_bialgebra_pairs(20, seed=5):
        assert np.array_equal(br, -np.transpose(br, (1, 0, 2)))
        assert np.array_equal(cob, -np.transpose(cob, (0, 2, 1)))


def test_non_skew_inputs_rejected():
    br = zeros(2)
    br[0, 1, 0] = 1
    with pytest.raises(ValueError):
        manin_from_bialgebra(br, zeros(2))


def _matrix_algebra_unit():
    # upper triangular 2x2 matrices spanned by e11, e12, e22
    mu = zeros(3)
    mu[0, 0, 0] = mu[0, 1, 1] = mu[1, 2, 1] = mu[2, 2, 2] = 1
    return mu


def test_ib_agreement_on_random_pairs():
    rng = np.random.default_rng(11)
    seen = {True: 0, False: 0}
    for _ in range(60):
        n = int(rng.integers(2, 4))
        mu = rng.choice([-1, 0, 0, 0, 1], size=(n, n, n))
        de = rng.choice([-1, 0, 0, 0, 1], size=(n, n, n))
        if rng.random() < 0.3:
            de = np.zeros_like(de)
        if rng.random() < 0.3:
            mu = np.zeros_like(mu)
        oracle = is_infinitesimal_bialgebra(mu, de)
        assert check_relations(ib_from_algebra(mu, de), ASS1).ok == oracle
        seen[oracle] += 1
    assert seen[True] and seen[False]


def test_failing_associativity_hits_first_relation():
    mu = _matrix_algebra_unit()
    assert is_infinitesimal_bialgebra(mu, zeros(3))
    mu[2, 0, 1] = 1
    assert not infinitesimal_bialgebra_conditions(mu, zeros(3))["assoc"]
    rep = check_relations(ib_from_algebra(mu, zeros(3)), ASS1)
    assert rep.failures and rep.failures[0] == "R1"


def test_reduced_flag_enforced():
    sp = build_braned_space(1, {"+": 2, "-": 2}, lagrangian=True)
    P = as_tensor(np.arange(8).reshape(2, 2, 2))
    C = as_tensor(np.zeros((2, 2, 2), dtype=int))
    rep = reduced_representation(ASS1, sp, P, C)
    tensors = dict(rep.tensors)
    key = ("a", ((0,),), ((0,), (1,)))
    tensors[key] = tensors[key] + 1
    with pytest.raises(ValueError):
        Representation(sp, tensors, ASS1.blocks, reduced=True)
    Representation(sp, tensors, ASS1.blocks, reduced=False)


def test_json_round_trip():
    br, cob = axb()
    rep = manin_from_bialgebra(br, cob)
    back = rep_from_json(rep_to_json(rep), blocks=LIE1.blocks)
    assert back.reduced
    for key, T in rep.tensors.items():
        assert np.array_equal(back.tensors[key], T)
    entries = [e for t in rep_to_json(rep)["tensors"] for e in t["entries"]]
    assert all("/" in v for _, v in entries)


# ---------------------------------------------------------------- divergence


def test_divergence_dichotomy():
    fam = divergence_family((4, 8, 16, 32))
    legal = divergence_probe(fam, two_edge_diagram(False), {0: 0, 1: 0})
    illegal = divergence_probe(fam, two_edge_diagram(True), {0: 0, 1: 0})
    assert set(legal.values()) == {1}
    assert illegal == {p: p for p in (4, 8, 16, 32)}
    assert is_admissible(two_edge_diagram(False), 1)
    assert not is_admissible(two_edge_diagram(True), 1)


def test_divergence_zero_tensors():
    fam = divergence_family((4, 8), zero=True)
    for rev in (False, True):
        assert set(divergence_probe(fam, two_edge_diagram(rev), {0: 0, 1: 0}).values()) == {0}


def test_truncation_levels_are_restrictions():
    fam = divergence_family()
    small, big = fam.at(4), fam.at(8)
    for key, T in small.tensors.items():
        assert np.array_equal(big.tensors[key][:4, :4, :4], T)


def test_finiteness_clauses_hold():
    # every pattern has finitely many nonzero entries once its clause's indices are fixed
    rep = divergence_family().at(16)
    lo_al = rep.tensors[("Delta", ((1,), (1,)), ((0,),))]
    up_al = rep.tensors[("mu", ((1,),), ((0,), (0,)))]
    lo_mx = rep.tensors[("Delta", ((1,), (0,)), ((0,),))]
    up_mx = rep.tensors[("mu", ((1,),), ((0,), (1,)))]
    assert max(sum(1 for a in range(16) for b in range(16) if lo_al[a, b, d]) for d in range(16)) == 1
    assert max(sum(1 for c in range(16) if up_al[c, a, b]) for a in range(16) for b in range(16)) == 1
    assert max(sum(1 for d in range(16) if lo_mx[a, b, d]) for a in range(16) for b in range(16)) == 1
    assert max(sum(1 for c in range(16) for b in range(16) if up_mx[c, a, b]) for a in range(16)) == 1
