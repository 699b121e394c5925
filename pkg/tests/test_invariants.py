"""u-polynomials, the u-invariant, rho family, genus bounds."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from vstrings.diagram import (canonical_surface_genus, fixture_sigma,
                              fixture_tau, gen_alpha, gen_beta,
                              induced_string, parse_multistring,
                              random_multistring, reverse_all_arrows,
                              reverse_circle)
from vstrings.homology import (MatrixMove, apply_matrix_move,
                               enumerate_intersection_moves,
                               reduce_to_primitive)
from vstrings.invariants import (InvariantReport, LaurentPoly,
                                 genus_lower_bound, invariant_report,
                                 rho_family, u_components, u_invariant,
                                 u_poly_1string, u_sum)
from vstrings.pairing import (WovenBasedMatrix, base, based_matrix,
                              multistring_based_matrix, self_arrow, weaving)

from conftest import (fresh_self, fresh_weaving, random_m3_assignment,
                      random_m4_assignment, random_woven)


# ---------------------------------------------------------------------------
# Polynomial type
# ---------------------------------------------------------------------------

def test_poly_str_canonical():
    p = (LaurentPoly.monomial(2, -1, -2) + LaurentPoly.monomial(1, 0)
         + LaurentPoly.monomial(0, 0, 3))
    assert str(p) == "-2*t^2*x^-1 + t + 3"
    assert str(LaurentPoly()) == "0"
    assert str(LaurentPoly.monomial(0, 2, -1)) == "-x^2"


def test_poly_algebra():
    a = LaurentPoly.monomial(1, 0)
    b = LaurentPoly.monomial(0, -1, 2)
    assert (a + b) - b == a
    assert a * b == LaurentPoly.monomial(1, -1, 2)
    assert (a - a) == LaurentPoly()
    assert (a + b).at_x1() == LaurentPoly.from_dict({(1, 0): 1, (0, 0): 2})
    assert a.to_json() == [[1, 0, 1]]


def test_poly_no_zero_terms_stored():
    p = LaurentPoly.monomial(1, 1) + LaurentPoly.monomial(1, 1, -1)
    assert p.terms == ()


# ---------------------------------------------------------------------------
# 1-string u-polynomial
# ---------------------------------------------------------------------------

def test_u_arrow_free():
    assert u_poly_1string(based_matrix(gen_alpha(0, 0))) == LaurentPoly()


def _u_brute(ms):
    """Direct recount of base values from the diagram."""
    terms = {}
    for g in ms.self_arrows:
        arc = ms.open_arcs[g]
        n = 0
        for h in ms.labels:
            from vstrings.diagram import End
            t_in = End(h, True) in arc
            h_in = End(h, False) in arc
            if t_in != h_in:
                n += 1 if t_in else -1
        if n:
            key = (abs(n), 0)
            terms[key] = terms.get(key, 0) + (1 if n > 0 else -1)
    return LaurentPoly.from_dict(terms)


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (1, 2), (3, 1), (2, 3)])
def test_u_alpha_shape(p, q):
    ms = gen_alpha(p, q)
    u = u_poly_1string(based_matrix(ms))
    assert u == _u_brute(ms)
    assert u.at_t0() == 0
    assert u.dt_at_1() == 0


@given(st.integers(0, 7), st.integers(0, 10 ** 6))
@settings(max_examples=80, deadline=None)
def test_u_properties_random_1strings(m, seed):
    ms = random_multistring(1, m, seed)
    u = u_poly_1string(based_matrix(ms))
    assert u == _u_brute(ms)
    assert u.t_degree() + 1 <= max(len(ms.labels), 0) or not u
    assert u.at_t0() == 0
    assert u.dt_at_1() == 0
    assert u_poly_1string(based_matrix(reverse_all_arrows(ms))) == u
    assert u_poly_1string(based_matrix(reverse_circle(ms, 0))) == -u


# ---------------------------------------------------------------------------
# Multistring u-invariant
# ---------------------------------------------------------------------------

def test_u_single_intersection_arrow():
    ms = parse_multistring("circle: a+\ncircle: a-\n")
    assert u_invariant(multistring_based_matrix(ms)) == \
        (LaurentPoly(), LaurentPoly())


def _u_component_brute(ms, i):
    """Term-by-term evaluation from diagram-level counts, plain dicts."""
    from vstrings.diagram import End
    T = multistring_based_matrix(ms)
    total = {}
    for g_lab in ms.self_arrows_on(i):
        g = self_arrow(i, g_lab)
        n_i = T.b(g, base(i))
        if n_i == 0:
            continue
        poly = {(abs(n_i), 0): 1 if n_i > 0 else -1}
        for j in range(ms.n):
            if j == i:
                continue
            nj_g = T.b(g, base(j))
            nj_s = T.b(base(i), base(j))
            nxt = {}
            for (te, xe), c in poly.items():
                for shift in (nj_g, nj_s - nj_g):
                    key = (te, xe + shift)
                    nxt[key] = nxt.get(key, 0) + c
            poly = nxt
        for key, c in poly.items():
            total[key] = total.get(key, 0) + c
    return LaurentPoly.from_dict(total)


def test_u_beta_formula_vs_brute():
    ms = gen_beta(1, 1, 1, 1, 1, 0)
    T = multistring_based_matrix(ms)
    assert u_components(T)[0] == _u_component_brute(ms, 0)
    ms = gen_beta(2, 1, 1, 2, 2, 1)
    T = multistring_based_matrix(ms)
    for i in (0, 1):
        assert u_components(T)[i] == _u_component_brute(ms, i)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_u_at_x1_doubles_component_polys(seed):
    ms = random_multistring(2, seed % 8, seed)
    T = multistring_based_matrix(ms)
    for i, u_i in enumerate(u_components(T)):
        expect = u_poly_1string(based_matrix(induced_string(ms, i))).scale(2)
        assert u_i.at_x1() == expect


def test_u_split_2string_collapses():
    ms = parse_multistring("circle: a+ b+ a- b-\ncircle: c+ c-\n")
    T = multistring_based_matrix(ms)
    for i, u_i in enumerate(u_components(T)):
        expect = u_poly_1string(based_matrix(induced_string(ms, i))).scale(2)
        assert u_i == expect


def test_u_invariant_is_multiset():
    ms = gen_beta(1, 2, 2, 1, 1, 0)
    swapped = gen_beta(2, 1, 1, 2, 0, 1)
    u1 = u_invariant(multistring_based_matrix(ms))
    u2 = u_invariant(multistring_based_matrix(swapped))
    assert u1 == u2


def test_u_sum_is_sum():
    T = multistring_based_matrix(gen_beta(1, 2, 2, 1, 1, 0))
    total = LaurentPoly()
    for p in u_components(T):
        total = total + p
    assert u_sum(T) == total


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_u_invariant_stable_under_matrix_moves(seed):
    rng = random.Random(seed)
    T = random_woven(seed, n=2, selfs=2, xs=4)
    u0 = u_invariant(T)
    j = rng.randrange(T.n)

    g = fresh_self(T, j, "m")
    assert u_invariant(apply_matrix_move(T, MatrixMove("M1", (g,)))) == u0
    assert u_invariant(apply_matrix_move(T, MatrixMove("M2", (g,)))) == u0
    mv = MatrixMove("M3", (g, self_arrow(j, g[2] + "b")),
                    random_m3_assignment(T, j, rng))
    assert u_invariant(apply_matrix_move(T, mv)) == u0
    x = fresh_weaving(T, "w")
    mv = MatrixMove("M4", (x, weaving(x[1] + "b")),
                    random_m4_assignment(T, rng))
    assert u_invariant(apply_matrix_move(T, mv)) == u0
    for imv in enumerate_intersection_moves(T)[:6]:
        assert u_invariant(apply_matrix_move(T, imv)) == u0


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_complementary_pair_base_signs_cancel(seed):
    rng = random.Random(seed)
    from conftest import add_complementary_pair
    T0 = random_woven(seed, n=2, selfs=2, xs=3)
    j = rng.randrange(T0.n)
    T, g1, g2 = add_complementary_pair(T0, j, rng)
    n1 = T.b(g1, base(j))
    n2 = T.b(g2, base(j))
    assert n1 == -n2


# ---------------------------------------------------------------------------
# rho family and genus bound
# ---------------------------------------------------------------------------

def test_rho_sigma_trivial():
    T = multistring_based_matrix(fixture_sigma())
    rep = invariant_report(T)
    assert (rep.rho, rep.rho_prime, rep.rho_cap) == (0, 0, 0)
    assert rep.rho_i == (0, 0)
    assert rep.primitive_size == (2, 0)


def test_rho_tau():
    T = multistring_based_matrix(fixture_tau())
    rep = invariant_report(T)
    assert (rep.rho, rep.rho_prime, rep.rho_cap) == (8, 2, 6)
    assert rep.rho_i == (0, 1, 1)
    assert rep.rho == rep.rho_prime + rep.rho_cap


def test_rho_trivial_matrix():
    T = WovenBasedMatrix(((base(0),), (base(1),), (base(2),)), (),
                         tuple((0,) * 3 for _ in range(3)))
    rep = rho_family(T)
    assert (rep.rho, rep.rho_prime, rep.rho_cap) == (0, 0, 0)


def test_rho_family_rejects_non_primitive():
    T = multistring_based_matrix(fixture_sigma())
    with pytest.raises(ValueError):
        rho_family(T)


def test_genus_bound_examples():
    T = WovenBasedMatrix(((base(0),),), (), ((0,),))
    assert genus_lower_bound(T) == 0
    # alpha(1,1): the unreduced matrix has rank 2, matching this diagram's
    # surface; the class itself is trivial (the arrow pair removes), so the
    # primitive bound drops to 0 and stays below the diagram genus.
    full = multistring_based_matrix(gen_alpha(1, 1))
    assert genus_lower_bound(full) == 1
    assert canonical_surface_genus(gen_alpha(1, 1)).genus == 1
    P, _ = reduce_to_primitive(full)
    assert genus_lower_bound(P) == 0


@given(st.integers(0, 7), st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_genus_bound_below_canonical_genus(m, seed):
    ms = random_multistring(1, m, seed)
    P, _ = reduce_to_primitive(multistring_based_matrix(ms))
    assert genus_lower_bound(P) <= canonical_surface_genus(ms).genus


def test_report_json():
    rep = invariant_report(multistring_based_matrix(fixture_tau()))
    doc = rep.to_json()
    assert doc["rho"] == 8
    assert doc["rho_i"] == [0, 1, 1]
    assert doc["u"] == [[], [], []]


def test_rho_bounds_arrow_counts_along_moves():
    """rho' and rho_cap stay below the self-/intersection-arrow counts of
    every diagram reached by homotopy moves."""
    from vstrings.diagram import apply_move, enumerate_applicable_moves
    rng = random.Random(2)
    for k in range(12):
        ms = random_multistring(1 + k % 3, k % 7, seed=8000 + k)
        P, _ = reduce_to_primitive(multistring_based_matrix(ms))
        from vstrings.invariants import _rho_fields
        _, rho_prime, rho_cap, _ = _rho_fields(P)
        for _ in range(6):
            assert rho_prime <= len(ms.self_arrows)
            assert rho_cap <= len(ms.intersection_arrows)
            moves = enumerate_applicable_moves(ms)
            ms = apply_move(ms, moves[rng.randrange(len(moves))])


def test_u_invariant_under_isomorphism():
    """Relabeling and component reordering leave the u multiset alone."""
    from test_iso import _relabel
    for seed in range(8):
        ms = random_multistring(2 + seed % 2, 3 + seed % 5, seed=9000 + seed)
        T = multistring_based_matrix(ms)
        perm = list(range(T.n))[::-1]
        T2 = _relabel(T, perm, lambda lab: "w" + lab)
        assert u_invariant(T) == u_invariant(T2)
