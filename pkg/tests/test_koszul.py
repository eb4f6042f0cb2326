from hypothesis import given
from hypothesis import strategies as st

from qsl2hom.chains import Chain, boundary_b, tor_d, xi
from qsl2hom.koszul import (ActionCache, KoszulLift, KoszulVector, comparison_map, epsilon, f_map,
                            index_sets, koszul_differential, slq2_system, verify_resolution,
                            wedge_expand)
from qsl2hom.qsl2 import QSL2, Automorphism
from qsl2hom.scalars import make_field

from strategies import elements, scalars

F = make_field("generic")
A = QSL2(F)
S = slq2_system(A)
a, b, c, d = (A.gen(g) for g in "abcd")
one = A.one()
q = F.qpow


def vec(n, *elems):
    return KoszulVector.from_list(A, 3, n, list(elems))


def k(v):
    return koszul_differential(v, S)


def koszul_vectors(n):
    return st.lists(elements(A, max_terms=2), min_size=len(index_sets(3, n)),
                    max_size=len(index_sets(3, n))).map(lambda es: vec(n, *es))


def test_system_is_koszul():
    assert S.is_koszul()
    assert S.x[(3, 1)] == a * q(-2) - one


def test_k_examples():
    assert k(vec(3, one)) == vec(2, c, -b, a * q(-2) - one)
    assert k(vec(1, one, A.zero(), A.zero())) == vec(0, a - one)
    assert not k(k(vec(2, one, A.zero(), A.zero())))
    assert not k(k(vec(3, one)))


def test_k_squared_vanishes_on_every_generator():
    for n in (2, 3):
        for I in index_sets(3, n):
            for g in (one, a, b, c, d):
                v = KoszulVector(A, 3, n, {I: g})
                assert not k(k(v))


def test_augmentation_kills_image_of_k1():
    for I in index_sets(3, 1):
        img = k(KoszulVector(A, 3, 1, {I: one})).component(())
        assert A.counit(img) == F.zero


@given(st.integers(2, 3).flatmap(koszul_vectors), scalars(F), scalars(F))
def test_f_squared_vanishes(v, lam, mu):
    assert not f_map(f_map(v, S, lam, mu), S, lam, mu)


@given(st.integers(1, 3).flatmap(koszul_vectors), scalars(F), scalars(F))
def test_f_closed_form_matches_hopf_form(v, lam, mu):
    assert f_map(v, S, lam, mu) == f_map(v, S, lam, mu, hopf_form=True)


def test_f_examples():
    assert not f_map(vec(3, one), S, q(-2), F.one)
    for N in range(4):
        for i in range(N + 1):
            x = A.mono(0, i, N - i)
            assert not f_map(vec(3, x), S, q(-(N + 2)), F.one)
    lam, mu = q(3), F(5)
    cache = ActionCache(A, lam, mu)
    assert f_map(vec(1, one, A.zero(), A.zero()), S, lam, mu) == \
        vec(0, A.element(cache.act((0, 0, 0), "a")) - one)


def test_epsilon():
    assert epsilon(F, 0, 0, 0, q(-2), F.one) == F.one
    lam, mu = F(3), F(7)
    assert epsilon(F, 1, 1, 1, lam, mu) == q(5) * lam / mu
    for s in range(5):
        assert epsilon(F, s, 0, 0, q(-(s + 2)) * mu, mu) == F.one


def test_wedge_expand_two_indices():
    assert wedge_expand((2, 3), S) == Chain.from_tensor(A, [c, b]) - Chain.from_tensor(A, [b, c])


def test_comparison_map_examples():
    x = A.mono(2, 1, 0)
    v = KoszulVector(A, 3, 1, {(1,): x})
    assert comparison_map(v, S) == Chain.from_tensor(A, [x, a]) - Chain.from_tensor(A, [x, one])
    assert comparison_map(vec(0, x), S) == Chain.from_tensor(A, [x])
    assert len(comparison_map(vec(3, one), S).terms) >= 6


@given(st.integers(1, 3).flatmap(koszul_vectors), scalars(F), scalars(F))
def test_comparison_is_a_chain_map(v, lam, mu):
    sig = Automorphism("sigma", lam, mu)
    lhs = tor_d(comparison_map(v, S), sig)
    rhs = comparison_map(f_map(v, S, lam, mu), S)
    assert lhs == rhs
    assert boundary_b(xi(comparison_map(v, S), sig), sig) == xi(rhs, sig)


def _as_vector(n, coords):
    comps = {}
    for (I, m), c in coords.items():
        comps[I] = comps.get(I, A.zero()) + A.element({m: c})
    return KoszulVector(A, 3, n, comps)


def test_lift_inverts_the_comparison_map_in_top_degree():
    # no F_4, so Psi o phi_3 = id on the nose for a 3-cycle
    sig = Automorphism("sigma", q(-2), F.one)
    lift = KoszulLift(S, sig)
    assert _as_vector(3, lift.lift(comparison_map(vec(3, one), S))) == vec(3, one)


@given(st.integers(1, 2), st.data())
def test_lift_is_a_chain_map(n, data):
    sig = Automorphism("sigma", q(-3), F.one)
    lift = KoszulLift(S, sig)
    small = st.builds(lambda i, j, kk: A.mono(i, j, kk), st.integers(-1, 1), st.integers(0, 1),
                      st.integers(0, 1))
    elems = data.draw(st.lists(small, min_size=n + 1, max_size=n + 1))
    ch = Chain.from_tensor(A, elems)
    lhs = _as_vector(n - 1, lift.lift(tor_d(ch, sig)))
    rhs = f_map(_as_vector(n, lift.lift(ch)), S, sig.lam, sig.mu)
    assert lhs == rhs


def test_resolution_exact_on_small_window():
    reps = verify_resolution(A, I_max=1, L=3)
    assert reps and all(r.exact for r in reps)
