import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsl2hom.catalog import generator_catalog, omega_1
from qsl2hom.chains import Chain, boundary_b, is_boundary
from qsl2hom.homology import (INF, Check, Setting, b0_lemma_case34, b0_lemma_commuting,
                              boundary_certificate, classify, conjecture_probe, expected_dims,
                              hc_instance, hh0_boundary_generators, hh0_window, hh_dims,
                              hochschild_rank, hochschild_to_koszul, homologous, is_koszul_boundary,
                              koszul_to_hochschild, koszul_witness, s2h_check, theorem_table_dims,
                              verify_catalog)
from qsl2hom.qsl2 import monomial_str, window_monomials
from qsl2hom.scalars import make_field

F = make_field("generic")
q = F.qpow


@pytest.mark.parametrize("lam, mu, case, N, M", [
    ("q^-2", "1", 2, 0, None), ("q^-5", "1", 2, 3, None), ("q^3", "1", 1, None, None),
    ("1", "q^2", 1, None, None), ("1", "1", 1, None, None),
    ("q^-1", "q", 3, 0, 0), ("q^-3", "q^2", 3, 2, 1), ("q^-2", "q^-4", 4, 1, 3),
    ("q^5", "q^7", 5, None, None), ("q^-1", "3", 5, None, None), ("3/2", "q^2", 5, None, None),
])
def test_classify(lam, mu, case, N, M):
    st_ = Setting("generic", lam, mu)
    info = classify(F, st_.lam, st_.mu)
    assert (info.case, info.N, info.M) == (case, N, M)


def test_expected_and_printed_tables():
    info = classify(F, F.one, q(1))
    assert expected_dims(info)[0] == INF and theorem_table_dims(info)[0] == 0
    assert expected_dims(classify(F, q(-4), F.one)) == {0: INF, 1: INF, 2: 3, 3: 3}
    assert expected_dims(classify(F, q(-1), q(-1))) == {0: 2, 1: 4, 2: 2, 3: 0}


def dims_at(setting, lam, mu, I=2, L=6, q_="generic"):
    return {r.n: r for r in hh_dims(setting(lam, mu, q_), I, L, 2)}


def test_hh_examples(setting):
    r = dims_at(setting, "q^-2", "1")
    assert r[3].windowed[6] == 1 and r[3].verdict == "pass"
    r = dims_at(setting, "q^-4", "1")
    assert r[3].windowed[6] == 3
    r = dims_at(setting, "q^5", "q^7")
    assert all(r[n].windowed[6] == 0 and r[n].verdict == "pass" for n in range(4))
    r = dims_at(setting, "q^-1", "q", I=3, L=8)
    assert r[2].windowed[8] == 2 and r[2].stable


def test_hh2_case2_counts_the_extra_family(setting):
    # measured 2(N+1): the first-line and the last-line families are independent
    for N in (0, 1):
        r = dims_at(setting, f"q^-{N + 2}", "1")
        assert r[2].windowed[6] == 2 * (N + 1) and r[2].stable and r[2].verdict == "fail"


def test_hh3_generator_is_one(setting):
    st_ = setting("q^-2", "1")
    z = koszul_to_hochschild(st_, {((1, 2, 3), (0, 0, 0)): F.one}, 3)
    assert not boundary_b(z, st_.sigma).terms
    assert not is_koszul_boundary(st_, hochschild_to_koszul(st_, z), 3)


def test_hh0_representatives(setting):
    dims, reps = hh0_window(setting("q^-1", "q"), 3, 8, 2)
    assert sorted(monomial_str(m) for m in reps) == sorted(monomial_str(m) for m in [(1, 1, 0), (-1, 0, 1)])
    dims, reps = hh0_window(setting("q^5", "q^7"), 2, 6, 2)
    assert dims == {} and reps == []


@given(st.integers(0, 3), st.integers(0, 3),
       st.sampled_from([("3", "5"), ("q^-3", "1"), ("q^2", "q^-1"), ("2/3", "q")]))
def test_hh0_identity_between_boundaries(j, k, lm):
    st_ = Setting("generic", *lm)
    A_ = hh0_boundary_generators(st_, (-1, j, k), "a")
    D_ = hh0_boundary_generators(st_, (1, j, k), "d")
    assert not (A_ + D_ * (st_.lam * q(-(j + k)))).terms


def test_chain_level_boundaries(setting):
    A = setting().A
    one, a, d = A.one(), A.gen("a"), A.gen("d")
    st1 = setting("1", "1")
    cert = is_boundary(Chain.from_tensor(A, [one, one]), st1.sigma, window_monomials(0, 0))
    assert cert.is_boundary and cert.verify(Chain.from_tensor(A, [one, one]), st1.sigma)
    for lam in ("q^2", "3", "q^-1"):
        st_ = setting(lam, "1")
        z = Chain.from_tensor(A, [d, a]) + Chain.from_tensor(A, [a, d], st_.lam)
        cert = boundary_certificate(st_, z, level_margin=1)
        assert cert.is_boundary and cert.verify(z, st_.sigma)


def test_case3_omega2_is_not_a_boundary(setting):
    st_ = setting("q^-1", "q")
    (w2,) = [e for e in generator_catalog(st_) if e.name == "omega_2"]
    assert not boundary_certificate(st_, w2.cycle, level_margin=1).is_boundary
    assert koszul_witness(st_, "omega_2", w2.cycle).nontrivial
    assert w2.pairing() != 0


def test_homologous_lambda_one(setting):
    st_ = setting("1", "q")
    A = st_.A
    w = omega_1(A, st_.mu)
    assert homologous(st_, w, w)
    assert not homologous(st_, w, Chain(A, 1))
    assert hochschild_rank(st_, [w, w * F(2)]) == 1


def test_b0_lemmas(setting):
    for lam, mu in [("q^-1", "q"), ("q^-2", "q^2")]:
        checks = b0_lemma_case34(setting(lam, mu))
        assert len(checks) == 3 and all(c.ok for c in checks)
    st_ = setting("1", "1")
    A = st_.A
    for s_, t in [(1, 1), (2, 1), (1, 3)]:
        assert b0_lemma_commuting(st_, A.gen("b"), A.gen("c"), s_, t).ok


def test_hc_instances(setting):
    rep = hc_instance(setting("q^-1", "q"), 2, 6, 2)
    assert all(c.ok for c in rep._check_objs)
    assert rep.hc[0] == 2 and rep.hc[1] == 2 and rep.hc[2] == 0
    rep = hc_instance(setting("q^-2", "1"), 2, 6, 2)
    assert rep.hc[1] == 1 and all(c.ok for c in rep._check_objs)
    assert all(rep.conditional[n] for n in (3, 4, 5))


def test_conjecture_probe_is_labelled():
    rep = conjecture_probe(0, L=6)
    d = rep.to_dict()
    assert "evidence" in d["label"]
    assert {r["verdict"] for r in d["evidence"]} <= {"consistent", "inconsistent"}
    by = {c.name: c for c in rep.evidence}
    assert by["B o B = 0 on omega_1(N,N/2), chain level"].ok
    assert by["[B_1(omega_1(N,N/2))] != 0"].ok
    with pytest.raises(ValueError):
        conjecture_probe(1)


def test_s2h():
    assert all(c.ok for c in s2h_check(F, sample=60))


def test_catalog_case3(setting):
    rep = verify_catalog(setting("q^-1", "q"), sample=40)
    assert rep.ok
    st_ = setting("q^-1", "q")
    entries = generator_catalog(st_)
    assert [e.degree for e in entries] == [0, 0, 1, 1, 1, 1, 2, 2]
    assert {"omega_2", "omega_2'"} <= {e.name for e in entries}


def test_check_record():
    c = Check("x", 1, 2, False)
    assert c.verdict == "fail" and c.to_dict()["expected"] == 1
