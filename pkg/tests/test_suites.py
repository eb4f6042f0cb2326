import pytest

from qsl2hom.scalars import make_field
from qsl2hom.suites import GROUPS, SUITES, run_all, run_suite

F = make_field("generic")


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_on_small_run(name):
    res = run_suite(name, F, cases=25, seed=3)
    assert res.ok, res.first_failure
    assert res.to_dict()["verdict"] == "pass"


def test_specialized_mode_suites():
    for res in run_all(make_field("2"), cases=15, seed=1, names=["associativity", "hopf", "ff"]):
        assert res.ok, res.first_failure


def test_groups_cover_all_suites():
    grouped = {n for names in GROUPS.values() for n in names}
    assert grouped == set(SUITES)


def test_seed_determines_run():
    a = run_suite("bb", F, cases=10, seed=5).to_dict()
    b = run_suite("bb", F, cases=10, seed=5).to_dict()
    assert a == b
