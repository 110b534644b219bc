import pytest

from src.repository.forms import FormCache
from src.services.congruence import check_singular
from src.services.selftest import CRITERIA, run_selftest

PREC = 8


@pytest.fixture(scope="module")
def cache(tmp_path_factory):
    return FormCache(tmp_path_factory.mktemp("acceptance"))


@pytest.fixture(scope="module")
def report(cache):
    return run_selftest(PREC, cache)


@pytest.mark.parametrize("number, name", [(number, name) for number, name, _ in CRITERIA])
def test_criterion(report, number, name):
    result = report.criteria[number - 1]
    assert result.name == name
    assert result.passed, result.detail


def test_phi35_certificate_has_enough_witnesses(report, cache):
    phi35 = cache.load("phi35", PREC)
    cert = check_singular(phi35.series, 23, PREC, phi35.name)
    assert cert.passed
    assert cert.witnesses_nonvacuous >= 100
    assert cert.d_f == 4


def test_corrupted_cache_fails_criteria(report, cache, tmp_path):
    corrupted = FormCache(tmp_path)
    corrupted.build(4)
    path = corrupted.directory(4) / "phi35.fser"
    path.write_text(path.read_text(encoding="utf-8") + "\n", encoding="utf-8")
    failed = {c.number for c in run_selftest(4, corrupted).criteria if not c.passed}
    assert {1, 4, 9} <= failed
    assert report.passed
