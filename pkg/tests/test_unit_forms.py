import json
import shutil

import pytest

from src.exceptions import CacheIntegrityError, CacheLockedError
from src.repository.forms import FORM_KEYS, MANIFEST, FormCache
from src.services.igusa import build_tower

PREC = 4


@pytest.fixture(scope="module")
def built(tmp_path_factory):
    cache = FormCache(tmp_path_factory.mktemp("built"))
    cache.build(PREC)
    return cache


@pytest.fixture()
def scratch(built, tmp_path):
    shutil.copytree(built.root, tmp_path / "cache")
    return FormCache(tmp_path / "cache")


def test_layout(built):
    directory = built.directory(PREC)
    assert directory.name == "prec-04"
    assert built.is_built(PREC)
    assert not built.is_built(PREC + 1)
    assert sorted(p.name for p in directory.iterdir()) == sorted([MANIFEST, *(f"{k}.fser" for k in FORM_KEYS)])
    manifest = built.manifest(PREC)
    assert [f.key for f in manifest.forms] == list(FORM_KEYS)
    assert {f.key: f.parity for f in manifest.forms}["psi5"] == "half-integral"
    assert {f.key: f.weight for f in manifest.forms}["phi30"] == 30


def test_load_matches_construction(built):
    tower = build_tower(PREC)
    for key in FORM_KEYS:
        form = built.load(key, PREC)
        assert form.series == tower.forms[key].series
        assert form.name == tower.forms[key].name


def test_rebuild_is_byte_identical(scratch):
    directory = scratch.directory(PREC)
    before = {p.name: p.read_bytes() for p in directory.iterdir()}
    scratch.build(PREC)
    assert {p.name: p.read_bytes() for p in directory.iterdir()} == before


def test_tampered_file(scratch):
    path = scratch.directory(PREC) / "phi35.fser"
    path.write_text(path.read_text(encoding="utf-8").replace("minorder 10", "minorder 10\n"), encoding="utf-8")
    with pytest.raises(CacheIntegrityError):
        scratch.load("phi35", PREC)


def test_missing_file_and_manifest(scratch):
    (scratch.directory(PREC) / "psi5.fser").unlink()
    with pytest.raises(CacheIntegrityError):
        scratch.load("psi5", PREC)
    (scratch.directory(PREC) / MANIFEST).write_text(json.dumps({"prec": PREC}), encoding="utf-8")
    with pytest.raises(CacheIntegrityError):
        scratch.manifest(PREC)


def test_lock(scratch):
    with scratch.lock():
        with pytest.raises(CacheLockedError):
            with scratch.lock():
                pass
        with pytest.raises(CacheLockedError):
            scratch.build(PREC)
    assert not (scratch.root / ".lock").exists()


def test_get(tmp_path, built):
    with pytest.raises(KeyError):
        built.get("chi35", PREC)
    assert built.get("psi5", PREC).weight == 5
    fresh = FormCache(tmp_path / "fresh")
    assert fresh.get("e4", PREC).series == built.load("e4", PREC).series
    assert fresh.is_built(PREC)
