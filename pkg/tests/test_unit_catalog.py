import json
import unittest
from fractions import Fraction

import pytest

from src.exceptions import CatalogError, LabelError
from src.repository.catalog import (
    builtin_catalog,
    display_name,
    dumps_catalog,
    get_catalog,
    load_catalog,
    loads_catalog,
    product_label,
    root_system_data,
    signature_n,
)


def _entry(**changes):
    entry = {
        "lattice": "2U+A1",
        "n": 3,
        "forms": [{"name": "Psi5", "weight": 5}, {"name": "Phi30", "weight": 30}],
        "claims": [{"product": ["Phi30"], "prime": 59, "source": "strict"}],
    }
    entry.update(changes)
    return entry


class TestSignature(unittest.TestCase):

    def test_labels(self):
        self.assertEqual(signature_n("2U+A1"), 3)
        self.assertEqual(signature_n("2U(2)+A2"), 4)
        self.assertEqual(signature_n("2U + D11"), 13)
        self.assertEqual(signature_n("2U+E8(2)"), 10)
        self.assertEqual(signature_n("2U+D8'(2)"), 10)
        self.assertEqual(signature_n("2U⊕2A3"), 8)

    def test_bad_labels(self):
        for label in ("2U+B3", "U+A1", "2U+D3", "2U+A1'", "2U+E9", "2U+A0", "2U+D"):
            with self.assertRaises(LabelError, msg=label):
                signature_n(label)


class TestNames(unittest.TestCase):

    def test_display(self):
        self.assertEqual(display_name("Psi5"), "Ψ5")
        self.assertEqual(display_name("chi10"), "χ10")
        self.assertEqual(display_name("G4"), "G4")
        self.assertEqual(product_label(["Psi5", "Phi30"]), "Ψ5Φ30")


def test_root_system_data():
    e8 = root_system_data("E8")
    assert (e8.d, e8.h, e8.weyl_norm) == (8, 30, 310)
    assert root_system_data("E6").weyl_norm == 39
    assert root_system_data("E7").weyl_norm == Fraction(399, 4)
    with pytest.raises(LabelError):
        root_system_data("D4")


def test_builtin_catalog():
    entries = builtin_catalog()
    assert len(entries) == 22
    assert sum(len(e.claims) for e in entries) >= 50
    d11 = next(e for e in entries if e.lattice == "2U+D11")
    assert d11.rhs_constant == 1950
    assert d11.is_identity
    assert d11.claims[1].product == ["Psi1", "Phi142"]
    entries[0].claims.clear()
    assert builtin_catalog()[0].claims


def test_catalog_round_trip():
    entries = builtin_catalog()
    text = dumps_catalog(entries)
    assert "Ψ" not in text
    assert loads_catalog(text) == entries


@pytest.mark.parametrize(
    "document",
    [
        "not json",
        json.dumps([_entry(n=4)]),
        json.dumps([_entry(lattice="2U+B1")]),
        json.dumps([_entry(claims=[{"product": ["Psi7"], "prime": 5, "source": "strict"}])]),
        json.dumps([_entry(claims=[{"product": ["Phi30"], "prime": 9, "source": "strict"}])]),
        json.dumps([_entry(claims=[{"product": ["Phi30"], "prime": 5, "source": "guess"}])]),
        json.dumps([_entry(rhs_constant="3", root_system="E6")]),
        json.dumps([_entry(rhs_constant="0")]),
        json.dumps([_entry(forms=[{"name": "Psi5", "weight": 5}, {"name": "Psi5", "weight": 30}])]),
    ],
)
def test_invalid_catalogs(document):
    with pytest.raises(CatalogError):
        loads_catalog(document)


def test_catalog_override(tmp_path):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps([_entry()]), encoding="utf-8")
    entries = get_catalog(path)
    assert len(entries) == 1
    assert entries[0].claims[0].key == (frozenset({"Phi30"}), 59)
    with pytest.raises(CatalogError):
        load_catalog(tmp_path / "missing.json")
