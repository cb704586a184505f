import json

import pytest

from symstab.catalog import CatalogError, build_model, default_catalog_path, load_catalog


def write(tmp_path, doc, name="cat.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return path


def shipped():
    return json.loads(default_catalog_path().read_text(encoding="utf-8"))


def test_default_catalog_contents(catalog):
    ids = [e.id for e in catalog]
    assert len(catalog) >= 17
    assert len(ids) == len(set(ids))
    for sid in ("SU(3)", "SU(4)", "Sp(2)", "Sp(3)", "Spin(5)", "Spin(6)", "SU(4)/Sp(2)", "SU(6)/Sp(3)",
                "Sp(2)/Sp(1)xSp(1)", "Sp(3)/Sp(2)xSp(1)", "E6/F4", "F4/Spin(9)", "H3", "H4", "H5"):
        assert sid in ids
    assert {f"S{n}" for n in range(3, 9)} <= set(ids)


def test_every_entry_builds_with_catalog_dimension(catalog):
    for e in catalog:
        assert build_model(e).n == e.dim


def test_five_sphere_member_is_recorded_degenerate(catalog):
    e = catalog.get("SU(4)/Sp(2)")
    assert e.expected_verdict == "StableConformalDegenerate"
    assert "sphere" in e.note


def test_ratio_on_classical_family_rejected(tmp_path):
    doc = shipped()
    doc["entries"][0]["lambda1_over_s"] = 0.2
    doc["entries"][0]["provenance"] = "x"
    with pytest.raises(CatalogError, match="exceptional/hyperbolic"):
        load_catalog(write(tmp_path, doc))


def test_missing_provenance_rejected(tmp_path):
    doc = shipped()
    e6 = next(e for e in doc["entries"] if e["id"] == "E6/F4")
    del e6["provenance"]
    with pytest.raises(CatalogError, match="provenance"):
        load_catalog(write(tmp_path, doc))


@pytest.mark.parametrize("text", ["", "   \n", "{not json", json.dumps({"entries": []}),
                                  json.dumps({"entries": [{"id": "S3"}]})])
def test_malformed_files_rejected(tmp_path, text):
    with pytest.raises(CatalogError):
        load_catalog(write(tmp_path, text))


def test_missing_file_rejected(tmp_path):
    with pytest.raises(CatalogError):
        load_catalog(tmp_path / "absent.json")


def test_bad_expected_verdict_rejected(tmp_path):
    doc = shipped()
    doc["entries"][0]["expectedVerdict"] = "Inconclusive"
    with pytest.raises(CatalogError):
        load_catalog(write(tmp_path, doc))


def test_dimension_mismatch_rejected(tmp_path):
    doc = shipped()
    doc["entries"][0]["dim"] = 9
    with pytest.raises(CatalogError, match="dim"):
        load_catalog(write(tmp_path, doc))


def test_duplicate_ids_rejected(tmp_path):
    doc = shipped()
    doc["entries"].append(doc["entries"][-1])
    with pytest.raises(CatalogError, match="duplicate"):
        load_catalog(write(tmp_path, doc))


def test_weights_for_unknown_id_rejected(tmp_path):
    doc = {"entries": [e for e in shipped()["entries"] if e["id"] == "S3"],
           "spherical_weights": {"SU(3)": {"root_system": "A2", "generators": [[1, 0], [0, 1]]}}}
    with pytest.raises(CatalogError, match="unknown"):
        load_catalog(write(tmp_path, doc))


def test_single_sphere_catalog(tmp_path):
    doc = {"entries": [e for e in shipped()["entries"] if e["id"] == "S3"]}
    cat = load_catalog(write(tmp_path, doc))
    assert [e.id for e in cat] == ["S3"]
