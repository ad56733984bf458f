import json
from pathlib import Path

import pytest

from bsskein import models
from bsskein.models import (
    GOLDEN_DIR,
    K_ORDER,
    SkeinIndex,
    canonical_json,
    golden_documents,
    load_fixtures,
    write_golden,
)


def test_cyclic_order():
    assert [str(k) for k in K_ORDER] == ["1", "infty", "0"]
    for k in K_ORDER:
        assert k.succ.succ.succ is k
    for s in ("infty", "inf", "∞"):
        assert SkeinIndex.parse(s) is SkeinIndex.INFTY
    with pytest.raises(ValueError):
        SkeinIndex.parse("2")


@pytest.fixture(scope="module")
def docs():
    return golden_documents()


def test_golden_file_set(docs):
    on_disk = sorted(p.name for p in Path(str(GOLDEN_DIR)).iterdir() if p.suffix == ".json")
    assert on_disk == sorted(docs)


def test_transcription_matches_golden_bytes(docs):
    for name, doc in docs.items():
        assert canonical_json(doc) == (Path(str(GOLDEN_DIR)) / name).read_text(encoding="utf-8"), name


def test_loaded_fixtures_reproduce_golden(docs):
    again = golden_documents(load_fixtures(), witnesses=False)
    for name, doc in again.items():
        assert canonical_json(doc) == canonical_json(docs[name]), name


def test_loaded_equals_transcribed(fx):
    loaded = load_fixtures()
    for k in K_ORDER:
        assert loaded.bsd(k) == fx.bsd(k)
        assert loaded.skein_map(k) == fx.skein_map(k)
        assert loaded.skein_homotopy(k) == fx.skein_homotopy(k)
    assert loaded.refinement == fx.refinement
    assert loaded.grading_table == fx.grading_table


def test_write_golden_roundtrip(tmp_path):
    paths = write_golden(tmp_path)
    assert {p.name for p in paths} == {p.name for p in Path(str(GOLDEN_DIR)).iterdir() if p.suffix == ".json"}
    fx2 = load_fixtures(tmp_path)
    assert fx2.bsd("infty") == models.bsd("infty")


def test_canonical_json_is_stable():
    obj = {"b": [1, {"z": "∞", "a": 2}], "a": 1}
    text = canonical_json(obj)
    assert text.endswith("\n") and "∞" in text
    assert canonical_json(json.loads(text)) == text


def test_accessors(fx):
    assert models.skein_map_part("0", 1) == fx.skein_map_part("0", "1")
    assert models.skein_homotopy_part("infty", "01") == fx.homotopy_parts[(SkeinIndex.INFTY, "01")]
    assert models.stabilizer("1") == fx.gradings[SkeinIndex.ONE].stabilizer
    assert models.transcribed_gradings("0").cosets == {"z1": (0, 0, 0, 0), "z2": (0, 0, 0, 0)}
    assert sorted(fx.homotopy_part_names("0")) == ["00", "01", "10", "11"]


def test_word_annotations(docs):
    entries = docs["map_finfty.json"]["table"]
    assert all("word" in e and "part" in e for e in entries)
    assert {e["part"] for e in entries} == {"0", "1"}


def test_maps_have_expected_ends(fx):
    for k in K_ORDER:
        f = fx.skein_map(k)
        assert f.source == fx.bsd(k) and f.target == fx.bsd(k.succ)
        phi = fx.skein_homotopy(k)
        assert phi.target == fx.bsd(k.succ.succ)
