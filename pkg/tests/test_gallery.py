import json

from itoric.gallery.items import ITEMS, load_goldens, run_gallery


def test_every_item_has_a_golden():
    assert set(ITEMS) == set(load_goldens())


def test_gallery_matches_the_goldens():
    report = run_gallery()
    assert report.is_valid, report.error_message
    assert len(report.items) == len(ITEMS)


def test_unknown_item():
    report = run_gallery(["dual_sigma3", "no_such_item"])
    assert not report.is_valid
    assert "no_such_item" in report.error_message


def test_regenerate_writes_fresh_goldens(tmp_path):
    path = tmp_path / "goldens" / "subset.json"
    report = run_gallery(["dual_sigma3", "secondary_line"], regenerate=path)
    assert report.is_valid
    assert report.regenerated == str(path)
    fresh = json.loads(path.read_text())
    goldens = load_goldens()
    assert fresh == {name: goldens[name] for name in ("dual_sigma3", "secondary_line")}


def test_gallery_command(invoke, tmp_path):
    doc = tmp_path / "items.json"
    doc.write_text(json.dumps({"items": ["dual_sigma3", "hilbert_bases"]}))
    result = invoke(["--log-level", "error", "paper-gallery", "--in", str(doc)])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["is_valid"]
    assert [r["name"] for r in report["items"]] == ["dual_sigma3", "hilbert_bases"]


def test_gallery_command_reports_unknown_items(invoke, tmp_path):
    doc = tmp_path / "items.json"
    doc.write_text(json.dumps({"items": ["nope"]}))
    result = invoke(["--log-level", "error", "paper-gallery", "--in", str(doc)])
    assert result.exit_code == 2
