"""Catalog loading, manifest runs, and the command-line surface."""

import json
import os

import numpy as np
import pytest

from pimcheck import cli
from pimcheck.catalog import (
    CatalogError,
    CatalogParseError,
    CatalogValidationError,
    load_catalog,
    parse_permutation,
)
from pimcheck.manifest import (
    ManifestEntry,
    ManifestError,
    entry_seed,
    load_manifest,
    run_manifest,
)
from pimcheck.permgrp import parse_cycles

EXPECTED_ORDERS = {
    "A5": 60,
    "A6": 360,
    "A7": 2520,
    "A8": 20160,
    "A11": 19958400,
    "A13": 3113510400,
    "S7": 5040,
    "L2(7)": 168,
    "PGL2(7)": 336,
    "L2(8)": 504,
    "L2(9)": 360,
    "L2(11)": 660,
    "L2(13)": 1092,
    "L3(4)": 20160,
    "M11": 7920,
    "M22": 443520,
    "M23": 10200960,
    "HS": 44352000,
    "J2": 604800,
    "Co3": 495766656000,
}


@pytest.fixture(scope="module")
def shipped():
    return load_catalog()


def tiny_catalog_doc():
    return {
        "format": "pimcheck-catalog-1",
        "groups": [
            {
                "name": "A5",
                "degree": 5,
                "order": 60,
                # one generator as a 1-based image list, one as cycles
                "generators": [[2, 3, 4, 5, 1], "(1 2 3)"],
                "provenance": "test fixture",
                "subgroups": [
                    {"name": "C5", "order": 5, "generators": ["(1 2 3 4 5)"]},
                    {
                        "name": "D5",
                        "order": 10,
                        "generators": ["(1 2 3 4 5)", "(2 5)(3 4)"],
                    },
                    {
                        "name": "A4",
                        "order": 12,
                        "generators": ["(1 2 3)", "(1 2)(3 4)"],
                    },
                ],
            }
        ],
    }


def tiny_manifest_doc():
    return {
        "format": "pimcheck-manifest-1",
        "entries": [
            {"group": "A5", "subgroup": "A4", "prime": 5,
             "expect_holds": True, "expect_dim": 5, "tag": "fixture"},
            {"group": "A5", "subgroup": "D5", "prime": 3,
             "expect_holds": True, "expect_dim": 6, "tag": "fixture"},
            {"group": "A5", "subgroup": "C5", "prime": 2,
             "expect_holds": True, "expect_dim": 12, "tag": "fixture"},
            {"group": "A5", "subgroup": "C5", "prime": 3,
             "expect_holds": False, "tag": "fixture"},
        ],
    }


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc, indent=1) + "\n")
    return str(path)


def test_shipped_catalog_fully_validates(shipped):
    assert len(shipped.groups) == len(EXPECTED_ORDERS)
    for name, order in EXPECTED_ORDERS.items():
        assert shipped.group(name).order == order
    assert shipped.group("HS").degree == 100
    assert shipped.group("Co3").degree == 276
    assert shipped.group("M11").degree == 11
    group, sub = shipped.resolve("A5", "C5")
    assert (group.order, sub.order) == (60, 5)
    assert len(shipped.content_hash) == 64
    assert all(c in "0123456789abcdef" for c in shipped.content_hash)
    with pytest.raises(CatalogError, match="has:"):
        shipped.group("nope")
    with pytest.raises(CatalogError, match="has:"):
        shipped.group("A5").subgroup("nope")


def test_shipped_manifest_matches_catalog(shipped):
    entries = load_manifest()
    assert len(entries) == 29
    assert len({e.entry_id for e in entries}) == 29
    for e in entries:
        if e.skip is None:
            shipped.resolve(e.group, e.subgroup)
    skipped = [e.entry_id for e in entries if e.skip is not None]
    assert skipped == ["He/S4(4).2/p7"]
    dims = {e.entry_id: e.expect_dim for e in entries}
    assert dims["HS/U3(5).2/p11"] == 176
    assert dims["Co3/McL.2/p23"] == 276
    assert dims["M23/M22/p23"] == 23
    assert dims["L3(4)/2^4.D5/p3"] == 126
    for e in entries:
        if e.tag == "negative":
            assert e.expect_holds is False and e.expect_dim is None
        else:
            assert e.expect_holds is True


def test_tiny_catalog_accepts_image_lists(tmp_path):
    cat = load_catalog(write_doc(tmp_path, "cat.json", tiny_catalog_doc()))
    a5 = cat.group("A5")
    assert a5.order == 60
    assert np.array_equal(a5.genset.gens[0], parse_cycles("(1 2 3 4 5)", 5))
    assert a5.subgroup("C5").order == 5


def test_catalog_rejects_wrong_declared_order(tmp_path):
    doc = tiny_catalog_doc()
    doc["groups"][0]["order"] = 61
    with pytest.raises(CatalogValidationError, match="'A5'.*61.*60"):
        load_catalog(write_doc(tmp_path, "cat.json", doc))
    doc = tiny_catalog_doc()
    doc["groups"][0]["subgroups"][0]["order"] = 6
    with pytest.raises(CatalogValidationError, match="'C5'"):
        load_catalog(write_doc(tmp_path, "cat.json", doc))


def test_catalog_rejects_generator_outside_parent(tmp_path):
    doc = tiny_catalog_doc()
    doc["groups"][0]["subgroups"].append(
        {"name": "C2", "order": 2, "generators": ["(1 2)"]}  # odd, not in A5
    )
    with pytest.raises(CatalogValidationError, match="not an element"):
        load_catalog(write_doc(tmp_path, "cat.json", doc))


def test_catalog_rejects_bad_json_with_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"format": "pimcheck-catalog-1", "groups": [}\n')
    with pytest.raises(CatalogParseError, match="line 1 column"):
        load_catalog(str(path))


def test_catalog_rejects_format_marker_and_duplicates(tmp_path):
    doc = tiny_catalog_doc()
    doc["format"] = "something-else"
    with pytest.raises(CatalogParseError, match="expected format"):
        load_catalog(write_doc(tmp_path, "cat.json", doc))
    doc = tiny_catalog_doc()
    doc["groups"].append(tiny_catalog_doc()["groups"][0])
    with pytest.raises(CatalogValidationError, match="appears twice"):
        load_catalog(write_doc(tmp_path, "cat.json", doc))
    doc = tiny_catalog_doc()
    doc["groups"][0]["subgroups"].append(doc["groups"][0]["subgroups"][0])
    with pytest.raises(CatalogValidationError, match="duplicate subgroup"):
        load_catalog(write_doc(tmp_path, "cat.json", doc))


def test_catalog_rejects_missing_field(tmp_path):
    doc = tiny_catalog_doc()
    del doc["groups"][0]["order"]
    with pytest.raises(CatalogParseError, match="missing field 'order'"):
        load_catalog(write_doc(tmp_path, "cat.json", doc))


def test_permutation_parsing_forms():
    assert np.array_equal(parse_permutation("(1 2)", 3, "w"), [1, 0, 2])
    assert np.array_equal(parse_permutation([2, 1, 3], 3, "w"), [1, 0, 2])
    for bad in ([2, 2, 3], [0, 1, 2], [1, 2], 7, "(1 9)"):
        with pytest.raises(CatalogParseError):
            parse_permutation(bad, 3, "w")


def test_manifest_entry_guards():
    with pytest.raises(ManifestError, match="expect_dim"):
        ManifestEntry("A5", "C5", 3, False, 5, 5, "t")
    entry = ManifestEntry("L3(4)", "2^4.D5", 3, True, 126, 5, "t")
    assert entry.entry_id == "L3(4)/2^4.D5/p3"
    assert "/" not in entry.file_stem and "(" not in entry.file_stem


def test_manifest_file_guards(tmp_path):
    doc = tiny_manifest_doc()
    doc["format"] = "nope"
    with pytest.raises(ManifestError, match="expected format"):
        load_manifest(write_doc(tmp_path, "man.json", doc))
    doc = tiny_manifest_doc()
    doc["entries"].append(doc["entries"][0])
    with pytest.raises(ManifestError, match="appears twice"):
        load_manifest(write_doc(tmp_path, "man.json", doc))
    doc = tiny_manifest_doc()
    del doc["entries"][0]["prime"]
    with pytest.raises(ManifestError, match="missing field"):
        load_manifest(write_doc(tmp_path, "man.json", doc))


def test_entry_seed_is_per_entry_and_deterministic():
    a = entry_seed(1, "A5/C5/p2")
    assert a == entry_seed(1, "A5/C5/p2")
    assert a != entry_seed(1, "A5/C5/p3")
    assert a != entry_seed(2, "A5/C5/p2")


def test_run_manifest_reports_cache_and_parallel_identity(tmp_path):
    cat = load_catalog(write_doc(tmp_path, "cat.json", tiny_catalog_doc()))
    entries = load_manifest(write_doc(tmp_path, "man.json", tiny_manifest_doc()))
    cache = str(tmp_path / "cache")
    out1, out2, out3 = (str(tmp_path / d) for d in ("o1", "o2", "o3"))

    code, results = run_manifest(entries, cat, out_dir=out1, cache_dir=cache)
    assert code == 0
    assert [r.status for r in results] == ["pass"] * 4
    assert [r.got_dim for r in results] == [5, 6, 12, None]
    names = sorted(os.listdir(out1))
    assert "summary.json" in names and len(names) == 5

    code, cached = run_manifest(entries, cat, out_dir=out2, cache_dir=cache)
    assert code == 0
    assert all(r.path.endswith("+cache") for r in cached)

    code, para = run_manifest(entries, cat, out_dir=out3, parallelism=2)
    assert code == 0
    for name in names:
        if name == "summary.json":
            continue  # summaries carry measured wall times
        with open(os.path.join(out1, name), "rb") as fh:
            first = fh.read()
        for out in (out2, out3):
            with open(os.path.join(out, name), "rb") as fh:
                assert fh.read() == first


def test_run_manifest_collects_mismatches(tmp_path):
    cat = load_catalog(write_doc(tmp_path, "cat.json", tiny_catalog_doc()))
    doc = tiny_manifest_doc()
    doc["entries"][2]["expect_dim"] = 13  # truth is 12
    entries = load_manifest(write_doc(tmp_path, "man.json", doc))
    code, results = run_manifest(entries, cat)
    assert code == 1
    assert [r.status for r in results] == ["pass", "pass", "mismatch", "pass"]
    assert "expected dim 13" in results[2].detail


def test_run_manifest_skip_and_unresolved(tmp_path):
    cat = load_catalog(write_doc(tmp_path, "cat.json", tiny_catalog_doc()))
    doc = tiny_manifest_doc()
    doc["entries"][0]["skip"] = "no data yet"
    entries = load_manifest(write_doc(tmp_path, "man.json", doc))
    out = str(tmp_path / "out")
    code, results = run_manifest(entries, cat, out_dir=out)
    assert code == 0
    assert results[0].status == "skip" and "no data yet" in results[0].detail
    assert not os.path.exists(os.path.join(out, results[0].entry.file_stem + ".json"))

    doc = tiny_manifest_doc()
    doc["entries"][0]["subgroup"] = "Q8"
    entries = load_manifest(write_doc(tmp_path, "man.json", doc))
    with pytest.raises(CatalogError):
        run_manifest(entries, cat)


@pytest.fixture()
def tiny_paths(tmp_path):
    cat = write_doc(tmp_path, "cat.json", tiny_catalog_doc())
    man = write_doc(tmp_path, "man.json", tiny_manifest_doc())
    return cat, man


def test_cli_verify_verdicts_and_exit_codes(tiny_paths, capsys):
    cat, _ = tiny_paths
    base = ["verify", "--catalog", cat, "--group", "A5"]
    assert cli.main(base + ["--subgroup", "C5", "--prime", "2"]) == 0
    assert "holds, dim Phi_1 = 12" in capsys.readouterr().out
    assert cli.main(base + ["--subgroup", "C5", "--prime", "3"]) == 0
    assert "does not hold" in capsys.readouterr().out
    assert cli.main(base + ["--subgroup", "A4", "--prime", "5", "--shortcut"]) == 0
    assert "[shortcut path" in capsys.readouterr().out

    assert cli.main(base + ["--subgroup", "Q8", "--prime", "2"]) == 2
    assert "error:" in capsys.readouterr().err
    assert cli.main(base + ["--subgroup", "C5", "--prime", "4"]) == 2
    assert "not prime" in capsys.readouterr().err
    assert cli.main(base + ["--subgroup", "C5", "--prime", "2", "--max-dim", "5"]) == 2
    assert "exceeds" in capsys.readouterr().err


def test_cli_verify_writes_canonical_json(tiny_paths, tmp_path, capsys):
    cat, _ = tiny_paths
    out = str(tmp_path / "report.json")
    assert cli.main([
        "verify", "--catalog", cat, "--group", "A5", "--subgroup", "C5",
        "--prime", "2", "--json", out,
    ]) == 0
    capsys.readouterr()
    with open(out) as fh:
        doc = json.load(fh)
    assert doc["holds"] is True
    assert doc["dim_phi1"] == 12
    assert doc["wall_time_ms"] == 0
    assert doc["path"] == "full"


def test_cli_chop_lists_factors(tiny_paths, capsys):
    cat, _ = tiny_paths
    assert cli.main([
        "chop", "--catalog", cat, "--group", "A5", "--subgroup", "C5",
        "--prime", "2",
    ]) == 0
    out = capsys.readouterr().out
    assert "dim 12" in out and "H-fixed" in out


def test_cli_rank_and_endring_oracle(tiny_paths, capsys):
    cat, _ = tiny_paths
    assert cli.main(["rank", "--catalog", cat,
                     "--group", "A5", "--subgroup", "A4"]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert cli.main(["rank", "--catalog", cat,
                     "--group", "A5", "--subgroup", "C5"]) == 0
    assert capsys.readouterr().out.strip() == "4"
    assert cli.main(["endring-oracle", "--catalog", cat, "--group", "A5",
                     "--subgroup", "C5", "--prime", "2"]) == 0
    assert "local" in capsys.readouterr().out
    assert cli.main(["endring-oracle", "--catalog", cat, "--group", "A5",
                     "--subgroup", "D5", "--prime", "2"]) == 2
    capsys.readouterr()


def test_cli_steinberg_and_suzuki(capsys):
    assert cli.main(["steinberg-margin", "--series", "E8", "--q", "2",
                     "--h-order", "72057594037927936"]) == 0
    assert "guaranteed_positive True" in capsys.readouterr().out
    assert cli.main(["steinberg-margin", "--series", "A", "--q", "4",
                     "--h-order", "10"]) == 2
    capsys.readouterr()
    assert cli.main(["suzuki-mult", "--q2", "8"]) == 0
    assert capsys.readouterr().out.strip() == "4"
    assert cli.main(["suzuki-mult", "--q2", "16"]) == 2
    capsys.readouterr()


def test_cli_run_manifest_tiny(tiny_paths, tmp_path, capsys):
    cat, man = tiny_paths
    out_dir = str(tmp_path / "reports")
    assert cli.main(["run-manifest", "--catalog", cat, "--manifest", man,
                     "--out-dir", out_dir]) == 0
    out = capsys.readouterr().out
    assert "4 entries: 4 pass, 0 skip, 0 failing" in out
    assert os.path.exists(os.path.join(out_dir, "summary.json"))


def test_cli_selftest_passes(capsys):
    assert cli.main(["selftest"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 7
    assert all(line.startswith("PASS") for line in lines)


def test_cli_usage_errors_exit_two(tiny_paths):
    for argv in ([], ["verify"], ["nonsense"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 2
    cat, _ = tiny_paths
    assert cli.main(["verify", "--catalog", cat, "--group", "A5",
                     "--subgroup", "C5", "--prime", "2", "--seed", "-1"]) == 2
    assert cli.main(["verify", "--catalog", cat, "--group", "A5",
                     "--subgroup", "C5", "--prime", "2", "--parallel", "0"]) == 2
