import json

import pytest

from ainfkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_check_ainf_pass(fixture_path, capsys):
    code, report = run(capsys, "check-ainf", fixture_path("derham_t1.json"))
    assert code == 0
    assert report["status"] == "PASS"


def test_check_ainf_mutated_fails(fixture_path, capsys):
    code, report = run(capsys, "check-ainf", fixture_path("derham_t1.json"),
                       "--mutate", "flip:m1:0/0:f1;d->f1;d1")
    assert code == 1
    assert report["counterexamples"]


def test_unknown_mutation_id_is_input_error(fixture_path, capsys):
    code = main(["check-ainf", fixture_path("derham_t1.json"),
                 "--mutate", "flip:m1:0/0:nope->nope"])
    assert code == 2


def test_missing_file_is_input_error(capsys):
    assert main(["check-ainf", "/nonexistent.json"]) == 2


def test_bad_format_is_input_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"format": "other/9"}')
    assert main(["check-ainf", str(p)]) == 2
    p.write_text("{not json")
    assert main(["check-ainf", str(p)]) == 2


def test_subalgebra_and_commuting(fixture_path, capsys):
    for emb in ("A", "B"):
        code, report = run(capsys, "check-subalgebra",
                           fixture_path("kunneth_derham.json"),
                           "--embedding", emb)
        assert code == 0 and report["status"] == "PASS"
    code, report = run(capsys, "check-commuting",
                       fixture_path("kunneth_derham.json"))
    assert code == 0 and report["status"] == "PASS"


def test_mc_defect_and_box_product(fixture_path, capsys):
    code, report = run(capsys, "mc-defect", fixture_path("gapped_product.json"))
    assert code == 0
    assert report["remainder"] == {}
    code, report = run(capsys, "box-product",
                       fixture_path("gapped_product.json"))
    assert code == 0 and report["potential_additive"] is True


def test_cohomology_and_hf(fixture_path, capsys):
    code, report = run(capsys, "cohomology", fixture_path("derham_t2.json"))
    assert code == 0
    assert report["dims"] == {"0": 1, "1": 2, "2": 1}
    code, report = run(capsys, "hf", fixture_path("gapped_product.json"))
    assert code == 0 and report["dim"] == 1


def test_barcode_and_hf_kunneth(fixture_path, capsys):
    code, report = run(capsys, "barcode", fixture_path("barcode_simple.json"))
    assert code == 0 and report["bars"] == ["1"]
    code, report = run(capsys, "check-hf-kunneth",
                       fixture_path("gapped_product.json"))
    assert code == 0 and report["multiplicative"] is True


def test_isotopy_commands(fixture_path, capsys):
    code, report = run(capsys, "check-isotopy",
                       fixture_path("isotopy_extend.json"))
    assert code == 0 and report["status"] == "PASS"
    code, report = run(capsys, "extend", fixture_path("isotopy_extend.json"))
    assert code == 0
    assert report["new_constants"]["m1:2/0:x->z"] == "-7"
    code, report = run(capsys, "extend", fixture_path("isotopy_chain.json"))
    assert code == 0 and report["cutoff"] == "3"


def test_commuting_isotopy_command(fixture_path, capsys):
    code, report = run(capsys, "check-commuting-isotopy",
                       fixture_path("commuting_isotopy.json"))
    assert code == 0 and report["status"] == "PASS"
    code, _ = run(capsys, "check-commuting-isotopy",
                  fixture_path("commuting_isotopy.json"),
                  "--mutate", "flip:ic0:1/0:->xA|eB")
    assert code == 1


def test_torus_suite_command(capsys):
    code, report = run(capsys, "torus-suite", "--seed", "7", "--trials", "5")
    assert code == 0
    assert len(report["groups"]) == 8


def test_report_flag_writes_identical_bytes(fixture_path, tmp_path, capsys):
    outs = []
    for i in range(2):
        dest = tmp_path / f"r{i}.json"
        code, _ = run(capsys, "check-unit", fixture_path("derham_t1.json"),
                      "--report", str(dest))
        assert code == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1]


def test_cutoff_flag(fixture_path, capsys):
    code, report = run(capsys, "check-ainf",
                       fixture_path("gapped_product.json"),
                       "--cutoff", "3/2")
    assert code == 0 and report["status"] == "PASS"
