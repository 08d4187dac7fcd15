"""Command-line behaviour: exit codes, JSON report shape on stdout,
human lines on stderr, file round trips, and determinism."""

import json

import pytest

from braceforge import catalog
from braceforge.cli import main

IDENTITY_TRIPLE_2x2 = {"nu": [[0, 1], [0, 1]], "mu": [[0, 1], [0, 1]],
                       "sigma": [[0, 1], [0, 1]]}
NEGATION_TRIPLE_2x3 = {"nu": [[0, 1, 2], [0, 2, 1]], "mu": [[0, 1, 2], [0, 2, 1]],
                       "sigma": [[0, 1, 2], [0, 2, 1]]}
ZERO_TRIPLET_2x2 = {"chi": IDENTITY_TRIPLE_2x2,
                    "beta": [[0, 0], [0, 0]], "tau": [[0, 0], [0, 0]]}
AXIOM_FAIL_BRACE = {
    "n": 4,
    "add": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]],
    "circ": [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]],
}


def _write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(catalog.dumps_payload(payload), encoding="utf-8")
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["schema"] == "braceforge.report/1"
    assert report["command"] == next(a for a in argv if not a.startswith("-"))
    return code, report, captured.err


def test_selftest_passes_and_is_deterministic(capsys):
    code = main(["selftest"])
    out1 = capsys.readouterr()
    assert code == 0
    report = json.loads(out1.out)
    assert report["ok"] is True
    assert len(report["checks"]) == 9
    assert all(c["ok"] for c in report["checks"])
    assert out1.err.count("PASS") == 9
    code = main(["selftest"])
    out2 = capsys.readouterr()
    assert code == 0 and out2.out == out1.out


def test_example_exit_codes(capsys):
    code, report, err = _run(capsys, ["example", "2"])
    assert code == 0 and report["order"] == 24
    assert report["erratum_candidates"] == []

    for which, expected_errata in ((3, 1), (4, 1), (5, 2)):
        code = main(["example", str(which)])
        captured = capsys.readouterr()
        report = json.loads(captured.out)
        assert code == 2
        assert len(report["erratum_candidates"]) == expected_errata
        assert "erratum candidate:" in captured.err

    for argv in (["example", "7"], ["example", "2", "--p", "1"],
                 ["example", "3", "--n", "3"]):
        code = main(argv)
        captured = capsys.readouterr()
        report = json.loads(captured.out)
        assert code == 4 and report["error"] == "input"


def test_missing_file_is_input_error(capsys):
    code = main(["validate-group", "/nonexistent/g.json"])
    report = json.loads(capsys.readouterr().out)
    assert code == 4 and report["error"] == "input"


def test_law_failure_reports_witness(tmp_path, capsys):
    f = _write(tmp_path, "bad.json", AXIOM_FAIL_BRACE)
    code = main(["validate", f])
    report = json.loads(capsys.readouterr().out)
    assert code == 2
    assert report["error"] == "assertion"
    assert report["witness"] == {"a": 1, "b": 1, "c": 1}


def test_validate_group_info(tmp_path, capsys, Z2, flip4):
    from braceforge.groups import cyclic_group

    g = _write(tmp_path, "z6.json", catalog.group_payload(cyclic_group(6)))
    code = main(["validate-group", g])
    report = json.loads(capsys.readouterr().out)
    assert code == 0 and report["description"] == "Z6" and report["abelian"]

    b = _write(tmp_path, "z2.json", catalog.brace_payload(Z2))
    code = main(["validate", b])
    report = json.loads(capsys.readouterr().out)
    assert code == 0 and report["trivial"] is True

    fb = _write(tmp_path, "flip4.json", catalog.brace_payload(flip4))
    code = main(["info", fb])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["socle"] == [0, 2] and report["annihilator"] == [0, 2]
    assert report["autb_order"] == 2 and report["trivial"] is False

    # identity away from index 0 is repaired with a warning, not an error
    shifted = {"n": 3, "table": [[2, 0, 1], [0, 1, 2], [1, 2, 0]]}
    sg = _write(tmp_path, "shifted.json", shifted)
    code = main(["validate-group", sg])
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert code == 0 and report["warnings"] and "warning:" in captured.err


def test_semidirect_then_wells_check(tmp_path, capsys, Z2, Z3):
    h = _write(tmp_path, "h.json", catalog.brace_payload(Z2))
    i = _write(tmp_path, "i.json", catalog.brace_payload(Z3))
    t = _write(tmp_path, "t.json", NEGATION_TRIPLE_2x3)
    out = str(tmp_path / "ext.json")
    code = main(["semidirect", h, i, t, "-o", out])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["order"] == 6 and report["full_sweep"] is True
    assert report["add"] == "S3" and report["circ"] == "S3"
    assert report["output"] == out

    code = main(["wells-check", out])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["exact"] and report["psi_bijective"]
    assert report["kernel_rho_order"] == 3 and report["ker_omega_order"] == 2


def test_enumerate_split(tmp_path, capsys, Z2, Z3):
    h = _write(tmp_path, "h.json", catalog.brace_payload(Z2))
    i = _write(tmp_path, "i.json", catalog.brace_payload(Z3))
    code = main(["enumerate-split", h, i])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["count"] == 6 and report["identity_mu_count"] == 2
    assert len(report["triples"]) == 6

    code = main(["--budget", "5", "enumerate-split", h, i])
    report = json.loads(capsys.readouterr().out)
    assert code == 3 and report["error"] == "budget"


def test_build_ext_and_classify(tmp_path, capsys, Z2):
    h = _write(tmp_path, "h.json", catalog.brace_payload(Z2))
    i = _write(tmp_path, "i.json", catalog.brace_payload(Z2))
    t = _write(tmp_path, "t.json", ZERO_TRIPLET_2x2)
    code = main(["--jobs", "4", "build-ext", h, i, t])
    report = json.loads(capsys.readouterr().out)
    assert code == 0 and report["order"] == 4
    assert "extension" in report  # no -o: payload lands in the report

    code = main(["classify-ext", h, i])
    out1 = capsys.readouterr().out
    report = json.loads(out1)
    assert code == 0
    assert report["coupling_count"] == 1
    assert report["total_extensions"] == 12 and report["total_classes"] == 4
    assert report["couplings"][0]["class_sizes"] == [3, 3, 3, 3]
    code = main(["classify-ext", h, i])
    assert capsys.readouterr().out == out1  # deterministic output


def test_cohomology_command(tmp_path, capsys, Z2, flip4):
    h = _write(tmp_path, "h.json", catalog.brace_payload(Z2))
    i = _write(tmp_path, "i.json", catalog.brace_payload(Z2))
    chi = _write(tmp_path, "chi.json", IDENTITY_TRIPLE_2x2)
    code = main(["cohomology", h, i, chi])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert (report["z2_order"], report["b2_order"], report["h2_order"],
            report["z1_order"]) == (4, 1, 4, 2)
    assert len(report["h2_representatives"]) == 4

    # non-trivial coefficients are rejected unless --ann restricts them first
    fb = _write(tmp_path, "flip4.json", catalog.brace_payload(flip4))
    chi4 = _write(tmp_path, "chi4.json", {
        "nu": [[0, 1, 2, 3]] * 2, "mu": [[0, 1, 2, 3]] * 2,
        "sigma": [[0, 1, 2, 3]] * 2,
    })
    code = main(["cohomology", h, fb, chi4])
    report = json.loads(capsys.readouterr().out)
    assert code == 2 and report["error"] == "assertion"

    code = main(["cohomology", h, fb, chi4, "--ann"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["annihilator"] == [0, 2]
    assert (report["z2_order"], report["b2_order"], report["h2_order"],
            report["z1_order"]) == (4, 1, 4, 2)

    # shape mismatch between the triple and the pair of braces
    code = main(["cohomology", h, i, chi4])
    report = json.loads(capsys.readouterr().out)
    assert code == 4 and report["error"] == "input"


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == "braceforge 1.0.0"
