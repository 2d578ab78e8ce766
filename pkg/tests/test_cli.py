import json
import shutil
import subprocess
import sys

import pytest

from hurwitz_sos.certificate import (
    bundled_path,
    certificate_to_json,
    bundled_certificate,
    load_certificate,
    verify_certificate,
)
from hurwitz_sos.cli import (
    EXIT_FAIL,
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    SEED_ENV,
    main,
)

THREE_WORD_ANSATZ = {
    "p": 7,
    "r": 3,
    "blocks": [
        {"prefix": "b", "suffix": None, "basis": ["AAB", "ABA", "BAA"]}
    ],
}


@pytest.fixture
def three_word_ansatz(tmp_path):
    path = tmp_path / "ansatz.json"
    path.write_text(json.dumps(THREE_WORD_ANSATZ))
    return str(path)


@pytest.fixture(autouse=True)
def clean_seed_env(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)


# ------------------------------------------------------------------ expand

def test_expand_text(capsys):
    assert main(["expand", "-p", "7", "-r", "3"]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out == [
        "AAAABBB 7",
        "AAABABB 7",
        "AAABBAB 7",
        "AABAABB 7",
        "AABABAB 7",
    ]


def test_expand_json(capsys):
    assert main(["expand", "-p", "6", "-r", "3", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"AAABBB": 6, "AABABB": 6, "AABBAB": 6, "ABABAB": 2}


def test_expand_bad_args(capsys):
    assert main(["expand", "-p", "3", "-r", "9"]) == EXIT_USAGE
    assert "error" in capsys.readouterr().err
    assert main(["expand", "-p", "3"]) == EXIT_USAGE


# ------------------------------------------------------------------ verify

def test_verify_bundled_ok(capsys):
    assert main(["verify", "--cert", bundled_path("p7r3.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.strip().endswith("ok")
    assert "matched: true" in out and "psd: true" in out


def test_verify_json_doc(capsys):
    code = main(
        ["verify", "--cert", bundled_path("p7r2.json"), "--format", "json"]
    )
    assert code == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True
    assert doc["p"] == 7 and doc["r"] == 2
    assert doc["residual"] == {}


def test_verify_residual_failure(tmp_path, capsys):
    doc = certificate_to_json(bundled_certificate("p7r3.json"))
    # perturb one diagonal entry: breaks matching but stays PSD
    doc["blocks"][0]["gram"][0][0] = {"re": [8, 1], "im": [0, 1]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["verify", "--cert", str(path)]) == EXIT_FAIL
    out = capsys.readouterr().out
    assert "matched: false" in out
    assert "AABAABB 1" in out
    assert out.strip().endswith("FAILED")


def test_verify_non_psd_failure(tmp_path, capsys):
    doc = certificate_to_json(bundled_certificate("p7r1.json"))
    doc["blocks"][0]["gram"][0][0] = {"re": [-7, 1], "im": [0, 1]}
    path = tmp_path / "neg.json"
    path.write_text(json.dumps(doc))
    assert main(["verify", "--cert", str(path)]) == EXIT_FAIL
    assert "witness" in capsys.readouterr().out


def test_verify_missing_file(capsys):
    assert main(["verify", "--cert", "/nonexistent/c.json"]) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_verify_malformed_file(tmp_path, capsys):
    path = tmp_path / "trunc.json"
    path.write_text('{"p": 7,')
    assert main(["verify", "--cert", str(path)]) == EXIT_USAGE


# ------------------------------------------------------------------ search

def test_search_finds_certificate(tmp_path, three_word_ansatz, capsys):
    out_path = tmp_path / "found.json"
    code = main(
        [
            "search",
            "--ansatz",
            three_word_ansatz,
            "--cert",
            str(out_path),
            "--seed",
            "0",
        ]
    )
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "status: certificate" in out
    assert out_path.exists()
    found = load_certificate(str(out_path))
    assert verify_certificate(found).ok
    assert (found.p, found.r) == (7, 3)


def test_search_infeasible_restricted_ansatz(capsys):
    code = main(
        ["search", "--ansatz", bundled_path("p6r3_restricted_ansatz.json")]
    )
    assert code == EXIT_INFEASIBLE
    out = capsys.readouterr().out
    assert "status: infeasible" in out
    assert "witness" in out and "-4" in out


def test_search_infeasible_json(capsys):
    code = main(
        [
            "search",
            "--ansatz",
            bundled_path("p6r3_restricted_ansatz.json"),
            "--format",
            "json",
        ]
    )
    assert code == EXIT_INFEASIBLE
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "infeasible"
    assert doc["witness"]["vector"] == [[1, 1, 0, 1], [-1, 1, 0, 1]]


def test_search_unknown(tmp_path, capsys):
    ansatz = {
        "p": 6,
        "r": 3,
        "blocks": [
            {"prefix": "a", "suffix": "b", "basis": ["AB", "BA"]},
            {"prefix": "b", "suffix": "a", "basis": ["AB", "BA"]},
        ],
    }
    path = tmp_path / "two.json"
    path.write_text(json.dumps(ansatz))
    code = main(["search", "--ansatz", str(path), "--max-iter", "6"])
    assert code == EXIT_UNKNOWN
    assert "status: unknown" in capsys.readouterr().out


def test_search_unreachable_is_infeasible(tmp_path, capsys):
    ansatz = {
        "p": 7,
        "r": 3,
        "blocks": [{"prefix": "b", "suffix": None, "basis": ["AAB"]}],
    }
    path = tmp_path / "thin.json"
    path.write_text(json.dumps(ansatz))
    assert main(["search", "--ansatz", str(path)]) == EXIT_INFEASIBLE
    assert "infeasible" in capsys.readouterr().err


def test_search_flag_conflicts(three_word_ansatz, capsys):
    code = main(["search", "--ansatz", three_word_ansatz, "-p", "6"])
    assert code == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_search_needs_p_and_r(tmp_path, capsys):
    path = tmp_path / "bare.json"
    path.write_text(
        json.dumps(
            {"blocks": [{"prefix": "b", "suffix": None, "basis": ["AAB"]}]}
        )
    )
    assert main(["search", "--ansatz", str(path)]) == EXIT_USAGE


def test_search_shape_mismatch(tmp_path, capsys):
    path = tmp_path / "mismatch.json"
    path.write_text(
        json.dumps(
            {"blocks": [{"prefix": "b", "suffix": None, "basis": ["AAB"]}]}
        )
    )
    assert main(["search", "--ansatz", str(path), "-p", "6", "-r", "3"]) == EXIT_USAGE


def test_search_env_seed_matches_flag(tmp_path, three_word_ansatz, monkeypatch, capsys):
    code = main(
        ["search", "--ansatz", three_word_ansatz, "--seed", "5", "--format", "json"]
    )
    assert code == EXIT_OK
    by_flag = json.loads(capsys.readouterr().out)
    monkeypatch.setenv(SEED_ENV, "5")
    code = main(["search", "--ansatz", three_word_ansatz, "--format", "json"])
    assert code == EXIT_OK
    by_env = json.loads(capsys.readouterr().out)
    assert by_flag == by_env


def test_bad_env_seed(three_word_ansatz, monkeypatch, capsys):
    monkeypatch.setenv(SEED_ENV, "not-a-number")
    assert main(["search", "--ansatz", three_word_ansatz]) == EXIT_USAGE
    assert SEED_ENV in capsys.readouterr().err


# ------------------------------------------------------------------ validate

def test_validate_ok(capsys):
    code = main(
        [
            "validate",
            "--cert",
            bundled_path("p7r3.json"),
            "--trials",
            "3",
            "--dims",
            "1,2",
        ]
    )
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "trials passed" in out
    assert "scalar(2,3)" in out


def test_validate_json(capsys):
    code = main(
        [
            "validate",
            "--cert",
            bundled_path("p7r0.json"),
            "--trials",
            "2",
            "--dims",
            "2",
            "--format",
            "json",
        ]
    )
    assert code == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["failed"] == 0
    assert len(doc["rows"]) == 2 + 2  # scalar + identity + two trials


def test_validate_rejects_broken_certificate(tmp_path, capsys):
    doc = certificate_to_json(bundled_certificate("p7r3.json"))
    doc["blocks"][0]["gram"][0][0] = {"re": [8, 1], "im": [0, 1]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["validate", "--cert", str(path)]) == EXIT_FAIL
    assert "failed exact verification" in capsys.readouterr().err


def test_validate_bad_dims(capsys):
    code = main(
        ["validate", "--cert", bundled_path("p7r3.json"), "--dims", "2,x"]
    )
    assert code == EXIT_USAGE


# ------------------------------------------------------------------ bmv-check

def test_bmv_check_ok(capsys):
    code = main(["bmv-check", "-p", "5", "--trials", "6", "--dims", "2,3"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "6/6 trials passed" in out


def test_bmv_check_json(capsys):
    code = main(
        ["bmv-check", "-p", "6", "--trials", "4", "--format", "json"]
    )
    assert code == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["p"] == 6
    assert doc["summary"]["trials"] == 4
    assert all(row["passed"] for row in doc["rows"])


def test_bmv_check_bad_p(capsys):
    assert main(["bmv-check", "-p", "0", "--trials", "1"]) == EXIT_USAGE


# ------------------------------------------------------------------ parser

def test_unknown_subcommand():
    assert main(["frobnicate"]) == EXIT_USAGE


def test_help_exits_zero():
    assert main(["--help"]) == 0


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hurwitz_sos.cli", "expand", "-p", "5", "-r", "2", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"AABAB": 5, "AAABB": 5}


@pytest.mark.skipif(shutil.which("hurwitz-sos") is None, reason="script not on PATH")
def test_console_script():
    out = subprocess.run(
        ["hurwitz-sos", "expand", "-p", "4", "-r", "2", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"AABB": 4, "ABAB": 2}
