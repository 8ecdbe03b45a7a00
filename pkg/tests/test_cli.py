import io
import json

import pytest

import core.corpus as corpus_module
from hyperquadric import EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE, main

EXAMPLE = json.dumps({
    "source": {"r": 1, "s": 1, "t": 0},
    "target": {"r": 2, "s": 2, "t": 1},
    "components": ["z1^2", "z2^2", "z1*z2", "z2^2", "z2^2"],
})
DIAGONAL = json.dumps({
    "source": {"r": 1, "s": 1},
    "target": {"r": 1, "s": 1},
    "components": ["z1", "2*z2"],
})


def test_classify_text(capsys):
    assert main(["classify", EXAMPLE]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Verdict: QuasiStandard" in out
    assert "A ≅ P^{1,1,0}: span{e1, e3}" in out
    assert "B ≅ P^{1,1,1}: span{e2, e4, e5}" in out
    assert "Gram scalar: 1" in out


def test_classify_json_is_deterministic(capsys):
    assert main(["classify", EXAMPLE, "--format", "json", "--seed", "4"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["classify", EXAMPLE, "--format", "json", "--seed", "4"]) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert data["schema"] == 1
    assert data["command"] == "classify"
    assert data["verdict"] == "QuasiStandard"
    assert data["A"]["abc"] == [1, 1, 0]


def test_ortho_test(capsys):
    assert main(["ortho-test", DIAGONAL]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Orthogonal: false" in out
    assert main(["ortho-test", EXAMPLE]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Orthogonal: true" in out
    assert "k = 1, rho = z1*w1" in out


def test_map_from_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"map": json.loads(EXAMPLE)})))
    assert main(["ortho-test", "-", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["rho"] == "z1*w1"


def test_decompose(capsys):
    assert main(["decompose", EXAMPLE, "--mode", "linear", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["found"] is True
    assert data["mode"] == "linear"
    assert data["B"]["abc"] == [1, 1, 1]


def test_verify_accepts_classify_output(tmp_path, capsys):
    witness = tmp_path / "witness.json"
    assert main(["classify", EXAMPLE, "--out", str(witness)]) == EXIT_OK
    capsys.readouterr()
    assert main(["verify", EXAMPLE, "--witness", str(witness)]) == EXIT_OK
    assert "Quasi-standard witness verified: true" in capsys.readouterr().out

    data = json.loads(witness.read_text(encoding="utf-8"))
    swapped = json.dumps({"A": data["B"], "B": data["A"]})
    assert main(["verify", EXAMPLE, "--witness", swapped]) == EXIT_COUNTEREXAMPLE
    assert "verified: false" in capsys.readouterr().out


def test_planes(capsys):
    chart = json.dumps({"sig": {"r": 1, "s": 1}, "A": [[["0", "1"]]]})
    assert main(["planes", "--chart", chart, "--map", EXAMPLE]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Kind: Null" in out
    assert "projective dim 0" in out

    assert main(["planes", "--map", EXAMPLE, "--k", "1", "--symbolic", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["sampled_dim"] == 2
    assert data["generic_dim"] == 2


def test_fuzz_single_theorem(monkeypatch, capsys):
    monkeypatch.setenv("HYPERQUADRIC_SEED", "3")
    code = main(["fuzz", "--theorem", "less", "--max-dim", "4", "--max-degree", "2", "--format", "json"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["seed"] == 3
    assert list(data["reports"]) == ["Less"]
    assert "counterexamples" not in data["reports"]["Less"]


@pytest.mark.parametrize("argv, message", [
    (["classify", json.dumps({"source": {"r": 1, "s": 1}, "target": {"r": 1, "s": 1},
                              "components": ["z1", "z2 +* z1"]})], "line 1, column"),
    (["classify", "missing-map.json"], "cannot read"),
    (["classify", "{broken"], "invalid JSON"),
    (["fuzz", "--theorem", "Fermat"], "Unknown theorem"),
    (["planes"], "planes needs"),
])
def test_input_errors_exit_with_usage(argv, message, capsys):
    assert main(argv) == EXIT_USAGE
    assert message in capsys.readouterr().err


def test_argparse_errors_exit_with_usage(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["classify"])
    assert excinfo.value.code == EXIT_USAGE


def test_fuzz_plane_trials_reach_the_plane_checkers(capsys):
    code = main(["fuzz", "--theorem", "boundary", "--seed", "9", "--max-dim", "3", "--max-degree", "2",
                 "--plane-trials", "2", "--format", "json"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["plane_trials"] == 2
    report = data["reports"]["Boundary"]
    assert report["satisfied"] > 0
    planes = sum(report["details"].get(key, 0) for key in ("null-plane", "random-plane", "indeterminate-plane"))
    assert planes == 2 * report["satisfied"]


def test_fuzz_builds_the_default_corpus_once(monkeypatch, capsys):
    calls = []
    build = corpus_module.build_default_corpus

    def counting(config=None):
        calls.append(config['seed'])
        return build(config)

    monkeypatch.setattr(corpus_module, "build_default_corpus", counting)
    code = main(["fuzz", "--seed", "2", "--max-dim", "2", "--max-degree", "2", "--sign-trials", "40",
                 "--pair-trials", "40", "--format", "json"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["reports"]) == 10
    assert calls == [2]
