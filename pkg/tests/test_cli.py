import json

from reflex import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_lattice_command(capsys):
    code, out = run(capsys, "lattice", "U + A1")
    assert code == 0
    payload = json.loads(out)
    assert payload["rank"] == 3
    assert payload["signature"] == [2, 1]
    assert payload["det"] == "-2"


def test_lattice_descriptor_error(capsys):
    code, _ = run(capsys, "lattice", "Q17 + nonsense")
    assert code == 2


def test_rootsys_command(capsys):
    code, out = run(capsys, "rootsys", "D4")
    assert code == 0
    payload = json.loads(out)
    assert payload["coxeter_numbers"] == [6]
    assert payload["positive_roots"] == 12


def test_vinberg_command(capsys, tmp_path):
    dot = tmp_path / "chamber.dot"
    code, out = run(capsys, "--format", "json", "vinberg", "U + A1",
                    "--dot", str(dot))
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "complete-elliptic"
    assert len(payload["roots"]) == 3
    assert payload["weyl"]["rho_norm"] == "-23/2"
    assert dot.read_text().startswith("graph")


def test_classify_filter_command(capsys):
    code, out = run(capsys, "classify", "run", "--filter", "S_3,2")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["failed"] == 0


def test_lift_command(capsys):
    code, out = run(capsys, "lift", "delta_D2", "--n-max", "2",
                    "--m-max", "2")
    assert code == 0
    assert "n=1" in out and "m=1" in out


def test_borcherds_phi0_command(capsys):
    code, out = run(capsys, "borcherds", "phi0", "--host", "24A1",
                    "--indices", "0", "--n-max", "1")
    assert code == 0
    assert "c=70" in out


def test_verify_command(capsys):
    code, out = run(capsys, "verify", "denominator", "U + D2",
                    "--orders", "2,2")
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["status"] == "pass"


def test_output_deterministic(capsys):
    _c1, out1 = run(capsys, "vinberg", "U(2) + A2")
    _c2, out2 = run(capsys, "vinberg", "U(2) + A2")
    assert out1 == out2
