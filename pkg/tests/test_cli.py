import json

import pytest

from semigroup_absolute import golden
from semigroup_absolute.cli import main


def g(name):
    return str(golden.path(name))


def test_describe_stdout(capsys):
    assert main(["describe", g("z2")]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["absolute_dimension"] == 2


def test_describe_to_file(tmp_path, capsys):
    out = tmp_path / "d.json"
    assert main(["describe", g("tripod"), "--json", str(out)]) == 0
    assert json.loads(out.read_text())["branching"] is True
    assert "absolute dimension 1" in capsys.readouterr().out


def test_equations(capsys):
    assert main(["equations", g("z_0_6_m1")]) == 0
    assert capsys.readouterr().out.strip() == "mu(z)^7 = mu(p)*mu(m)^6"
    assert main(["equations", g("free2")]) == 0
    assert "no equations" in capsys.readouterr().out


def test_check_measure(capsys):
    assert main(["check-measure", g("z2"), "--mu", "1/4,1/4,1/4,1/4"]) == 0
    assert main(["check-measure", g("z2"), "--mu", "1/2,1/4,1/8,1/8"]) == 1
    assert "violated: mu(a)*mu(b) = mu(c)*mu(d)" in capsys.readouterr().out


@pytest.mark.parametrize("mu", ["1/2,1/2", "a,b,c,d", "1/2,1/2,1/2,-1/2", "1/2,1/4,1/4,1/4"])
def test_bad_mu_is_usage_error(mu, capsys):
    assert main(["check-measure", g("z2"), "--mu", mu]) == 2
    assert "error" in capsys.readouterr().err


def test_verify(capsys):
    assert main(["verify", g("z2"), "--mu", "1/4,1/4,1/8,3/8", "--depth", "2"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("fail (depth 2)")
    assert "ab has 1/16, cd has 3/64" in out
    assert main(["verify", g("free2"), "--mu", "1/3,2/3"]) == 0


def test_simulate(capsys):
    assert main(["simulate", g("z_pm"), "--mu", "1/2,1/2", "--steps", "4", "--trials", "500", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    main(["simulate", g("z_pm"), "--mu", "1/2,1/2", "--steps", "4", "--trials", "500", "--seed", "3"])
    assert capsys.readouterr().out == first
    assert json.loads(first)["trials"] == 500


def test_compare():
    assert main(["compare", g("z_x_z2"), g("z_c0")]) == 0
    assert main(["compare", g("z_pm"), g("z5")]) == 1


def test_usage_errors(tmp_path):
    assert main([]) == 2
    assert main(["describe", str(tmp_path / "missing.sgp")]) == 2
    bad = tmp_path / "bad.sgp"
    bad.write_text("generators: a b\nrelations: a + = b\n")
    assert main(["describe", str(bad)]) == 2
    assert main(["compare", g("z_pm"), g("z2")]) == 2
    assert main(["--help"]) == 0


def test_simulate_alt(capsys):
    assert main(["simulate", g("z_pm"), "--mu", "3/4,1/4", "--alt", "1/2,1/2",
                 "--steps", "5", "--trials", "200"]) == 0
    assert len(json.loads(capsys.readouterr().out)["llr_trend"]) == 5
