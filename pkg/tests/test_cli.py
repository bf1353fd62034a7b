"""CLI front end: commands, exit codes, deterministic output."""

import json

import pytest

from turanlab.cli import main
from turanlab.hypercore import from_khg
from turanlab.morphisms import verify_homomorphism
from turanlab import families as fam


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TURANLAB_TIME_LIMIT", raising=False)
    return tmp_path


def test_construct_writes_khg_and_labels(workdir, capsys):
    assert main(["construct", "Z(k=3,l=3)"]) == 0
    out = capsys.readouterr().out
    assert "6 vertices, 6 edges" in out
    g = from_khg((workdir / "Z_k_3_l_3.khg").read_text())
    assert g == fam.zycle(3, 3).graph
    labels = json.loads((workdir / "Z_k_3_l_3.labels.json").read_text())
    assert set(labels) == {"labels", "starting_sets"}
    assert labels["starting_sets"]["0"] == [0, 1]


def test_construct_rejects_bad_specs(workdir, capsys):
    assert main(["construct", "Z(k=3,l=1)"]) == 1
    assert "zycle length must be >= 2" in capsys.readouterr().err
    assert main(["construct", "Q(k=3)"]) == 1
    assert "unknown family tag" in capsys.readouterr().err


def test_show_reads_files_and_specs(workdir, capsys):
    main(["construct", "K(k=2,n=3)"])
    capsys.readouterr()
    assert main(["show", "K_k_2_n_3.khg"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == "khg v1: k=2 n=3 m=3"
    assert main(["show", "K(k=2,n=3)", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["n"] == 3 and obj["k"] == 2


def test_free_command(workdir, capsys):
    main(["construct", "base(k=3,s=4,n=12)", "-o", "host"])
    capsys.readouterr()
    code = main(["free", "host.khg", "GL(k=3,s=4,l=2)", "exp(k=3,s=4)"])
    out = capsys.readouterr().out
    assert code == 0
    assert "GL(k=3,s=4,l=2): free" in out
    assert "exp(k=3,s=4): contains" in out


def test_hom_command_with_pin(workdir, capsys):
    assert main(["hom", "Z(k=3,l=4)", "Z(k=3,l=2)"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "hom"
    src = fam.zycle(3, 4).graph
    tgt = fam.zycle(3, 2).graph
    from turanlab.morphisms import VertexMap
    assert verify_homomorphism(src, tgt, VertexMap("hom", src, tgt, tuple(payload["image"])))
    assert main(["hom", "Z(k=3,l=3)", "Z(k=3,l=2)"]) == 0
    assert capsys.readouterr().out.strip() == "absent"
    assert main(["hom", "K(k=2,n=3)", "K(k=2,n=4)", "--pin", "0:3,1:0"]) == 0
    img = json.loads(capsys.readouterr().out)["image"]
    assert img[0] == 3 and img[1] == 0


def test_count_command(workdir, capsys):
    assert main(["count", "K(k=2,n=4)", "K(k=2,n=3)"]) == 0
    assert capsys.readouterr().out.strip() == "labeled=24 aut=6 copies=4"


def test_ex_command(workdir, capsys):
    assert main(["ex", "exp(k=3,s=4)", "--n", "5"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["value"] == 10 and obj["proven_optimal"] is True
    assert "wall_time" not in obj


def test_ex_time_limit_exit_code(workdir, capsys):
    assert main(["ex", "K(k=2,n=3)", "--n", "12", "--time-limit", "0.05"]) == 2
    obj = json.loads(capsys.readouterr().out)
    assert obj["proven_optimal"] is False


def test_env_time_limit(workdir, capsys, monkeypatch):
    monkeypatch.setenv("TURANLAB_TIME_LIMIT", "0.05")
    from turanlab.extremal import _proven_cache
    _proven_cache.clear()
    assert main(["ex", "K(k=2,n=3)", "--n", "12"]) == 2
    capsys.readouterr()
    _proven_cache.clear()


def test_exhom_command(workdir, capsys):
    assert main(["exhom", "K(k=2,n=3)", "--t", "5"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 6
    assert main(["exhom", "K(k=2,n=3)", "--t", "5", "--method", "direct"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 6


def test_series_command(workdir, capsys):
    assert main(["series", "K(k=2,n=3)", "--n-min", "3", "--n-max", "6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,ex,density,proven"
    assert lines[1] == "3,2,2/3,true"
    assert main(["series", "K(k=2,n=3)", "--n-min", "3", "--n-max", "4", "--float"]) == 0
    assert "density_float" in capsys.readouterr().out


def test_output_is_byte_identical_across_runs(workdir, capsys):
    args = ["ex", "K(k=2,n=3)", "--n", "8"]
    main(args + ["-o", "a.json", "--seed", "1", "--threads", "2"])
    main(args + ["-o", "b.json", "--seed", "9", "--threads", "7"])
    assert (workdir / "a.json").read_bytes() == (workdir / "b.json").read_bytes()


def test_usage_errors_exit_1(workdir, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ex", "K(k=2,n=3)"])  # missing --n
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nosuchsuite"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 1
    assert main(["show", "missing.khg"]) == 1  # not a file, not a spec


def test_verify_command(workdir, capsys):
    assert main(["verify", "part2-pipeline"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out
    assert out.strip().splitlines()[-1].startswith("part2-pipeline:")
