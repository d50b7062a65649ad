import json
import subprocess
import sys

import pytest

from linklab.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_gen_k6(capsys):
    code, data = run(["gen", "k", "6"], capsys)
    assert code == 0 and len(data["edges"]) == 15
    assert data["invocation"]["command"] == "gen"


@pytest.mark.parametrize("kind,n", [("F126", 126), ("F115", 115), ("F", 15), ("D4", 15), ("k331", 7)])
def test_gen_kinds(kind, n, capsys):
    code, data = run(["gen", kind, "--f-config", "default"], capsys)
    assert code == 0 and len(data["vertices"]) == n


def test_gen_multipartite(capsys):
    _, data = run(["gen", "k", "3,3,1"], capsys)
    assert len(data["edges"]) == 15


def test_unknown_kind_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "petersen"])
    assert exc.value.code == 2


def _embed(tmp_path, kind_args, seed=1, name="e.json"):
    g = tmp_path / "g.json"
    assert main(["gen", *kind_args, "--out", str(g)]) == 0
    out = tmp_path / name
    assert main(["embed", str(g), "--seed", str(seed), "--out", str(out)]) == 0
    return out


def test_embed_byte_identical(tmp_path, monkeypatch):
    outputs = []
    for sub in ("one", "two"):
        (tmp_path / sub).mkdir()
        monkeypatch.chdir(tmp_path / sub)
        assert main(["gen", "k", "6", "--out", "g.json"]) == 0
        assert main(["embed", "g.json", "--seed", "1", "--out", "e.json"]) == 0
        outputs.append((tmp_path / sub / "e.json").read_bytes())
    assert outputs[0] == outputs[1]
    data = json.loads(outputs[0])
    assert data["general_position"]["ok"]
    assert data["invocation"]["seed"] == 1


def test_embed_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert main(["embed", str(bad)]) == 2


def test_hunt_k6_and_k7(tmp_path, capsys):
    code, data = run(["hunt", "k6", str(_embed(tmp_path, ["k", "6"]))], capsys)
    assert code == 0 and data["checksum"] == 1
    code, data = run(["hunt", "k7arf", str(_embed(tmp_path, ["k", "7"], name="k7.json"))], capsys)
    assert code == 0 and data["checksum"] == 1


def test_hunt_host_mismatch(tmp_path):
    assert main(["hunt", "k6", str(_embed(tmp_path, ["k", "5"]))]) == 2


def test_hunt_theorem1_budget_zero(tmp_path, capsys):
    e = _embed(tmp_path, ["F126"], seed=0)
    code, data = run(["hunt", "theorem1", str(e), "--budget", "0"], capsys)
    assert code == 0
    assert set(data["stages"].values()) == {"inconclusive"}
    assert data["invocation"]["budget"] == 0


def test_hunt_path_on_marked_graph(tmp_path, capsys):
    code, data = run(["hunt", "path", str(_embed(tmp_path, ["D4"], seed=0)), "--budget", "16"], capsys)
    assert code == 0
    assert data["stage"] in ("ok", "inconclusive")
    assert len(data["searched"]) >= 1


def test_splice_commands(capsys):
    code, data = run(["splice", "--n", "5", "--targets", "1,1,1,1,1"], capsys)
    assert code == 0 and data["result"]["k"] != 0 and data["result"]["lk"] % 5 == 0
    code, data = run(["splice", "--n", "6", "--targets", "1,2,3,4,5,6"], capsys)
    assert code == 0 and data["result"]["lk"] % 6 == 0


def test_splice_rejects_trivial_modulus(capsys):
    assert main(["splice", "--n", "1", "--targets", "1"]) == 2
    assert main(["splice", "--n", "3", "--targets", "1,0,1"]) == 2


def test_splice_infeasible_scene(capsys):
    assert main(["splice", "--n", "5", "--targets", "1,1,1,1,1", "--vertices", "10"]) == 2


def test_splice_from_scene(tmp_path, capsys):
    code, data = run(["splice", "--n", "3", "--targets", "1,2,2", "--vertices", "30", "--with-scene"], capsys)
    p = tmp_path / "scene.json"
    p.write_text(json.dumps(data["scene"]))
    code, again = run(["splice", "--n", "3", "--scene", str(p)], capsys)
    assert code == 0 and again["result"]["lk"] == data["result"]["lk"]


def test_seqs(capsys):
    code, data = run(["seqs", "--n", "5"], capsys)
    (row,) = data["rows"]
    assert (row["alpha_prime"], row["zeta"], row["eta"], row["growth"]) == (21, 54, 1197, True)
    _, data = run(["seqs", "2", "6"], capsys)
    assert ["note" in r for r in data["rows"]] == [True, True, True, False, False]


def test_lk_and_knot_on_fixtures(tmp_path, capsys):
    from importlib import resources

    hopf = resources.files("linklab").joinpath("data/hopf.json")
    code, data = run(["lk", str(hopf)], capsys)
    assert code == 0 and abs(data["pairs"][0]["lk"]) == 1
    trefoil = resources.files("linklab").joinpath("data/trefoil.json")
    code, data = run(["knot", str(trefoil), "--primes", "3,5"], capsys)
    assert code == 0 and data["determinant"] == "3" and data["verdict"] == "certified-knotted"
    assert data["colorings"] == {"3": 9, "5": 5}


def test_knot_bad_cycle(capsys):
    from importlib import resources

    trefoil = resources.files("linklab").joinpath("data/trefoil.json")
    assert main(["knot", str(trefoil), "--cycle", "0,1,5"]) == 2


def test_contradiction_code_never_fires_on_corpus(tmp_path, capsys):
    for seed in range(5):
        e = _embed(tmp_path, ["k", "6"], seed=seed, name=f"k6_{seed}.json")
        assert main(["hunt", "k6", str(e)]) != 4
    e = _embed(tmp_path, ["F126"], seed=0, name="f.json")
    assert main(["hunt", "theorem1", str(e), "--budget", "400"]) == 0


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "linklab.cli", "seqs", "--n", "6"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["rows"][0]["eta"] == 3654
