import json

import pytest

from mmcomm import cli
from mmcomm.instance_io import ParseError, format_instance, load_instance, parse_instance


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_tight(capsys, data_dir):
    code, out, _ = run(capsys, "enumerate", "--graph", str(data_dir / "tight_p4.graph"), "--json")
    d = json.loads(out)
    assert code == 0 and (d["factor"]["num"], d["factor"]["den"]) == (3, 4)


def test_enumerate_maximal_csv(capsys, data_dir):
    code, out, _ = run(capsys, "enumerate", "--graph", str(data_dir / "tight_p4.graph"),
                       "--variant", "maximal", "--csv")
    header, row = out.strip().splitlines()
    assert header == "model,variant,n,m,opt_size,factor_num,factor_den,factor_dec"
    assert row.split(",")[5:7] == ["5", "8"]


def test_enumerate_text(capsys, data_dir):
    code, out, _ = run(capsys, "enumerate", "--graph", str(data_dir / "tight_p4.graph"), "--model", "full")
    assert code == 0 and out.startswith("factor 7/8")


def test_validation_error_names_vertex(capsys, tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("n 3\ne 0 1\ne 1 2\nopt 0 1\n")
    code, _, err = run(capsys, "enumerate", "--graph", str(p))
    assert code == 2
    assert "line 4" in err and "share vertex 1" in err


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_instance("n 3\ne 0 0\nopt 0\n")
    assert exc.value.lineno == 2
    with pytest.raises(ParseError):
        parse_instance("n 3\ne 0 1\ne 1 0\nopt 0\n")
    with pytest.raises(ParseError):
        parse_instance("n 3\nfoo 1\n")


def test_round_trip(data_dir):
    for f in data_dir.glob("*.graph"):
        inst = load_instance(f)
        text = format_instance(inst)
        again = parse_instance(text)
        assert again == inst and format_instance(again) == text


def test_search_byte_identical(capsys, data_dir):
    cfg = str(data_dir / "configs" / "p4_orderings.json")
    code, a, _ = run(capsys, "search", "--config", cfg, "--seed", "3")
    _, b, _ = run(capsys, "search", "--config", cfg, "--seed", "3")
    assert code == 0 and a == b
    assert json.loads(a)["factor"]["num"] == 3


def test_search_witness(capsys, data_dir, tmp_path):
    w = tmp_path / "w.graph"
    code, _, _ = run(capsys, "search", "--config", str(data_dir / "configs" / "p4_orderings.json"),
                     "--witness", str(w))
    assert code == 0 and load_instance(w).n == 4


def test_search_bad_config(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"kind": "ordering", "graph": "x.graph", "speed": 3}')
    assert run(capsys, "search", "--config", str(p))[0] == 2
    p.write_text("{not json")
    assert run(capsys, "search", "--config", str(p))[0] == 2


def test_verify_pass_and_fail(capsys, data_dir, monkeypatch):
    g = str(data_dir / "tight_p4.graph")
    code, out, _ = run(capsys, "verify", "--graph", g, "--json")
    assert code == 0 and json.loads(out)["passed"]

    import mmcomm.lemmas as lemmas
    from mmcomm.lemmas import Report

    def broken(inst, suite="all", trials=1000, seed=0):
        r = Report("main-lemma")
        r.check(False, "injected")
        return [r]

    monkeypatch.setattr(lemmas, "verify", broken)
    code, out, _ = run(capsys, "verify", "--graph", g)
    assert code == 1 and "FAIL" in out and "injected" in out


def test_lp(capsys):
    code, out, _ = run(capsys, "lp", "--imax", "5", "--check", "--json")
    d = json.loads(out)
    assert code == 0 and d["value"]["num"] == 3 and d["simplex_value"] == "3/4"
    assert run(capsys, "lp", "--imax", "1")[0] == 2
    code, out, _ = run(capsys, "lp", "--imax", "3")
    assert code == 0 and "value 3/4" in out


def test_cap_exceeded(capsys, tmp_path):
    import itertools

    edges = list(itertools.combinations(range(9), 2))[:29]
    lines = ["n 9"] + [f"e {u} {v}" for u, v in edges] + ["opt 5 13 20 21"]
    p = tmp_path / "big.graph"
    p.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "enumerate", "--graph", str(p), "--model", "full")
    assert code == 3 and "error" in err


def test_mc_seed_env(capsys, data_dir, monkeypatch):
    g = str(data_dir / "tight_p4.graph")
    monkeypatch.setenv("MMCOMM_SEED", "11")
    _, a, _ = run(capsys, "mc", "--graph", g, "--samples", "500")
    _, b, _ = run(capsys, "mc", "--graph", g, "--samples", "500", "--seed", "11")
    _, c, _ = run(capsys, "mc", "--graph", g, "--samples", "500", "--seed", "12")
    assert a == b != c
    assert json.loads(a)["seed"] == 11


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["enumerate"])
    assert exc.value.code == 2


def test_search_hunt_kind(capsys, tmp_path):
    p = tmp_path / "hunt.json"
    p.write_text(json.dumps({"kind": "hunt", "model": "fully-robust", "n": 4, "families": ["complete-split"],
                             "finalists": 1, "screen_samples": 100}))
    code, out, _ = run(capsys, "search", "--config", str(p))
    d = json.loads(out)
    assert code == 0 and d["model"] == "fully-robust" and d["factor"] is not None
