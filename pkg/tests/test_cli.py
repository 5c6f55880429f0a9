import json
import subprocess
import sys
import threading

import pytest

from flagcalc import cache, cli
from flagcalc.dynkin import builtin


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_examples(capsys):
    assert run(capsys, "reduced-count", "--type", "F4", "--longest") == (0, {"count": "2144892"})
    code, out = run(capsys, "cohomology", "--type", "A1", "--degrees", "-5")
    assert code == 0 and out["profile"] == {"1": 4}
    assert run(capsys, "roots", "--type", "A2", "--count") == (0, {"roots": 6, "positive": 3})


def test_other_commands(capsys):
    assert run(capsys, "weyl-order", "--type", "F4")[1] == {"order": "1152"}
    code, out = run(capsys, "longest", "--type", "B2")
    assert out["length"] == 4
    code, out = run(capsys, "reduced-list", "--type", "A2", "--longest")
    assert out["words"] == [[1, 2, 1], [2, 1, 2]] and out["total"] == "2"
    code, out = run(capsys, "reduced-list", "--type", "A3", "--longest", "--start", "3", "--limit", "2")
    assert len(out["words"]) == 2
    code, out = run(capsys, "euler-bs", "--type", "A2", "--word", "1,2,1", "--degrees", "1,1")
    assert out == {"euler": 8}
    code, out = run(capsys, "bs-model", "--type", "B2", "--word", "1,2,1,2")
    assert out["stein_face"] == [1, 2] and out["image_dimension"] == 4
    code, out = run(capsys, "index", "--type", "F4", "--node", "1", "--degree", "15")
    assert out["index"] == 8
    code, out = run(capsys, "classify", "--type", "F4")
    assert code == 0 and out["components"][0]["type"] == "F"


def test_certify(capsys):
    code, out = run(capsys, "certify", "--type", "B3", "--word", "1,2,3,1,2,3,1,2,3")
    assert code == 0 and out["certified"] is True
    code, out = run(capsys, "certify", "--type", "B2", "--word", "1,2,1,2", "--target", "1")
    assert out["h1"] == {"exact": 1}
    code, out = run(capsys, "certify", "--type", "A2", "--word", "1,1")
    assert code == 1 and out["error"] == "NotReduced"


def test_cartan_file(capsys, tmp_path):
    p = tmp_path / "g2.json"
    p.write_text(json.dumps([[2, -1], [-3, 2]]))
    code, out = run(capsys, "weyl-order", "--cartan", str(p))
    assert out == {"order": "12"}
    p.write_text(json.dumps([[2, -1], [0, 2]]))
    code, out = run(capsys, "roots", "--cartan", str(p))
    assert code == 1 and "error" in out


def test_f4_scan_exit_codes(capsys, tmp_path):
    ck = str(tmp_path / "ck.jsonl")
    args = ["f4-scan", "--mode", "range", "--start", "100", "--stop", "160", "--checkpoint", ck]
    code, out = run(capsys, *args, "--stop-after", "20")
    assert code == 3 and out["processed"] == 20 and not out["complete"]
    code, out = run(capsys, *args)
    assert code == 0 and out["processed"] == 60 and out["complete"] and out["certified"] == 0
    (tmp_path / "ck.jsonl").write_text("garbage\n")
    code, out = run(capsys, *args)
    assert code == 1 and out["error"] == "CheckpointCorrupt"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["roots", "--type", "A2", "--bogus"])
    assert exc.value.code == 2
    assert cli.main(["roots"]) == 2
    assert cli.main(["reduced-count", "--type", "A2"]) == 2
    capsys.readouterr()


def test_domain_errors(capsys):
    code, out = run(capsys, "roots", "--type", "Q7")
    assert code == 1 and set(out) == {"error", "detail"}
    code, out = run(capsys, "cohomology", "--type", "A2", "--degrees", "1")
    assert code == 1 and out["error"] == "IndexOutOfRange"
    code, out = run(capsys, "index", "--type", "A2", "--node", "1", "--degree", "3")
    assert code == 1 and out["error"] == "NotFound"


def test_repro_exit(capsys):
    code, out = run(capsys, "repro", "f4-index")
    assert code == 0 and out["passed"]


def test_byte_identical_output(capsys):
    outs = []
    for _ in range(2):
        cli.main(["f4-scan", "--mode", "sample", "--k", "30", "--no-cache"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_cache_hit_and_clear(capsys, monkeypatch, tmp_path):
    first = run(capsys, "reduced-count", "--type", "B3", "--longest")
    monkeypatch.setattr(cli, "count_reduced_words", lambda w: pytest.fail("cache miss"))
    assert run(capsys, "reduced-count", "--type", "B3", "--longest") == first
    monkeypatch.undo()
    monkeypatch.setenv("FLAGCALC_CACHE", str(tmp_path / "fresh"))
    assert run(capsys, "reduced-count", "--type", "B3", "--longest") == first


def test_cache_corrupt_entry(capsys, caplog):
    c = builtin("A3")
    cache.store(c, "weyl-order", "24")
    path = cache.cache_dir() / f"{cache.cache_key(c, 'weyl-order')}.json"
    path.write_text("{broken")
    assert run(capsys, "weyl-order", "--type", "A3") == (0, {"order": "24"})
    assert "corrupt cache entry" in caplog.text
    assert json.loads(path.read_text())["value"] == "24"


def test_cache_concurrent_writers():
    c = builtin("G2")
    threads = [threading.Thread(target=cache.store, args=(c, "x", "12")) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert cache.load(c, "x") == "12"
    assert not list(cache.cache_dir().glob("*.tmp"))


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "flagcalc.cli", "roots", "--type", "G2", "--count"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout) == {"roots": 12, "positive": 6}
