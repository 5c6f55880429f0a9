import json

import pytest

from flagcalc.errors import CheckpointCorrupt
from flagcalc.scan import f4_scan, read_checkpoint, scan_ranks
from flagcalc.weyl import weyl_group
from flagcalc.dynkin import builtin

N = 2144892


def test_scan_ranks():
    assert scan_ranks(10, "full") == [(0, 10)]
    assert scan_ranks(10, "range", start=3, stop=99) == [(3, 10)]
    assert scan_ranks(10, "range", start=7, stop=2) == [(7, 7)]
    assert scan_ranks(10, "sample", k=4) == [0, 2, 5, 7]
    assert scan_ranks(3, "sample", k=10) == [0, 1, 2]
    with pytest.raises(ValueError):
        scan_ranks(10, "sample", k=0)
    with pytest.raises(ValueError):
        scan_ranks(10, "bogus")


def test_last_word_alone():
    rep = f4_scan("range", start=N - 1, stop=N)
    assert rep.total_words == N
    assert rep.processed == 1 and rep.certified == 0
    G = weyl_group(builtin("F4"))
    assert rep.last_word == G.unrank(G.longest, N - 1)
    assert rep.to_json()["complete"]


def test_empty_range():
    rep = f4_scan("range", start=5, stop=5)
    assert rep.processed == 0 and rep.planned == 0


def test_sample_deterministic():
    a = f4_scan("sample", k=60).to_json()
    b = f4_scan("sample", k=60, chunk_size=7).to_json()
    assert a == b
    assert a["processed"] == 60 and a["certified"] == 0


def test_workers_equivalent():
    a = f4_scan("range", start=1000, stop=1400).to_json()
    b = f4_scan("range", start=1000, stop=1400, workers=2, chunk_size=100).to_json()
    assert a == b


def test_resume_identical(tmp_path):
    ck = str(tmp_path / "scan.jsonl")
    whole = f4_scan("range", start=2000, stop=2300).to_json()
    first = f4_scan("range", start=2000, stop=2300, checkpoint=ck, stop_after=120)
    assert first.interrupted and first.processed == 120
    rec = read_checkpoint(ck, "range:2000:2300")
    assert rec["processed"] == 120
    second = f4_scan("range", start=2000, stop=2300, checkpoint=ck)
    assert not second.interrupted
    assert second.to_json() == whole
    # a completed checkpoint makes a rerun a no-op
    again = f4_scan("range", start=2000, stop=2300, checkpoint=ck)
    assert again.to_json() == whole


def test_sample_resume(tmp_path):
    ck = str(tmp_path / "scan.jsonl")
    whole = f4_scan("sample", k=50).to_json()
    f4_scan("sample", k=50, checkpoint=ck, stop_after=20)
    assert f4_scan("sample", k=50, checkpoint=ck).to_json() == whole


def test_checkpoint_records(tmp_path):
    ck = tmp_path / "scan.jsonl"
    f4_scan("range", start=0, stop=30, checkpoint=str(ck), chunk_size=10)
    lines = [json.loads(x) for x in ck.read_text().splitlines()]
    assert [r["processed"] for r in lines] == [10, 20, 30]
    for r in lines:
        assert {"last_word", "processed", "certified", "failed", "budget_exceeded"} <= set(r)


def test_corrupt_checkpoint(tmp_path):
    ck = tmp_path / "scan.jsonl"
    ck.write_text("{not json\n")
    with pytest.raises(CheckpointCorrupt):
        f4_scan("range", start=0, stop=5, checkpoint=str(ck))
    ck.write_text(json.dumps({"last_word": [1, 2], "processed": 1}) + "\n")
    with pytest.raises(CheckpointCorrupt):
        f4_scan("range", start=0, stop=5, checkpoint=str(ck))
    ck.write_text(json.dumps({"last_word": [1, 1], "processed": 1, "certified": 0,
                              "failed": 1, "budget_exceeded": 0}) + "\n")
    with pytest.raises(CheckpointCorrupt):
        f4_scan("range", start=0, stop=5, checkpoint=str(ck))


def test_checkpoint_mode_mismatch(tmp_path):
    ck = str(tmp_path / "scan.jsonl")
    f4_scan("range", start=0, stop=5, checkpoint=ck)
    with pytest.raises(CheckpointCorrupt):
        f4_scan("sample", k=5, checkpoint=ck)


def test_other_type():
    rep = f4_scan("full", cartan=builtin("A3"))
    assert rep.processed == 16 and rep.certified == 16
