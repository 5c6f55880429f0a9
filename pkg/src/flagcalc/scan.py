"""Certification scan over the reduced words of the longest element.

Words are addressed by their rank in lexicographic order, so every mode is a
sorted set of ranks: ``full`` is all of them, ``range`` a half-open interval
and ``sample`` the evenly spread ranks ``floor(j N / k)``.  Progress is
appended to a JSON-lines checkpoint; a rerun with the same checkpoint skips
every rank up to the recorded last word.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .descent import DEFAULT_BUDGET, Certified, DescentEngine, certify_word
from .dynkin import CartanData, builtin
from .errors import CheckpointCorrupt
from .weyl import weyl_group

__all__ = ["ScanReport", "f4_scan", "scan_ranks", "read_checkpoint"]

MEMO_LIMIT = 2_000_000


@dataclass
class ScanReport:
    mode: str
    total_words: int
    planned: int
    processed: int = 0
    certified: int = 0
    failed: int = 0
    budget_exceeded: int = 0
    last_word: tuple[int, ...] | None = None
    fail_index: Counter = field(default_factory=Counter)
    interrupted: bool = False

    def add(self, other: "ScanReport") -> None:
        self.processed += other.processed
        self.certified += other.certified
        self.failed += other.failed
        self.budget_exceeded += other.budget_exceeded
        self.fail_index.update(other.fail_index)
        if other.last_word is not None:
            self.last_word = other.last_word

    def record(self) -> dict:
        return {
            "last_word": None if self.last_word is None else [x + 1 for x in self.last_word],
            "processed": self.processed,
            "certified": self.certified,
            "failed": self.failed,
            "budget_exceeded": self.budget_exceeded,
            "mode": self.mode,
        }

    def to_json(self) -> dict:
        out = self.record()
        out["total_words"] = str(self.total_words)
        out["planned"] = self.planned
        out["complete"] = not self.interrupted and self.processed == self.planned
        out["fails_at_histogram"] = {str(k): v for k, v in sorted(self.fail_index.items())}
        return out


def _mode_label(mode: str, k: int | None, start: int | None, stop: int | None) -> str:
    if mode == "sample":
        return f"sample:{k}"
    if mode == "range":
        return f"range:{start}:{stop}"
    return "full"


def _sample_ranks(total: int, k: int) -> list[int]:
    k = min(k, total)
    return sorted({j * total // k for j in range(k)})


def scan_ranks(total: int, mode: str, k: int | None = None, start: int | None = None,
               stop: int | None = None) -> list[tuple[int, int]] | list[int]:
    """Ranks to visit: a list of ranks for ``sample``, one interval otherwise."""
    if mode == "sample":
        if not k or k < 1:
            raise ValueError("sample mode needs k >= 1")
        return _sample_ranks(total, k)
    if mode == "range":
        lo = max(0, start or 0)
        hi = total if stop is None else min(stop, total)
        return [(lo, max(lo, hi))]
    if mode == "full":
        return [(0, total)]
    raise ValueError(f"unknown mode {mode!r}")


def read_checkpoint(path: str, mode_label: str) -> dict | None:
    if not os.path.exists(path):
        return None
    last = None
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                for key in ("last_word", "processed", "certified", "failed", "budget_exceeded"):
                    rec[key]
            except (ValueError, KeyError, TypeError) as exc:
                raise CheckpointCorrupt(f"{path}:{n}: {exc}") from None
            last = rec
    if last is not None and last.get("mode", mode_label) != mode_label:
        raise CheckpointCorrupt(f"{path} was written by scan mode {last.get('mode')}, not {mode_label}")
    return last


def _append(path: str, rec: dict) -> None:
    with open(path, "a") as fh:
        fh.write(json.dumps(rec) + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def _tally(rep: ScanReport, res) -> None:
    rep.processed += 1
    if isinstance(res, Certified):
        rep.certified += 1
    elif res.budget_exceeded:
        rep.budget_exceeded += 1
    else:
        rep.failed += 1
        rep.fail_index[res.index] += 1


def _words_for(cartan: CartanData, chunk) -> Iterator[tuple[int, ...]]:
    G = weyl_group(cartan)
    u = G.longest
    if isinstance(chunk, tuple):
        yield from G.iter_words(u, chunk[0], chunk[1])
    else:
        for k in chunk:
            yield G.unrank(u, k)


def _run_chunk(args) -> ScanReport:
    cartan, chunk, budget, mode = args
    eng = DescentEngine(cartan, budget=budget)
    rep = ScanReport(mode, 0, 0)
    for w in _words_for(cartan, chunk):
        _tally(rep, certify_word(cartan, w, eng, check=False))
        rep.last_word = w
        if len(eng.memo) > MEMO_LIMIT:
            eng.clear()
    return rep


def _split(plan, size: int) -> list:
    """Cut the plan into chunks of about ``size`` words, in rank order."""
    chunks = []
    if plan and isinstance(plan[0], tuple):
        lo, hi = plan[0]
        for a in range(lo, hi, size):
            chunks.append((a, min(a + size, hi)))
    else:
        for a in range(0, len(plan), size):
            chunks.append(plan[a:a + size])
    return chunks


def _chunk_len(chunk) -> int:
    return chunk[1] - chunk[0] if isinstance(chunk, tuple) else len(chunk)


def f4_scan(mode: str = "sample", k: int | None = 10_000, start: int | None = None,
            stop: int | None = None, checkpoint: str | None = None, workers: int = 1,
            stop_after: int | None = None, budget: int = DEFAULT_BUDGET,
            chunk_size: int = 10_000, cartan: CartanData | None = None) -> ScanReport:
    """Run ``certify_word`` over reduced words of the longest element.

    ``stop_after`` ends the run early (at a chunk boundary) after at least
    that many words; the report is then marked ``interrupted`` and the
    checkpoint allows an exact resume.
    """
    cartan = cartan or builtin("F4")
    G = weyl_group(cartan)
    u = G.longest
    total = G.reduced_word_counts[u]
    label = _mode_label(mode, k, start, stop)
    plan = scan_ranks(total, mode, k, start, stop)
    planned = sum(_chunk_len(c) for c in plan) if mode != "sample" else len(plan)
    rep = ScanReport(label, total, planned)

    if checkpoint:
        prev = read_checkpoint(checkpoint, label)
        if prev is not None:
            rep.processed = prev["processed"]
            rep.certified = prev["certified"]
            rep.failed = prev["failed"]
            rep.budget_exceeded = prev["budget_exceeded"]
            for key, v in prev.get("fails_at_histogram", {}).items():
                rep.fail_index[int(key)] = v
            if prev["last_word"] is not None:
                last = tuple(x - 1 for x in prev["last_word"])
                try:
                    done = G.rank_of(u, last)
                except ValueError as exc:
                    raise CheckpointCorrupt(f"bad last_word in {checkpoint}: {exc}") from None
                rep.last_word = last
                if mode == "sample":
                    plan = [r for r in plan if r > done]
                else:
                    lo, hi = plan[0]
                    plan = [(max(lo, done + 1), hi)]

    def flush():
        if checkpoint:
            rec = rep.record()
            rec["fails_at_histogram"] = {str(a): b for a, b in sorted(rep.fail_index.items())}
            _append(checkpoint, rec)

    if stop_after is not None:
        chunk_size = max(1, min(chunk_size, stop_after))
    chunks = [c for c in _split(plan, chunk_size) if _chunk_len(c)]
    done_now = 0
    jobs = [(cartan, c, budget, label) for c in chunks]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            # map keeps chunk order, so the checkpoint always records a prefix
            for part in ex.map(_run_chunk, jobs):
                rep.add(part)
                done_now += part.processed
                flush()
                if stop_after is not None and done_now >= stop_after:
                    rep.interrupted = rep.processed < planned
                    ex.shutdown(cancel_futures=True)
                    break
    else:
        for job in jobs:
            part = _run_chunk(job)
            rep.add(part)
            done_now += part.processed
            flush()
            if stop_after is not None and done_now >= stop_after:
                rep.interrupted = rep.processed < planned
                break
    return rep
