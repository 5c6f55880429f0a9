"""Command line interface.  Every subcommand prints one JSON object.

Exit codes: 0 success, 1 domain error (``{"error": code, "detail": ...}``),
2 usage error, 3 interrupted scan that can be resumed from its checkpoint.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import cache
from .bottsamelson import build_model
from .charcalc import bwb_cohomology, euler_char_bs, euler_char_x, index_of_contraction
from .descent import DEFAULT_BUDGET, DescentEngine, certify_word, h1_uniqueness
from .dynkin import CartanData, builtin, classify, validate_cartan
from .errors import FlagCalcError, IndexOutOfRange
from .lattice import Regular, dominant_representative
from .repro import SUITES, run_suite
from .scan import f4_scan
from .weyl import (
    count_reduced_words,
    element_from_word,
    generate_roots,
    longest_element,
    weyl_group,
    weyl_order,
)


class UsageError(Exception):
    pass


def parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def load_cartan(args) -> CartanData:
    if args.type and args.cartan:
        raise UsageError("give either --type or --cartan, not both")
    if args.cartan:
        with open(args.cartan) as fh:
            obj = json.load(fh)
        if isinstance(obj, list):
            return validate_cartan(obj)
        return CartanData.from_json(obj)
    if args.type:
        return builtin(args.type, args.rank)
    raise UsageError("one of --type or --cartan is required")


def word_arg(c: CartanData, word) -> tuple[int, ...]:
    for x in word:
        if not 1 <= x <= c.rank:
            raise IndexOutOfRange(f"letter {x} outside 1..{c.rank}")
    return tuple(x - 1 for x in word)


def degrees_arg(c: CartanData, d) -> tuple[int, ...]:
    if len(d) != c.rank:
        raise IndexOutOfRange(f"expected {c.rank} degrees, got {len(d)}")
    return tuple(d)


def one_based(word) -> list[int]:
    return [x + 1 for x in word]


def target_element(c: CartanData, args):
    if args.longest == (args.word is not None):
        raise UsageError("give exactly one of --longest or --word")
    if args.longest:
        return longest_element(c), "longest"
    return element_from_word(c, word_arg(c, args.word)), "word:" + ",".join(map(str, args.word))


# --- commands ----------------------------------------------------------------

def cmd_roots(c, args):
    rs = generate_roots(c)
    out = {"roots": len(rs), "positive": len(rs.positives)}
    if not args.count:
        out["positive_roots"] = [
            {"coeffs": list(r.coeffs), "degrees": list(r.degrees)} for r in rs.positives
        ]
    return out


def cmd_weyl_order(c, args):
    order = cache.cached(c, "weyl-order", lambda: str(weyl_order(c)), not args.no_cache)
    return {"order": order}


def cmd_longest(c, args):
    w0 = longest_element(c)
    return {"length": w0.length, "word": one_based(w0.witness_word),
            "matrix": [list(r) for r in w0.action]}


def cmd_reduced_count(c, args):
    w, label = target_element(c, args)
    count = cache.cached(c, "reduced-count:" + label, lambda: str(count_reduced_words(w)),
                         not args.no_cache)
    return {"count": count}


def cmd_reduced_list(c, args):
    w, _ = target_element(c, args)
    G = weyl_group(c)
    u = G.locate(w)
    stop = None if args.limit is None else args.start + args.limit
    words = [one_based(x) for x in G.iter_words(u, args.start, stop)]
    return {"total": str(G.reduced_word_counts[u]), "start": args.start, "words": words}


def cmd_cohomology(c, args):
    L = degrees_arg(c, args.degrees)
    rs = generate_roots(c)
    res = dominant_representative(c, L)
    prof = bwb_cohomology(c, rs, L)
    return {
        "profile": prof.to_json(),
        "euler": euler_char_x(c, rs, L),
        "length": res.length if isinstance(res, Regular) else None,
        "singular": not isinstance(res, Regular),
    }


def cmd_euler_bs(c, args):
    L = degrees_arg(c, args.degrees)
    return {"euler": euler_char_bs(c, word_arg(c, args.word), L)}


def cmd_bs_model(c, args):
    return build_model(c, word_arg(c, args.word)).to_json()


def cmd_certify(c, args):
    w = word_arg(c, args.word)
    eng = DescentEngine(c, budget=args.budget, use_j3=args.j3)
    if args.target is not None:
        if not 1 <= args.target <= c.rank:
            raise IndexOutOfRange(f"target {args.target} outside 1..{c.rank}")
        res = h1_uniqueness(c, w, target=args.target - 1, engine=eng)
        return {"word": one_based(w), "target": args.target, "h1": res.to_json()}
    res = certify_word(c, w, eng)
    out = {"word": one_based(w)}
    out.update(res.to_json())
    return out


def cmd_f4_scan(c, args):
    rep = f4_scan(
        mode=args.mode, k=args.k, start=args.start, stop=args.stop,
        checkpoint=args.checkpoint, workers=args.workers, stop_after=args.stop_after,
        budget=args.budget, cartan=c,
    )
    return rep.to_json(), (3 if rep.interrupted else 0)


def cmd_index(c, args):
    rs = generate_roots(c)
    if not 1 <= args.node <= c.rank:
        raise IndexOutOfRange(f"node {args.node} outside 1..{c.rank}")
    return {"node": args.node, "degree": args.degree,
            "index": index_of_contraction(c, rs, args.node - 1, args.degree)}


def cmd_classify(c, args):
    return classify(c).to_json()


def cmd_repro(args):
    checks = run_suite(args.suite)
    ok = all(chk.passed for chk in checks)
    return {"suite": args.suite, "passed": ok, "checks": [chk.to_json() for chk in checks]}, (0 if ok else 1)


# --- parser ------------------------------------------------------------------

def _add_source(p):
    p.add_argument("--type", help="builtin type such as F4, or a letter with --rank")
    p.add_argument("--rank", type=int)
    p.add_argument("--cartan", help="JSON file with a Cartan matrix")
    p.add_argument("--no-cache", action="store_true", help="bypass the on-disk cache")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flagcalc", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _add_source(p)
        p.set_defaults(func=fn)
        return p

    p = add("roots", cmd_roots, "root system summary")
    p.add_argument("--count", action="store_true", help="only the counts")
    add("weyl-order", cmd_weyl_order, "order of the Weyl group")
    add("longest", cmd_longest, "longest element")
    for name, fn in (("reduced-count", cmd_reduced_count), ("reduced-list", cmd_reduced_list)):
        p = add(name, fn, "count or list reduced words")
        p.add_argument("--longest", action="store_true")
        p.add_argument("--word", type=parse_ints)
        if name == "reduced-list":
            p.add_argument("--start", type=int, default=0)
            p.add_argument("--limit", type=int, default=100)
    p = add("cohomology", cmd_cohomology, "line bundle cohomology on the flag manifold")
    p.add_argument("--degrees", type=parse_ints, required=True)
    p = add("euler-bs", cmd_euler_bs, "Euler characteristic on a Bott-Samelson tower")
    p.add_argument("--word", type=parse_ints, required=True)
    p.add_argument("--degrees", type=parse_ints, required=True)
    p = add("bs-model", cmd_bs_model, "numerical Bott-Samelson model")
    p.add_argument("--word", type=parse_ints, required=True)
    p = add("certify", cmd_certify, "uniqueness certification of a word")
    p.add_argument("--word", type=parse_ints, required=True)
    p.add_argument("--target", type=int, help="report h^1(K_target) on the full tower instead")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--j3", action="store_true", help="enable the extra section-divisor vanishing rule")
    p = add("f4-scan", cmd_f4_scan, "certification scan over reduced words of w0")
    p.set_defaults(type="F4")
    p.add_argument("--mode", choices=["full", "sample", "range"], default="sample")
    p.add_argument("--k", type=int, default=10_000)
    p.add_argument("--start", type=int)
    p.add_argument("--stop", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--stop-after", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p = add("index", cmd_index, "index of the contraction at a node")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    add("classify", cmd_classify, "Dynkin classification")

    p = sub.add_parser("repro", help="run an acceptance bundle")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.set_defaults(func=None)
    return ap


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _glue_negative_lists(argv: list[str]) -> list[str]:
    """Let ``--degrees -5,1`` through argparse, which would read ``-5,1`` as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--degrees", "--word"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = ap.parse_args(_glue_negative_lists(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "repro":
            out, code = cmd_repro(args)
        else:
            if args.command == "f4-scan" and args.cartan:
                args.type = None
            c = load_cartan(args)
            res = args.func(c, args)
            out, code = res if isinstance(res, tuple) else (res, 0)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        sys.stderr.write(f"flagcalc: error: {exc}\n")
        return 2
    except FlagCalcError as exc:
        emit({"error": exc.code, "detail": str(exc.detail)})
        return 1
    except (OSError, ValueError) as exc:
        emit({"error": type(exc).__name__, "detail": str(exc)})
        return 1
    emit(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
