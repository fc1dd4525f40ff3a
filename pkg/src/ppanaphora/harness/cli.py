"""Command line entry point: ``resolve <corpus> --lexicon L --rules R``.

Exit status: 0 success, 1 I/O or parse error, 2 validation error,
3 engine/oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ..coordinator import resolve_document, resolve_sentence
from ..model import ValidationError
from . import io
from .generate import random_instance
from .oracle import compare, oracle_document, oracle_resolve
from .stats import corpus_stats

logger = logging.getLogger("ppanaphora")

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="resolve",
        description="Resolve pronouns and PP attachments over an annotated corpus.")
    p.add_argument("corpus", nargs="?", help="corpus JSON file")
    p.add_argument("--lexicon", help="lexicon JSON file")
    p.add_argument("--rules", help="attachment rule table JSON file")
    p.add_argument("--trace", action="store_true", help="print one line per scheduler action")
    p.add_argument("--oracle-check", action="store_true",
                   help="compare every sentence against the dependency-graph oracle")
    p.add_argument("--stats", action="store_true", help="print corpus statistics as JSON")
    p.add_argument("--seed", type=int, default=0, help="first seed for --fuzz")
    p.add_argument("--fuzz", type=int, default=0, metavar="N",
                   help="also check N seeded random sentences against the oracle")
    p.add_argument("--jobs", type=int, default=1, help="documents resolved in parallel")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _run_document(doc, rules, lex, with_oracle):
    results, _ = resolve_document(doc.sentences, rules, lex)
    reports = None
    if with_oracle:
        oracle, _ = oracle_document(doc.sentences, rules, lex)
        reports = [compare(r, o) for r, o in zip(results, oracle)]
    return results, reports


def fuzz(n: int, seed: int, out=None) -> int:
    """Engine vs oracle on ``n`` random sentences; returns the number of mismatches."""
    out = out or sys.stdout
    bad = 0
    for k in range(seed, seed + n):
        inst = random_instance(k)
        engine = resolve_sentence(inst.sentence, inst.discourse, inst.rules, inst.lexicon)
        oracle = oracle_resolve(inst.sentence, inst.discourse, inst.rules, inst.lexicon)
        report = compare(engine, oracle)
        if not report.equal:
            bad += 1
            print(f"fuzz seed={k} mismatch: {report}", file=out)
    print(f"fuzz instances={n} seed={seed} mismatches={bad}", file=out)
    return bad


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.corpus is None and not args.fuzz:
        build_parser().error("a corpus is required unless --fuzz is given")

    status = EXIT_OK
    if args.corpus is not None:
        if not (args.lexicon and args.rules):
            build_parser().error("--lexicon and --rules are required with a corpus")
        try:
            lex = io.load_lexicon(Path(args.lexicon).read_bytes())
            rules = io.load_rules(Path(args.rules).read_bytes(), lex)
            docs = io.load_corpus(Path(args.corpus).read_bytes(), lex)
        except (ValidationError, io.DanglingReferenceError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        except (OSError, io.FormatError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO

        with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
            outputs = list(pool.map(
                lambda d: _run_document(d, rules, lex, args.oracle_check), docs))

        all_results = []
        for doc, (results, reports) in zip(docs, outputs):
            for i, r in enumerate(results):
                all_results.append(r)
                print(f"doc={doc.id} sentence={r.state.index} outcome={r.outcome}"
                      f" module_calls={r.module_calls}")
                if args.trace:
                    for ev in r.trace:
                        print(ev.format())
                for ident, (st, value, reason) in r.decisions().items():
                    print(f"  {ident} {st} {value or '-'} {reason or '-'}")
                if reports is not None:
                    print(f"  oracle: {reports[i]}")
                    if not reports[i].equal:
                        status = EXIT_MISMATCH
        if args.stats:
            print(json.dumps(corpus_stats(all_results).as_dict(), sort_keys=True))

    if args.fuzz and fuzz(args.fuzz, args.seed):
        status = EXIT_MISMATCH
    return status


if __name__ == "__main__":
    sys.exit(main())
