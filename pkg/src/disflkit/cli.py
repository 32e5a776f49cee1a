"""Command-line entry point.

Subcommands wire the library into pipelines over JSON-lines manifests:
``filter`` selects disfluent utterances, ``transform`` rewrites partial
words, ``split`` makes speaker-disjoint partitions, ``mix`` builds training
mixtures, ``tokenize`` builds or applies wordpiece vocabularies,
``evaluate`` scores decode outputs, ``report`` renders evaluation tables
and ``check-tables`` cross-checks published result tables.

Exit status: 0 on success, 1 on data errors (diagnostics on stderr), 2 on
usage errors.  Record data goes to files or stdout; diagnostics never mix
into it.  All outputs are byte-deterministic given the same inputs and
seeds; ``DISFLKIT_SEED`` provides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus, filtering, metrics, mixing, published, reporting, wordpiece
from .errors import ToolkitError
from .transforms import DEFAULT_TAG, PartialWordStrategy, StrategyKind, transform

STRATEGY_CHOICES = [kind.value for kind in StrategyKind]
RULE_CHOICES = [variant.value for variant in filtering.RuleVariant]


def _default_seed() -> int:
    try:
        return int(os.environ.get("DISFLKIT_SEED", "0"))
    except ValueError:
        return 0


def _strategy(options) -> PartialWordStrategy:
    return PartialWordStrategy(StrategyKind(options.strategy), options.tag)


def _require_inputs(*paths: str | None) -> None:
    # validate every input path before any output file is created
    for path in paths:
        if path is not None and not os.path.exists(path):
            raise ToolkitError(f"input file not found: {path}")


def cmd_filter(options) -> int:
    _require_inputs(options.input)
    rule = filtering.FilterRule(filtering.RuleVariant(options.rule), options.max_words)
    counts = {cond: 0 for cond in filtering.Condition}
    n_accepted = n_rejected = 0
    rejected_fh = open(options.rejected, "w", encoding="utf-8", newline="\n") if options.rejected else None
    try:
        with open(options.output, "w", encoding="utf-8", newline="\n") as accepted_fh:
            for rec in corpus.iter_manifest(options.input):
                verdict = filtering.apply_filter(rec.transcript, rule)
                for cond in verdict.matched:
                    counts[cond] += 1
                if verdict.accepted:
                    n_accepted += 1
                    accepted_fh.write(corpus.format_record(rec) + "\n")
                else:
                    n_rejected += 1
                    if rejected_fh is not None:
                        rejected_fh.write(corpus.format_record(rec) + "\n")
    finally:
        if rejected_fh is not None:
            rejected_fh.close()
    total = n_accepted + n_rejected
    rate = 100.0 * n_accepted / total if total else 0.0
    print(f"records          {total}")
    print(f"accepted         {n_accepted}")
    print(f"rejected         {n_rejected}")
    print(f"acceptance rate  {rate:.2f}%")
    for cond in filtering.Condition:
        print(f"condition {cond.value:<24} {counts[cond]}")
    return 0


def cmd_transform(options) -> int:
    _require_inputs(options.input)
    strategy = _strategy(options)
    n = 0
    with open(options.output, "w", encoding="utf-8", newline="\n") as out:
        for rec in corpus.iter_manifest(options.input):
            rewritten = rec.replace_transcript(transform(rec.transcript, strategy))
            out.write(corpus.format_record(rewritten) + "\n")
            n += 1
    print(f"transformed {n} records with strategy {options.strategy}")
    return 0


def cmd_split(options) -> int:
    _require_inputs(options.input)
    ratios = [float(x) for x in options.ratios.split(",")]
    if len(ratios) != 3:
        raise ToolkitError(f"--ratios needs three comma-separated numbers, got {options.ratios!r}")
    spec = mixing.SplitSpec(train=ratios[0], dev=ratios[1], test=ratios[2], seed=options.seed)
    manifest = corpus.read_manifest(options.input, name="pool")
    parts = mixing.speaker_disjoint_split(manifest, spec)
    for part, suffix in zip(parts, ("train", "dev", "test")):
        corpus.write_manifest(part, f"{options.out_prefix}.{suffix}.jsonl")
        hours = part.total_duration() / 3600.0
        print(f"{suffix:<6} records {len(part):>8}  speakers {len(part.speakers()):>6}  hours {hours:.2f}")
    return 0


def cmd_mix(options) -> int:
    _require_inputs(options.ordinary, options.disfluencies)
    spec = mixing.MixSpec(fraction=options.fraction, seed=options.seed, strategy=_strategy(options))
    ordinary = corpus.read_manifest(options.ordinary, name="ordinary")
    disfluencies = corpus.read_manifest(options.disfluencies, name="disfluencies")
    mixed, report = mixing.build_mix(ordinary, disfluencies, spec)
    corpus.write_manifest(mixed, options.output)
    for line in report.summary_lines():
        print(line)
    return 0


def cmd_tokenize(options) -> int:
    _require_inputs(options.input, None if options.build else options.vocab)
    if not options.build and not options.output:
        raise ToolkitError("tokenize needs --build and/or --out")
    if options.build:
        manifest = corpus.read_manifest(options.input)
        vocab = wordpiece.build_char_fallback_vocab(
            manifest, options.vocab_size, specials=(options.tag,)
        )
        wordpiece.write_vocab(vocab, options.vocab)
        print(f"wrote vocabulary of {vocab.size} pieces to {options.vocab}")
    else:
        vocab = wordpiece.read_vocab(options.vocab)
    if options.output:
        n = 0
        with open(options.output, "w", encoding="utf-8", newline="\n") as out:
            for rec in corpus.iter_manifest(options.input):
                text = wordpiece.mark_words(corpus.render_transcript(rec.transcript))
                seg = wordpiece.segment(text, vocab)
                out.write(rec.utterance_id + "\t" + " ".join(seg.pieces) + "\n")
                n += 1
        print(f"segmented {n} records into {options.output}")
    return 0


def cmd_evaluate(options) -> int:
    _require_inputs(options.refs, options.hyps)
    strategy = _strategy(options)
    refs = corpus.read_manifest(options.refs, name="refs")
    hyps = metrics.read_hypotheses(options.hyps)
    report = metrics.score_corpus(
        refs,
        hyps,
        strategy,
        ignore_case=options.case_fold,
        keep_hesitations=options.keep_hesitations,
    )
    print(f"utterances   {report.num_utterances}")
    print(f"missing hyps {report.num_missing_hyps}")
    print(f"ref words    {report.ref_words}")
    print(f"errors       {report.err_total} (sub {report.num_sub}, ins {report.num_ins}, del {report.num_del})")
    print(f"WER          {100.0 * report.wer:.2f}%")
    if report.err_total:
        print(f"S/I/D shares {report.s_share:.1f}% / {report.i_share:.1f}% / {report.d_share:.1f}%")
    if options.json:
        payload = {
            "model": options.model,
            "test": options.test,
            "ref_words": report.ref_words,
            "num_sub": report.num_sub,
            "num_ins": report.num_ins,
            "num_del": report.num_del,
            "num_utterances": report.num_utterances,
            "num_missing_hyps": report.num_missing_hyps,
            "wer": report.wer,
            "s_share": report.s_share,
            "i_share": report.i_share,
            "d_share": report.d_share,
        }
        with open(options.json, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if options.scores_out:
        reporting.write_scores_line(options.model, options.test, report, options.scores_out)
    return 0


def cmd_report(options) -> int:
    _require_inputs(options.scores)
    runs = reporting.read_scores_tsv(options.scores)
    tables = reporting.emit_report(runs, baseline=options.baseline, ordinary_test=options.ordinary_test)
    print(tables.wide)
    print()
    print(tables.werr_only)
    print()
    print(reporting.headline_reductions(list(tables.rows)))
    if options.json:
        with open(options.json, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(tables.to_json() + "\n")
    return 0


def cmd_check_tables(options) -> int:
    _require_inputs(options.fixtures)
    if options.fixtures:
        tables = {options.fixtures: published.read_fixture_tsv(options.fixtures)}
    else:
        tables = dict(published.BUILTIN_TABLES)
    failures = 0
    for label, rows in tables.items():
        findings = metrics.check_table_consistency(rows, werr_tolerance=options.tolerance)
        werr_issues = [f for f in findings if f.kind in ("werr-mismatch", "missing-baseline")]
        share_notes = [f for f in findings if f.kind == "share-sum"]
        failures += len(werr_issues)
        status = "FAIL" if werr_issues else "ok"
        print(f"{label}: {status} ({len(rows)} rows, {len(werr_issues)} WERR discrepancies, {len(share_notes)} share-sum notes)")
        for finding in findings:
            print(f"  [{finding.kind}] {finding.model} / {finding.test}: {finding.detail}")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disflkit",
        description="Corpus preparation and scoring toolkit for disfluency-robust ASR training data.",
    )
    sub = parser.add_subparsers(title="commands", required=True, dest="command")

    p = sub.add_parser("filter", help="select disfluent utterances from a manifest")
    p.add_argument("--in", dest="input", required=True, help="input manifest (JSON lines)")
    p.add_argument("--out", dest="output", required=True, help="accepted-records manifest to write")
    p.add_argument("--rejected", help="optional manifest for rejected records")
    p.add_argument("--rule", choices=RULE_CHOICES, default="composite", help="selection rule")
    p.add_argument("--max-words", type=int, default=4, help="short-transcript threshold (spoken tokens)")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("transform", help="rewrite partial words in a manifest")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--strategy", choices=STRATEGY_CHOICES, required=True)
    p.add_argument("--tag", default=DEFAULT_TAG, help="partial-word tag token")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("split", help="speaker-disjoint train/dev/test partitions")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out-prefix", required=True, help="writes <prefix>.train/dev/test.jsonl")
    p.add_argument("--ratios", default="0.8,0.1,0.1", help="train,dev,test shares summing to 1")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("mix", help="merge ordinary data with a fraction of disfluent data")
    p.add_argument("--ordinary", required=True)
    p.add_argument("--disfluencies", required=True)
    p.add_argument("--fraction", type=float, required=True, help="fraction of the disfluent pool, in [0, 1]")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--strategy", choices=STRATEGY_CHOICES, default="replace-tag")
    p.add_argument("--tag", default=DEFAULT_TAG)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("tokenize", help="build a wordpiece vocabulary and/or segment a manifest")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--vocab", required=True, help="vocabulary file (piece<TAB>log_prob[<TAB>special])")
    p.add_argument("--build", action="store_true", help="build the vocabulary from the input manifest")
    p.add_argument("--vocab-size", type=int, default=4000)
    p.add_argument("--tag", default=DEFAULT_TAG, help="atomic special symbol")
    p.add_argument("--out", dest="output", help="pieces table to write (utterance_id<TAB>pieces)")
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("evaluate", help="score a hypothesis table against reference transcripts")
    p.add_argument("--refs", required=True, help="reference manifest")
    p.add_argument("--hyps", required=True, help="hypothesis table (utterance_id<TAB>text)")
    p.add_argument("--strategy", choices=STRATEGY_CHOICES, default="delete", help="training strategy whose tags to strip")
    p.add_argument("--tag", default=DEFAULT_TAG)
    p.add_argument("--case-fold", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--keep-hesitations", action="store_true")
    p.add_argument("--model", default="model", help="model label for scores/JSON output")
    p.add_argument("--test", default="test", help="test-set label for scores/JSON output")
    p.add_argument("--json", help="write a machine-readable report here")
    p.add_argument("--scores-out", help="append a scores line for later `report` runs")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", help="render evaluation tables from a scores file")
    p.add_argument("--scores", required=True, help="scores TSV from `evaluate --scores-out`")
    p.add_argument("--baseline", required=True, help="model label of the baseline")
    p.add_argument("--ordinary-test", default=published.ORDINARY_TEST)
    p.add_argument("--json", help="write the machine-readable twin here")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("check-tables", help="cross-check published result tables")
    p.add_argument("--fixtures", help="fixture TSV; defaults to the built-in tables")
    p.add_argument("--tolerance", type=float, default=0.6, help="WERR tolerance in percentage points")
    p.set_defaults(func=cmd_check_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    options = parser.parse_args(argv)
    try:
        return options.func(options)
    except ToolkitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
