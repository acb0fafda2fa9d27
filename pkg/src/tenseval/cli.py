"""Command-line entry point: tag, score, build, survey, bleu, report.

stdout carries data, stderr carries diagnostics.  Exit codes: 0 success,
1 I/O or file-format error, 2 contract violation (alignment, configuration).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, pipeline
from .annotate import AnnotationError, annotate, tokenize
from .lexicon import LexiconError, MorphLexicon, default_lexicon
from .metrics import confusion, corpus_bleu, tense_accuracy
from .report import write_report
from .tense_en import SentenceLabel, classify, extract_chains
from .tense_fr import FrenchTense, label_sentence_fr, tense_survey

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONTRACT = 2


class CliError(Exception):
    def __init__(self, message: str, exit_code: int) -> None:
        super().__init__(message)
        self.exit_code = exit_code


def _usage_error(message: str) -> CliError:
    return CliError(message, EXIT_CONTRACT)


def _format_error(message: str) -> CliError:
    return CliError(message, EXIT_IO)


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return handle.read().splitlines()


def _lexicon(args: argparse.Namespace) -> MorphLexicon:
    return default_lexicon(args.lexicon_dir)


def _metadata(args: argparse.Namespace, lexicon: MorphLexicon) -> dict[str, str]:
    config = {
        key: value
        for key, value in sorted(vars(args).items())
        if key != "func" and value is not None
    }
    meta = {
        "toolkit": f"tenseval {__version__}",
        "lexicon_version": lexicon.version,
    }
    meta.update({k: str(v) for k, v in config.items()})
    return meta


def _print_header(meta: dict[str, str]) -> None:
    print("# " + " ".join(f"{k}={v}" for k, v in meta.items()))


def _parse_labels(lines: list[str], what: str) -> list[SentenceLabel]:
    labels = []
    for lineno, line in enumerate(lines, start=1):
        try:
            labels.append(SentenceLabel.parse(line))
        except ValueError as exc:
            raise _format_error(f"{what}:{lineno}: {exc}") from exc
    return labels


def _labels_from_file(
    path: str,
    pre_labeled: bool,
    lexicon: MorphLexicon,
    shall_as_future: bool,
) -> list[SentenceLabel]:
    lines = _read_lines(path)
    if pre_labeled:
        return _parse_labels(lines, Path(path).name)
    from .tense_en import label_sentence

    return [label_sentence(line, lexicon, shall_as_future) for line in lines]


# ------------------------------------------------------------------------ tag


def cmd_tag(args: argparse.Namespace) -> int:
    lexicon = _lexicon(args)
    lines = _read_lines(args.input)
    meta = _metadata(args, lexicon)

    if args.language == "fr":
        def work(line: str):
            return [t.value for t in label_sentence_fr(line, lexicon)]
    else:
        def work(line: str):
            annotated = annotate(tokenize(line), lexicon, args.shall_as_future)
            chains = extract_chains(annotated)
            return [
                {
                    "span": [chain.indices[0], chain.indices[-1]],
                    "tokens": list(chain.indices),
                    "category": classify(chain).value,
                }
                for chain in chains
            ]

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(work, lines))
    else:
        results = [work(line) for line in lines]

    if args.format == "jsonl":
        for i, (line, result) in enumerate(zip(lines, results)):
            if args.language == "fr":
                record = {"id": i, "text": line, "tenses": result}
            else:
                label = "+".join(c["category"] for c in result)
                record = {"id": i, "text": line, "label": label, "chains": result}
            print(json.dumps(record, ensure_ascii=False))
    else:
        _print_header(meta)
        for i, (line, result) in enumerate(zip(lines, results)):
            if args.language == "fr":
                label = "+".join(result)
            else:
                label = "+".join(c["category"] for c in result)
            text = line.replace("\t", " ")
            print(f"{i}\t{text}\t{label}")
    return EXIT_OK


# ---------------------------------------------------------------------- score


def cmd_score(args: argparse.Namespace) -> int:
    lexicon = _lexicon(args)
    ref_lines = _read_lines(args.ref)
    hyp_lines = _read_lines(args.hyp)
    if len(ref_lines) != len(hyp_lines):
        raise _usage_error(
            f"line count mismatch: {args.ref} has {len(ref_lines)} lines, "
            f"{args.hyp} has {len(hyp_lines)}"
        )
    if not ref_lines:
        raise _usage_error("empty input files")
    refs = (
        _parse_labels(ref_lines, Path(args.ref).name)
        if args.labels
        else _labels_from_file(args.ref, False, lexicon, args.shall_as_future)
    )
    hyps = (
        _parse_labels(hyp_lines, Path(args.hyp).name)
        if args.labels
        else _labels_from_file(args.hyp, False, lexicon, args.shall_as_future)
    )
    acc = tense_accuracy(refs, hyps, args.mode)
    matrix = confusion(refs, hyps)

    if args.json:
        record = {
            "n_correct": acc.n_correct,
            "n_total": acc.n_total,
            "accuracy": acc.accuracy,
            "mode": acc.mode,
            "structure_accuracy": matrix.structure_accuracy,
            "confusion": {
                f"{r}->{h}": count
                for (r, h), count in sorted(matrix.counts.items())
            },
            "metadata": _metadata(args, lexicon),
        }
        print(json.dumps(record, ensure_ascii=False, sort_keys=True))
        return EXIT_OK

    _print_header(_metadata(args, lexicon))
    print(f"N_c\t{acc.n_correct}")
    print(f"N_t\t{acc.n_total}")
    print(f"accuracy\t{acc.accuracy:.4f}")
    if matrix.structure_accuracy is not None:
        print(f"structure_accuracy\t{matrix.structure_accuracy:.4f}")
    for (ref, hyp), count in sorted(matrix.counts.items()):
        print(f"confusion\t{ref}\t{hyp}\t{count}")
    return EXIT_OK


# ----------------------------------------------------------------------- bleu


def cmd_bleu(args: argparse.Namespace) -> int:
    ref_lines = _read_lines(args.ref)
    hyp_lines = _read_lines(args.hyp)
    if len(ref_lines) != len(hyp_lines):
        raise _usage_error(
            f"line count mismatch: {len(ref_lines)} refs vs {len(hyp_lines)} hyps"
        )
    if not ref_lines:
        raise _usage_error("empty input files")
    score = corpus_bleu(ref_lines, hyp_lines)
    if args.json:
        print(json.dumps({"bleu": score}))
    else:
        print(f"BLEU\t{score:.4f}")
    return EXIT_OK


# --------------------------------------------------------------------- survey


def cmd_survey(args: argparse.Namespace) -> int:
    lexicon = _lexicon(args)
    try:
        target = FrenchTense.parse(args.tense)
    except ValueError as exc:
        raise _usage_error(str(exc)) from exc
    fr_lines = _read_lines(args.fr)
    en_lines = _read_lines(args.en)
    if len(fr_lines) != len(en_lines):
        raise _usage_error(
            f"line count mismatch: {len(fr_lines)} fr vs {len(en_lines)} en"
        )
    result = tense_survey(zip(fr_lines, en_lines), target, lexicon)
    if args.json:
        print(
            json.dumps(
                {
                    "tense": target.value,
                    "occurrences": result.occurrences,
                    "counts": {c.value: n for c, n in result.counts.items()},
                    "proportions": {
                        c.value: p for c, p in result.proportions.items()
                    },
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
        return EXIT_OK
    _print_header(_metadata(args, lexicon))
    print(f"tense\t{target.value}")
    print(f"occurrences\t{result.occurrences}")
    for cat, proportion in sorted(
        result.proportions.items(), key=lambda item: -item[1]
    ):
        print(f"{cat.value}\t{result.counts[cat]}\t{100 * proportion:.2f}%")
    return EXIT_OK


# ---------------------------------------------------------------------- build


def cmd_build(args: argparse.Namespace) -> int:
    lexicon = _lexicon(args)
    fr_lines = _read_lines(args.fr)
    en_lines = _read_lines(args.en)
    hyp_lines = _read_lines(args.hyp)
    if not (len(fr_lines) == len(en_lines) == len(hyp_lines)):
        raise _usage_error(
            "line count mismatch: "
            f"fr={len(fr_lines)} en={len(en_lines)} hyp={len(hyp_lines)}"
        )
    try:
        ratios = tuple(int(r) for r in args.ratios.split(":"))
    except ValueError as exc:
        raise _usage_error(f"bad --ratios {args.ratios!r}: {exc}") from exc
    if len(ratios) != 3 or any(r <= 0 for r in ratios):
        raise _usage_error(f"--ratios must be three positive integers, got {args.ratios!r}")

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def target(name: str) -> Path:
        path = outdir / name
        written.append(path)
        return path

    try:
        pairs = [
            pipeline.ParallelPair(str(i), fr, en)
            for i, (fr, en) in enumerate(zip(fr_lines, en_lines))
        ]
        stats: dict = {"input_pairs": len(pairs)}

        if args.sample_n is not None:
            pairs = pipeline.sample(
                pairs, args.sample_n, args.sample_method, args.seed
            )
            stats["sampled"] = len(pairs)

        pairs, clean_stats = pipeline.clean(pairs, lexicon)
        stats["clean"] = clean_stats.as_dict()

        if args.dedupe:
            seen: set[tuple[str, str]] = set()
            unique = []
            for pair in pairs:
                key = (pair.fr, pair.en)
                if key not in seen:
                    seen.add(key)
                    unique.append(pair)
            stats["deduped"] = len(pairs) - len(unique)
            pairs = unique

        pairs = pipeline.filter_tense_rich(pairs, lexicon)
        stats["tense_rich"] = len(pairs)

        if len(pairs) >= 10:
            train, valid, test = pipeline.split(pairs, ratios, args.seed)
            for name, subset in (("train", train), ("valid", valid), ("test", test)):
                with open(target(f"{name}.fr"), "w", encoding="utf-8") as f_fr:
                    f_fr.writelines(p.fr + "\n" for p in subset)
                with open(target(f"{name}.en"), "w", encoding="utf-8") as f_en:
                    f_en.writelines(p.en + "\n" for p in subset)
            stats["split"] = {
                "train": len(train),
                "valid": len(valid),
                "test": len(test),
                "ratios": list(ratios),
            }
        else:
            stats["split"] = "skipped (fewer than 10 pairs)"

        triples = [
            pipeline.ParallelTriple(
                p.id, p.fr, p.en, hyp_lines[int(p.id)]
            )
            for p in pairs
        ]
        triples = pipeline.label_triples(
            triples, lexicon, args.shall_as_future, jobs=args.jobs
        )
        pipeline.write_triples_jsonl(triples, target("labeled.jsonl"))

        disagreements = pipeline.select_disagreements(triples, args.mode)
        stats["disagreements"] = len(disagreements)
        pipeline.write_triples_jsonl(disagreements, target("disagreements.jsonl"))
        pipeline.emit_review_sheet(disagreements, target("review_sheet.tsv"))

        run_record = {"metadata": _metadata(args, lexicon), "stages": stats}
        with open(target("stats.json"), "w", encoding="utf-8") as handle:
            json.dump(run_record, handle, ensure_ascii=False, indent=2, sort_keys=True)
            handle.write("\n")
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise

    print(f"wrote {len(written)} files to {outdir}", file=sys.stderr)
    for key, value in stats.items():
        print(f"{key}\t{json.dumps(value, ensure_ascii=False, sort_keys=True)}")
    return EXIT_OK


# --------------------------------------------------------------------- report


def cmd_report(args: argparse.Namespace) -> int:
    lexicon = _lexicon(args)
    ref_lines = _read_lines(args.ref)
    hyp_lines = _read_lines(args.hyp)
    if len(ref_lines) != len(hyp_lines):
        raise _usage_error(
            f"line count mismatch: {len(ref_lines)} refs vs {len(hyp_lines)} hyps"
        )
    if not ref_lines:
        raise _usage_error("empty input files")
    refs = (
        _parse_labels(ref_lines, Path(args.ref).name)
        if args.labels
        else _labels_from_file(args.ref, False, lexicon, args.shall_as_future)
    )
    hyps = (
        _parse_labels(hyp_lines, Path(args.hyp).name)
        if args.labels
        else _labels_from_file(args.hyp, False, lexicon, args.shall_as_future)
    )
    paths = write_report(
        refs, hyps, args.outdir, args.mode, _metadata(args, lexicon)
    )
    for name, path in sorted(paths.items()):
        print(f"{name}\t{path}")
    return EXIT_OK


# ----------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tenseval",
        description="Tense labeling and tense-consistency evaluation "
        "for French-English machine translation.",
    )
    parser.add_argument(
        "--version", action="version", version=f"tenseval {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--lexicon-dir",
            default=None,
            help="override the packaged lexicon data directory",
        )
        p.add_argument(
            "--shall-as-future",
            action="store_true",
            help="classify 'shall' as a future auxiliary instead of a modal",
        )

    p_tag = sub.add_parser("tag", help="label sentences with tense structures")
    p_tag.add_argument("input", help="UTF-8 file, one sentence per line")
    p_tag.add_argument("--language", choices=("en", "fr"), default="en")
    p_tag.add_argument("--format", choices=("text", "jsonl"), default="text")
    p_tag.add_argument("--jobs", type=int, default=1)
    common(p_tag)
    p_tag.set_defaults(func=cmd_tag)

    p_score = sub.add_parser("score", help="tense prediction accuracy")
    p_score.add_argument("ref")
    p_score.add_argument("hyp")
    p_score.add_argument("--mode", choices=("sequence", "multiset", "set"),
                         default="multiset")
    p_score.add_argument(
        "--labels",
        action="store_true",
        help="inputs are label strings rather than raw sentences",
    )
    p_score.add_argument("--json", action="store_true")
    common(p_score)
    p_score.set_defaults(func=cmd_score)

    p_bleu = sub.add_parser("bleu", help="corpus BLEU")
    p_bleu.add_argument("ref")
    p_bleu.add_argument("hyp")
    p_bleu.add_argument("--json", action="store_true")
    p_bleu.set_defaults(func=cmd_bleu)

    p_survey = sub.add_parser(
        "survey", help="English counterparts of a French tense"
    )
    p_survey.add_argument("fr")
    p_survey.add_argument("en")
    p_survey.add_argument("--tense", required=True)
    p_survey.add_argument("--json", action="store_true")
    common(p_survey)
    p_survey.set_defaults(func=cmd_survey)

    p_build = sub.add_parser(
        "build", help="build test-set candidate artifacts from a parallel corpus"
    )
    p_build.add_argument("fr")
    p_build.add_argument("en")
    p_build.add_argument("hyp")
    p_build.add_argument("--outdir", required=True)
    p_build.add_argument("--seed", type=int, default=0)
    p_build.add_argument("--ratios", default="8:1:1")
    p_build.add_argument("--mode", choices=("sequence", "multiset", "set"),
                         default="sequence")
    p_build.add_argument("--jobs", type=int, default=1)
    p_build.add_argument("--sample-n", type=int, default=None)
    p_build.add_argument(
        "--sample-method", choices=("head", "random"), default="head"
    )
    p_build.add_argument(
        "--dedupe", action="store_true", help="drop duplicate (fr, en) pairs"
    )
    common(p_build)
    p_build.set_defaults(func=cmd_build)

    p_report = sub.add_parser(
        "report", help="accuracy/confusion/distribution report with figures"
    )
    p_report.add_argument("ref")
    p_report.add_argument("hyp")
    p_report.add_argument("--outdir", required=True)
    p_report.add_argument("--mode", choices=("sequence", "multiset", "set"),
                          default="multiset")
    p_report.add_argument("--labels", action="store_true")
    common(p_report)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"tenseval: {exc}", file=sys.stderr)
        return exc.exit_code
    except (LexiconError, AnnotationError) as exc:
        print(f"tenseval: {exc}", file=sys.stderr)
        return EXIT_IO
    except UnicodeDecodeError as exc:
        print(f"tenseval: cannot decode input as UTF-8: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"tenseval: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"tenseval: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
