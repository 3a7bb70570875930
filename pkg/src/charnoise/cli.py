"""Command-line entry point: ``charnoise <subcommand> ...``.

Exit codes: 0 success, 1 runtime or data error, 2 usage error. Diagnostics
go to stderr; data goes to files or stdout.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import sys
from pathlib import Path

from charnoise.corpus import CorpusError, corpus_stats, load_corpus, save_corpus
from charnoise.evaluation import BleuError, corpus_bleu, degradation_report, report_csv
from charnoise.natural import ErrorTableError, load_error_table, table_stats
from charnoise.pipeline import METHODS, NoiseSpec, SpecError, default_jobs, noise_corpus, sweep
from charnoise.representations import FilterBank, WeightFileError, filter_variance_profile, load_weights, variance_summary
from charnoise.rng import DEFAULT_SEED
from charnoise.synthetic import BUILTIN_LAYOUTS, LAYOUT_ALIASES, LayoutError, load_layout

log = logging.getLogger("charnoise")

DATA_ERRORS = (OSError, CorpusError, ErrorTableError, LayoutError, SpecError, BleuError, WeightFileError)


class UsageError(Exception):
    pass


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _dump_json(obj, path=None) -> None:
    text = json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _file_ref(path) -> dict | None:
    if path is None:
        return None
    return {"path": str(path), "sha256": _sha256(path)}


def _layout_ref(spec) -> dict | None:
    if spec is None:
        return None
    name = LAYOUT_ALIASES.get(spec, spec)
    if name in BUILTIN_LAYOUTS:
        return {"builtin": name}
    return _file_ref(spec)


def _parse_methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if not methods or bad:
        raise UsageError(f"--methods: expected a comma-separated subset of {','.join(METHODS)}, got {text!r}")
    return methods


def _parse_fractions(text: str) -> list[float]:
    try:
        fr = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--fractions: not a list of numbers: {text!r}") from None
    if not fr or any(not 0.0 <= f <= 1.0 for f in fr):
        raise UsageError(f"--fractions: values must be in [0, 1], got {text!r}")
    return fr


def _build_spec(args, fraction: float) -> NoiseSpec:
    methods = _parse_methods(args.methods)
    if not 0.0 <= fraction <= 1.0:
        raise UsageError(f"--fraction must be in [0, 1], got {fraction}")
    if "key" in methods and not args.layout:
        raise UsageError(
            "--methods key needs --layout (a layout TSV or one of: "
            + ", ".join(sorted(BUILTIN_LAYOUTS + tuple(LAYOUT_ALIASES))) + ")"
        )
    if "nat" in methods and not args.table:
        raise UsageError("--methods nat needs --table (an error table TSV)")
    layout = load_layout(args.layout) if args.layout else None
    table = load_error_table(args.table) if args.table else None
    if table is not None and args.fold_case:
        table = table.with_fold_case()
    return NoiseSpec(tuple(methods), fraction, args.seed, layout, table)


def _noise_config(args, **extra) -> dict:
    cfg = {
        "input": _file_ref(args.inp),
        "methods": _parse_methods(args.methods),
        "seed": args.seed,
        "layout": _layout_ref(args.layout),
        "table": _file_ref(args.table),
        "fold_case": args.fold_case,
    }
    cfg.update(extra)
    return cfg


def cmd_noise(args) -> int:
    spec = _build_spec(args, args.fraction)
    corpus = load_corpus(args.inp)
    noised, manifest = noise_corpus(corpus, spec, jobs=args.jobs)
    save_corpus(noised, args.out)
    record = {
        "command": "noise",
        "config": _noise_config(args, fraction=args.fraction),
        "output": _file_ref(args.out),
        **manifest.as_dict(),
    }
    _dump_json(record, f"{args.out}.manifest.json")
    log.info("noised %d sentences -> %s", corpus.line_count, args.out)
    return 0


def _fraction_tag(f: float) -> str:
    return f"f{f:g}"


def cmd_sweep(args) -> int:
    fractions = _parse_fractions(args.fractions)
    spec = _build_spec(args, 1.0)
    corpus = load_corpus(args.inp)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.inp).name
    points = []
    for p in sweep(corpus, spec, fractions, jobs=args.jobs):
        out = out_dir / f"{stem}.{_fraction_tag(p.fraction)}"
        save_corpus(p.corpus, out)
        points.append({"fraction": p.fraction, "output": _file_ref(out), **p.manifest.as_dict()})
        log.info("fraction %g -> %s", p.fraction, out)
    record = {
        "command": "sweep",
        "config": _noise_config(args, fractions=fractions),
        "points": points,
    }
    _dump_json(record, out_dir / f"{stem}.sweep.manifest.json")
    return 0


def cmd_stats(args) -> int:
    if args.table is None:
        if not args.corpus:
            raise UsageError("stats needs --corpus, or --table with --train/--test")
        result = {str(p): corpus_stats(load_corpus(p)) for p in args.corpus}
        text = "".join(f"{p}\t{s['sentences']} sentences\t{s['words']} words\n" for p, s in result.items())
    else:
        if args.train is None or args.test is None:
            raise UsageError("--table requires both --train and --test")
        table = load_error_table(args.table)
        if args.fold_case:
            table = table.with_fold_case()
        train, test = load_corpus(args.train), load_corpus(args.test)
        stats = table_stats(table, train, test, long_word_min=args.long_min)
        result = {
            **stats.as_dict(),
            "long_word_min": args.long_min,
            "train": corpus_stats(train),
            "test": corpus_stats(test),
        }
        text = stats.to_text()
    if args.format == "text":
        sys.stdout.write(text)
    else:
        _dump_json(result)
    return 0


def _read_runs(path: Path) -> list[tuple[float, Path, Path]]:
    runs = []
    base = path.parent
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise BleuError(f"{path}:{lineno}: expected fraction<TAB>hypothesis<TAB>reference")
            try:
                fr = float(parts[0])
            except ValueError:
                raise BleuError(f"{path}:{lineno}: bad fraction {parts[0]!r}") from None
            runs.append((fr, base / parts[1], base / parts[2]))
    return runs


def cmd_bleu(args) -> int:
    kw = dict(max_n=args.max_n, case_sensitive=not args.lowercase, smooth=args.smooth)
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    if args.runs:
        curve, results = degradation_report(_read_runs(Path(args.runs)), noise_method=args.method or "", **kw)
        text = report_csv(results)
        if args.csv:
            Path(args.csv).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        if args.json:
            _dump_json(
                {
                    "noise_method": curve.noise_method,
                    "curve": [{"fraction": f, "bleu": b} for f, b in curve.points],
                    "non_increasing": curve.is_non_increasing(),
                    "runs": [{"fraction": r.fraction, "hypothesis": r.hypothesis, "reference": r.reference,
                              **r.score.as_dict()} for r in results],
                },
                args.json,
            )
        return 0
    if not (args.hyp and args.ref):
        raise UsageError("bleu needs --hyp and --ref, or --runs")
    score = corpus_bleu(load_corpus(args.hyp), load_corpus(args.ref), **kw)
    _dump_json(score.as_dict(), args.json)
    return 0


def cmd_analyze_filters(args) -> int:
    banks = {}
    for p in args.weights:
        obj = load_weights(p)
        if not isinstance(obj, FilterBank):
            raise WeightFileError(f"{p}: not a charcnn weight file")
        banks[Path(p).stem] = obj
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bank", "dim", "avg_variance"])
    summary = {}
    for name, bank in banks.items():
        prof = filter_variance_profile(bank)
        for d, v in enumerate(prof):
            w.writerow([name, d, repr(float(v))])
        summary[name] = {
            "num_filters": bank.num_filters,
            "width": bank.width,
            "dim": bank.dim,
            "profile": [float(v) for v in prof],
            **variance_summary(prof).as_dict(),
        }
    if args.csv:
        Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
    if args.json or not args.csv:
        _dump_json(summary, args.json)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _add_noise_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="inp", required=True, help="tokenized source-side corpus")
    p.add_argument("--methods", required=True, help=f"comma-separated subset of {','.join(METHODS)}")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"run seed (default {DEFAULT_SEED})")
    p.add_argument("--layout", help="keyboard layout TSV or builtin name (de, fr, cs)")
    p.add_argument("--table", help="natural error table TSV")
    p.add_argument("--fold-case", action="store_true", help="case-insensitive error table lookup")
    p.add_argument("--jobs", type=int, default=default_jobs(), help="worker processes (default: all CPUs)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="charnoise", description="Noise generation and evaluation for MT robustness experiments.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("noise", help="noise a corpus")
    _add_noise_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--fraction", type=float, default=1.0, help="probability each eligible token is noised")
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("sweep", help="noise a corpus at several fractions (nested selections)")
    _add_noise_flags(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--fractions", required=True, help="comma-separated, e.g. 0,0.25,0.5,1")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stats", help="corpus and error-table statistics")
    p.add_argument("--corpus", action="append", help="corpus file (repeatable)")
    p.add_argument("--table")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--long-min", type=int, default=5, help="minimum length of a 'long' word (default 5)")
    p.add_argument("--fold-case", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bleu", help="corpus BLEU or a degradation report")
    p.add_argument("--hyp")
    p.add_argument("--ref")
    p.add_argument("--runs", help="TSV of fraction, hypothesis path, reference path")
    p.add_argument("--method", help="noise method label for the report")
    p.add_argument("--csv", help="write the degradation CSV here")
    p.add_argument("--json", help="write the JSON report here")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--lowercase", action="store_true")
    p.add_argument("--smooth", action="store_true", help="add-one smoothing for n > 1")
    p.set_defaults(func=cmd_bleu)

    p = sub.add_parser("analyze-filters", help="per-dimension filter weight variance")
    p.add_argument("--weights", nargs="+", required=True, help="charcnn weight file(s)")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_analyze_filters)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(name)s: %(message)s", stream=sys.stderr)
        return args.func(args)
    except UsageError as exc:
        print(f"charnoise: error: {exc}", file=sys.stderr)
        return 2
    except DATA_ERRORS as exc:
        print(f"charnoise: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
