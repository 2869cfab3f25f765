"""Command-line entry point: one subcommand per pipeline stage.

Option precedence, highest first: ACADAID_* environment variables, then
explicit flags, then the --config TOML file, then built-in defaults. All
randomness flows from --seed; identical inputs and seed give byte-identical
outputs.
"""

import argparse
import os
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .corpus import ACADEMIC, FORMATS, NONACADEMIC, downsample, load_corpus
from .embedrank import load_embeddings
from .features import FrequencyLists, load_freq_list
from .lexsub import (
    build_groups,
    derive_iwi,
    derive_pairs,
    iwi_stats,
    load_lexsub,
    load_synonym_lexicon,
    read_groups,
    read_iwi,
    write_groups,
    write_iwi,
    write_pairs,
)
from .ngrams import count_corpus, read_table, write_table
from .postag import LexiconTagger, load_tagged_corpus
from .resource import BuildConfig, build_nonacademic, build_resource, coverage
from .resource import import_external, read_resource, write_resource
from .tfidf import keyphrase_table, load_stopwords

ENV_PREFIX = "ACADAID_"


def _load_cli_config(path):
    if path is None:
        return {}
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _resolve(args, config, name, default=None, convert=str):
    """env > flag > config file > default."""
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is not None:
        return convert(raw)
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in config:
        return config[name]
    return default


def _resolve_required(args, config, name, convert=str):
    value = _resolve(args, config, name, None, convert)
    if value is None:
        raise SystemExit2(f"missing required option --{name.replace('_', '-')}")
    return value


class SystemExit2(Exception):
    """Usage error surfaced with exit code 2."""


def _load_external_lists(paths):
    return tuple(import_external(p) for p in paths or [])


def _freq_lists(args, config):
    return FrequencyLists(
        web=load_freq_list(_resolve_required(args, config, "freq_web")),
        general=load_freq_list(_resolve_required(args, config, "freq_general")),
        academic=load_freq_list(_resolve_required(args, config, "freq_academic")),
    )


def _sentences_by_id(path):
    return {inst.id: inst.tokens for inst in load_lexsub(path)}


# -- subcommands -----------------------------------------------------------


def cmd_build_resource(args):
    config = _load_cli_config(args.config)
    out_dir = Path(_resolve_required(args, config, "out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    threads = _resolve(args, config, "threads", os.cpu_count() or 1, int)
    seed = _resolve(args, config, "seed", 0, int)
    max_n = _resolve(args, config, "max_n", 4, int)

    acad = load_corpus(
        _resolve_required(args, config, "acad"),
        _resolve(args, config, "acad_format", "one-doc-per-line"),
        ACADEMIC,
        threads,
    )
    nonacad = load_corpus(
        _resolve_required(args, config, "nonacad"),
        _resolve(args, config, "nonacad_format", "one-doc-per-line"),
        NONACADEMIC,
        threads,
    )
    target = _resolve(args, config, "downsample_tokens", acad.token_count, int)
    nonacad = downsample(nonacad, target, seed)

    stopwords_path = _resolve(args, config, "stopwords", None)
    tagged_path = _resolve(args, config, "tagged_acad", None)
    build_cfg = BuildConfig(
        threshold=_resolve(args, config, "threshold", 1.5, float),
        min_count=_resolve(args, config, "min_count", 5, int),
        k_per_doc=_resolve(args, config, "k_per_doc", 10, int),
        stopword_mode=_resolve(args, config, "stopword_mode", "remove"),
        max_n=max_n,
        embeddings=load_embeddings(_resolve_required(args, config, "embeddings")),
        tagger=LexiconTagger(),
        tagged_docs=load_tagged_corpus(tagged_path) if tagged_path else None,
        stopwords=load_stopwords(stopwords_path) if stopwords_path else None,
    )

    acad_table = count_corpus(acad, max_n)
    nonacad_table = count_corpus(nonacad, max_n)
    write_table(acad_table, out_dir / "acad_ngrams.tsv")
    write_table(nonacad_table, out_dir / "nonacad_ngrams.tsv")

    tfidf_rows = keyphrase_table(
        acad, build_cfg.k_per_doc, build_cfg.stopword_mode, max_n, build_cfg.stopwords
    )
    (out_dir / "tfidf_keyphrases.tsv").write_text(
        "\n".join(
            ["tokens\tn\tbest_score\tdf"]
            + [f"{' '.join(r.phrase)}\t{len(r.phrase)}\t{r.score!r}\t{r.df}" for r in tfidf_rows]
        )
        + "\n",
        encoding="utf-8",
    )

    academic = build_resource(acad, nonacad, build_cfg)
    nonacademic = build_nonacademic(acad, nonacad, build_cfg)
    write_resource(academic.resource, out_dir / "academic.tsv")
    write_resource(nonacademic.resource, out_dir / "nonacademic.tsv")

    report_lines = ["label\tsource\tn\tcandidates\tkept"]
    for label, result in (("academic", academic), ("nonacademic", nonacademic)):
        for (source, n) in sorted(result.report):
            counts = result.report[(source, n)]
            report_lines.append(
                f"{label}\t{source}\t{n}\t{counts['candidates']}\t{counts['kept']}"
            )
    (out_dir / "report.tsv").write_text("\n".join(report_lines) + "\n", encoding="utf-8")

    print(f"academic entries: {len(academic.resource)}")
    print(f"nonacademic entries: {len(nonacademic.resource)}")
    return 0


def cmd_coverage(args):
    config = _load_cli_config(args.config)
    reference = import_external(_resolve_required(args, config, "list"))
    freq_path = _resolve(args, config, "freq", None)
    if freq_path:
        table = read_table(freq_path)
    else:
        corpus = load_corpus(
            _resolve_required(args, config, "corpus"),
            _resolve(args, config, "format", "one-doc-per-line"),
            ACADEMIC,
        )
        # phrases beyond the quad-gram bound simply count as absent
        table = count_corpus(corpus, min(4, max(len(p) for p in reference)))
    pct = coverage(reference, table)
    print(f"{pct:.2f}")
    return 0


def cmd_make_iwi(args):
    config = _load_cli_config(args.config)
    instances = load_lexsub(_resolve_required(args, config, "lexsub"))
    resource = read_resource(_resolve_required(args, config, "resource"))
    external = _load_external_lists(args.external)
    dataset = derive_iwi(instances, resource, external)
    write_iwi(dataset, _resolve_required(args, config, "out"))
    stats = iwi_stats(dataset)
    print(f"informal: {stats.informal_tokens}  formal: {stats.formal_tokens}")
    return 0


def cmd_iwi_stats(args):
    config = _load_cli_config(args.config)
    dataset = read_iwi(_resolve_required(args, config, "iwi"))
    stats = iwi_stats(dataset)
    print(f"informal_tokens\t{stats.informal_tokens}")
    print(f"formal_tokens\t{stats.formal_tokens}")
    print(f"informal_types\t{stats.informal_types}")
    print(f"formal_types\t{stats.formal_types}")
    return 0


def cmd_make_pairs(args):
    config = _load_cli_config(args.config)
    instances = load_lexsub(_resolve_required(args, config, "lexsub"))
    resource = read_resource(_resolve_required(args, config, "resource"))
    acad = read_table(_resolve_required(args, config, "acad_ngrams"))
    nonacad = read_table(_resolve_required(args, config, "nonacad_ngrams"))
    pairs = derive_pairs(instances, resource, acad, nonacad, _load_external_lists(args.external))
    write_pairs(pairs, _resolve_required(args, config, "out"))
    print(f"pairs: {len(pairs)}")
    return 0


def cmd_make_groups(args):
    config = _load_cli_config(args.config)
    instances = load_lexsub(_resolve_required(args, config, "lexsub"))
    resource = read_resource(_resolve_required(args, config, "resource"))
    lexicon_paths = args.lexicon or config.get("lexicon", [])
    lexicons = [load_synonym_lexicon(p) for p in lexicon_paths]
    result = build_groups(instances, resource, lexicons, _load_external_lists(args.external))
    write_groups(result.groups, _resolve_required(args, config, "out"))
    print(f"groups: {len(result.groups)}  dropped: {result.dropped}")
    return 0


def cmd_train_iwi(args):
    import numpy as np

    from .iwi import featurize, save_model, train

    config = _load_cli_config(args.config)
    sentences = _sentences_by_id(_resolve_required(args, config, "sentences"))
    dataset = read_iwi(_resolve_required(args, config, "iwi"), sentences)
    freqs = _freq_lists(args, config)
    embeddings = load_embeddings(_resolve_required(args, config, "embeddings"))
    tagger = LexiconTagger()
    X = np.array([featurize(inst, freqs, embeddings, tagger) for inst in dataset])
    y = [inst.label for inst in dataset]
    model = train(
        X,
        y,
        feature_set=_resolve(args, config, "feature_set", "fe1"),
        c=_resolve(args, config, "c", 1.0, float),
        gamma=_resolve(args, config, "gamma", None, float),
        seed=_resolve(args, config, "seed", 0, int),
    )
    save_model(model, _resolve_required(args, config, "out"))
    print(f"trained on {len(dataset)} instances ({model.feature_set})")
    return 0


def cmd_eval_iwi(args):
    import numpy as np

    from .iwi import StratifiedBaseline, evaluate, featurize, load_model, metrics_from_predictions

    config = _load_cli_config(args.config)
    model = load_model(_resolve_required(args, config, "model"))
    sentences = _sentences_by_id(_resolve_required(args, config, "sentences"))
    dataset = read_iwi(_resolve_required(args, config, "iwi"), sentences)
    freqs = _freq_lists(args, config)
    embeddings = load_embeddings(_resolve_required(args, config, "embeddings"))
    tagger = LexiconTagger()
    X = np.array([featurize(inst, freqs, embeddings, tagger) for inst in dataset])
    gold = [inst.label for inst in dataset]
    metrics = evaluate(model, X, gold)
    print(f"precision\t{metrics.precision:.4f}")
    print(f"recall\t{metrics.recall:.4f}")
    print(f"f1\t{metrics.f1:.4f}")

    baseline_path = _resolve(args, config, "baseline_from", None)
    if baseline_path:
        train_labels = [inst.label for inst in read_iwi(baseline_path)]
        baseline = StratifiedBaseline(train_labels, _resolve(args, config, "seed", 0, int))
        predictions = [baseline.predict() for _ in gold]
        b = metrics_from_predictions(predictions, gold)
        print(f"baseline_precision\t{b.precision:.4f}")
        print(f"baseline_recall\t{b.recall:.4f}")
        print(f"baseline_f1\t{b.f1:.4f}")
    return 0


def _rank_context(args, config):
    from .ranker import RankFeatureContext

    return RankFeatureContext(
        resource=read_resource(_resolve_required(args, config, "resource")),
        acad_table=read_table(_resolve_required(args, config, "acad_ngrams")),
        nonacad_table=read_table(_resolve_required(args, config, "nonacad_ngrams")),
        embeddings=load_embeddings(_resolve_required(args, config, "embeddings")),
        external_lists=_load_external_lists(args.external),
    )


def cmd_train_ranker(args):
    from .ranker import featurize_groups, save_model, train_ranker

    config = _load_cli_config(args.config)
    groups = read_groups(_resolve_required(args, config, "groups"))
    features = featurize_groups(groups, _rank_context(args, config))
    model = train_ranker(
        features,
        loss=_resolve(args, config, "loss", "logistic"),
        steps=_resolve(args, config, "steps", 100, int),
        learning_rate=_resolve(args, config, "lr", 0.05, float),
        seed=_resolve(args, config, "seed", 0, int),
        hidden=_resolve(args, config, "hidden", 0, int),
    )
    save_model(model, _resolve_required(args, config, "out"))
    print(
        f"trained on {len(features) - model.skipped_groups} groups "
        f"(skipped {model.skipped_groups}); "
        f"loss {model.loss_history[0]:.4f} -> {model.loss_history[-1]:.4f}"
    )
    return 0


def cmd_eval_ranker(args):
    from .ranker import featurize_groups, load_model, mrr

    config = _load_cli_config(args.config)
    model = load_model(_resolve_required(args, config, "model"))
    groups = read_groups(_resolve_required(args, config, "groups"))
    features = featurize_groups(groups, _rank_context(args, config))
    metrics = mrr(model, features)
    print(f"mrr\t{metrics.mrr:.4f}")
    print(f"groups\t{metrics.evaluated}")
    return 0


def cmd_analyze(args):
    from .service.app import analysis_to_response
    from .service.config import load_config
    from .service.engine import AnalysisEngine

    service_config = load_config(args.config)
    engine = AnalysisEngine.from_config(service_config)
    text = sys.stdin.read()
    result = engine.analyze(text, args.k)
    print(analysis_to_response(result).model_dump_json())
    return 0


def cmd_serve(args):
    import signal

    import uvicorn

    from .service.app import app_from_config
    from .service.config import load_config

    service_config = load_config(args.config)
    if os.environ.get(ENV_PREFIX + "HOST") is None and args.host is not None:
        service_config.host = args.host
    if os.environ.get(ENV_PREFIX + "PORT") is None and args.port is not None:
        service_config.port = args.port
    app = app_from_config(service_config)
    if hasattr(signal, "SIGHUP"):
        # hot-swap the artifact snapshot without dropping the listener
        signal.signal(signal.SIGHUP, lambda *_: app.state.acadaid.reload())
    uvicorn.run(app, host=service_config.host, port=service_config.port)
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acadaid",
        description="Academic writing aid: resource compilation, informal word "
        "identification, and paraphrase ranking.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--config", help="TOML config file; flags override it")
        p.add_argument("--seed", type=int, help="random seed (default 0)")
        p.add_argument("--threads", type=int, help="worker threads for loading")
        return p

    p = add("build-resource", cmd_build_resource, "compile academic/non-academic resources")
    p.add_argument("--acad", help="academic corpus path")
    p.add_argument("--acad-format", dest="acad_format", choices=FORMATS)
    p.add_argument("--nonacad", help="non-academic corpus path")
    p.add_argument("--nonacad-format", dest="nonacad_format", choices=FORMATS)
    p.add_argument("--embeddings", help="word-vector text file")
    p.add_argument("--tagged-acad", dest="tagged_acad", help="pre-tagged academic corpus")
    p.add_argument("--downsample-tokens", dest="downsample_tokens", type=int)
    p.add_argument("--threshold", type=float, help="ratio threshold (default 1.5)")
    p.add_argument("--min-count", dest="min_count", type=int, help="minimum academic count")
    p.add_argument("--k-per-doc", dest="k_per_doc", type=int, help="keyphrases per document")
    p.add_argument("--stopword-mode", dest="stopword_mode", choices=("keep", "remove"))
    p.add_argument("--max-n", dest="max_n", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--stopwords", help="custom stopword list file")
    p.add_argument("--out", help="output directory")

    p = add("coverage", cmd_coverage, "coverage of a reference list in a corpus")
    p.add_argument("--list", help="reference list, one phrase per line")
    p.add_argument("--freq", help="precomputed n-gram table TSV")
    p.add_argument("--corpus", help="corpus path (alternative to --freq)")
    p.add_argument("--format", choices=FORMATS)

    p = add("make-iwi", cmd_make_iwi, "derive the informal-word dataset")
    p.add_argument("--lexsub", help="lexical substitution JSONL")
    p.add_argument("--resource", help="academic resource TSV")
    p.add_argument("--external", action="append", help="external academic list (repeatable)")
    p.add_argument("--out", help="output IWI TSV")

    p = add("iwi-stats", cmd_iwi_stats, "token/type counts of an IWI dataset")
    p.add_argument("--iwi", help="IWI TSV")

    p = add("make-pairs", cmd_make_pairs, "derive informal->academic word pairs")
    p.add_argument("--lexsub")
    p.add_argument("--resource")
    p.add_argument("--acad-ngrams", dest="acad_ngrams")
    p.add_argument("--nonacad-ngrams", dest="nonacad_ngrams")
    p.add_argument("--external", action="append")
    p.add_argument("--out")

    p = add("make-groups", cmd_make_groups, "build 4-candidate ranking groups")
    p.add_argument("--lexsub")
    p.add_argument("--resource")
    p.add_argument("--lexicon", action="append", help="synonym lexicon TSV (repeatable)")
    p.add_argument("--external", action="append")
    p.add_argument("--out")

    p = add("train-iwi", cmd_train_iwi, "train the informal-word classifier")
    p.add_argument("--iwi", help="training IWI TSV")
    p.add_argument("--sentences", help="lexsub JSONL supplying sentence context")
    p.add_argument("--freq-web", dest="freq_web")
    p.add_argument("--freq-general", dest="freq_general")
    p.add_argument("--freq-academic", dest="freq_academic")
    p.add_argument("--embeddings")
    p.add_argument("--feature-set", dest="feature_set", choices=("fe1", "fe2", "fe3"))
    p.add_argument("--c", type=float, help="margin penalty (default 1.0)")
    p.add_argument("--gamma", type=float, help="kernel width (default 1/(d*var))")
    p.add_argument("--out", help="model output path")

    p = add("eval-iwi", cmd_eval_iwi, "evaluate the classifier (and baseline)")
    p.add_argument("--model")
    p.add_argument("--iwi")
    p.add_argument("--sentences")
    p.add_argument("--freq-web", dest="freq_web")
    p.add_argument("--freq-general", dest="freq_general")
    p.add_argument("--freq-academic", dest="freq_academic")
    p.add_argument("--embeddings")
    p.add_argument("--baseline-from", dest="baseline_from", help="training IWI TSV for the baseline")

    p = add("train-ranker", cmd_train_ranker, "train the paraphrase ranker")
    p.add_argument("--groups", help="ranking groups JSONL")
    p.add_argument("--resource")
    p.add_argument("--acad-ngrams", dest="acad_ngrams")
    p.add_argument("--nonacad-ngrams", dest="nonacad_ngrams")
    p.add_argument("--embeddings")
    p.add_argument("--external", action="append")
    p.add_argument("--loss", choices=("logistic", "softmax"))
    p.add_argument("--steps", type=int, help="training steps (e.g. 50, 100, 200)")
    p.add_argument("--lr", type=float, help="learning rate (default 0.05)")
    p.add_argument("--hidden", type=int, choices=(0, 16), help="hidden layer width")
    p.add_argument("--out")

    p = add("eval-ranker", cmd_eval_ranker, "mean reciprocal rank on groups")
    p.add_argument("--model")
    p.add_argument("--groups")
    p.add_argument("--resource")
    p.add_argument("--acad-ngrams", dest="acad_ngrams")
    p.add_argument("--nonacad-ngrams", dest="nonacad_ngrams")
    p.add_argument("--embeddings")
    p.add_argument("--external", action="append")

    p = add("analyze", cmd_analyze, "analyze text from stdin, print JSON")
    p.add_argument("-k", type=int, default=4, help="suggestions per flagged token")

    p = add("serve", cmd_serve, "run the HTTP service")
    p.add_argument("--host")
    p.add_argument("--port", type=int)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # stage failure: exit 1 with the underlying error
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
