import pytest

from acadaid.cli import main
from acadaid.data import data_path


def toy(name: str) -> str:
    return str(data_path("toy", name))


def run_pipeline(out_dir, seed=0):
    """Run the full toy pipeline via the CLI into `out_dir`; returns the
    artifact paths plus a ready service config file."""
    out = str(out_dir)
    steps = [
        [
            "build-resource",
            "--acad", toy("acad.txt"), "--acad-format", "one-doc-per-line",
            "--nonacad", toy("nonacad.txt"), "--nonacad-format", "one-doc-per-line",
            "--embeddings", toy("embeddings.txt"),
            "--seed", str(seed), "--out", out,
        ],
        [
            "make-iwi", "--lexsub", toy("lexsub.jsonl"),
            "--resource", f"{out}/academic.tsv", "--out", f"{out}/iwi.tsv",
        ],
        [
            "train-iwi", "--iwi", f"{out}/iwi.tsv", "--sentences", toy("lexsub.jsonl"),
            "--freq-web", toy("freq_web.tsv"), "--freq-general", toy("freq_general.tsv"),
            "--freq-academic", toy("freq_academic.tsv"),
            "--embeddings", toy("embeddings.txt"),
            "--feature-set", "fe1", "--seed", str(seed),
            "--out", f"{out}/iwi_model.json",
        ],
        [
            "make-groups", "--lexsub", toy("lexsub.jsonl"),
            "--resource", f"{out}/academic.tsv",
            "--lexicon", toy("thesaurus.tsv"), "--lexicon", toy("paraphrases.tsv"),
            "--out", f"{out}/groups.jsonl",
        ],
        [
            "train-ranker", "--groups", f"{out}/groups.jsonl",
            "--resource", f"{out}/academic.tsv",
            "--acad-ngrams", f"{out}/acad_ngrams.tsv",
            "--nonacad-ngrams", f"{out}/nonacad_ngrams.tsv",
            "--embeddings", toy("embeddings.txt"),
            "--loss", "logistic", "--steps", "100", "--lr", "0.05", "--seed", str(seed),
            "--out", f"{out}/ranker_model.json",
        ],
    ]
    for argv in steps:
        code = main(argv)
        assert code == 0, f"pipeline step failed: {argv}"

    config = out_dir / "service.toml"
    config.write_text(
        f"""resource = "academic.tsv"
iwi_model = "iwi_model.json"
ranker_model = "ranker_model.json"
embeddings = "{toy('embeddings.txt')}"
freq_web = "{toy('freq_web.tsv')}"
freq_general = "{toy('freq_general.tsv')}"
freq_academic = "{toy('freq_academic.tsv')}"
acad_ngrams = "acad_ngrams.tsv"
nonacad_ngrams = "nonacad_ngrams.tsv"
lexicons = ["{toy('thesaurus.tsv')}", "{toy('paraphrases.tsv')}"]
port = 8040
""",
        encoding="utf-8",
    )
    return {
        "dir": out_dir,
        "config": config,
        "resource": out_dir / "academic.tsv",
        "iwi": out_dir / "iwi.tsv",
        "iwi_model": out_dir / "iwi_model.json",
        "groups": out_dir / "groups.jsonl",
        "ranker_model": out_dir / "ranker_model.json",
    }


@pytest.fixture(scope="session")
def toy_artifacts(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("toy_pipeline")
    return run_pipeline(out_dir)
