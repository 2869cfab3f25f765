"""Lexical-substitution data and the datasets derived from it.

From sentences with human-annotated substitution candidates we derive:
informal/formal token labels, informal->academic word pairs, 4-candidate
ranking groups, and a filtered academic paraphrase corpus.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .corpus import normalize_tokens
from .ngrams import FrequencyTable, merge, rel_freq
from .resource import Resource

INFORMAL = "informal"
FORMAL = "formal"


class LexSubFormatError(ValueError):
    """Raised for malformed lexical-substitution records."""


@dataclass(frozen=True)
class LexSubInstance:
    id: str
    tokens: tuple[str, ...]
    target_index: int
    target: str
    pos: str
    substitutes: tuple[tuple[str, int], ...]  # (word, annotator count)


@dataclass(frozen=True)
class IWIInstance:
    sentence_id: str
    tokens: tuple[str, ...]
    token_index: int
    label: str

    @property
    def token(self) -> str:
        return self.tokens[self.token_index]


@dataclass(frozen=True)
class WordPair:
    informal: str
    academic: str


@dataclass(frozen=True)
class Candidate:
    word: str
    is_academic: bool
    relevance: int


@dataclass(frozen=True)
class RankingGroup:
    instance: LexSubInstance
    candidates: tuple[Candidate, ...]

    def __post_init__(self):
        if len(self.candidates) != 4:
            raise ValueError(f"group for {self.instance.id!r} must have exactly 4 candidates")


@dataclass
class GroupBuildResult:
    groups: list[RankingGroup]
    dropped: int


@dataclass
class IwiStats:
    informal_tokens: int = 0
    formal_tokens: int = 0
    informal_types: int = 0
    formal_types: int = 0


def _parse_record(record: dict, where: str) -> LexSubInstance:
    try:
        tokens = tuple(str(t) for t in record["tokens"])
        target_index = int(record["target_index"])
        pos = str(record.get("pos", ""))
        subs = tuple(
            (str(s["word"]), int(s["weight"])) for s in record.get("substitutes", [])
        )
        rec_id = str(record["id"])
    except (KeyError, TypeError) as exc:
        raise LexSubFormatError(f"{where}: missing or malformed field ({exc})") from exc
    if not 0 <= target_index < len(tokens):
        raise LexSubFormatError(
            f"{where}: target_index {target_index} out of range for {len(tokens)} tokens"
        )
    for word, weight in subs:
        if weight < 1:
            raise LexSubFormatError(f"{where}: substitute {word!r} has weight {weight} < 1")
    norm = normalize_tokens(tokens[target_index])
    if len(norm) != 1:
        raise LexSubFormatError(
            f"{where}: target token {tokens[target_index]!r} does not normalize to one token"
        )
    return LexSubInstance(rec_id, tokens, target_index, norm[0], pos, subs)


def load_lexsub(path) -> list[LexSubInstance]:
    """JSONL records:
    {"id":str,"tokens":[str],"target_index":int,"pos":str,
     "substitutes":[{"word":str,"weight":int}]}
    """
    path = Path(path)
    instances = []
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LexSubFormatError(f"{path}: record {i}: invalid JSON ({exc.msg})") from exc
        instances.append(_parse_record(record, f"{path}: record {i}"))
    return instances


def instance_to_record(inst: LexSubInstance) -> dict:
    return {
        "id": inst.id,
        "tokens": list(inst.tokens),
        "target_index": inst.target_index,
        "pos": inst.pos,
        "substitutes": [{"word": w, "weight": c} for w, c in inst.substitutes],
    }


def write_lexsub(instances, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for inst in instances:
            fh.write(json.dumps(instance_to_record(inst)) + "\n")


def is_academic(word_or_phrase, resource: Resource, external_lists=()) -> bool:
    """True iff the normalized key is an academic resource entry or a
    member of any imported external list."""
    if isinstance(word_or_phrase, str):
        key = tuple(normalize_tokens(word_or_phrase))
    else:
        key = tuple(word_or_phrase)
    if not key:
        return False
    entry = resource.entries.get(key)
    if entry is not None and entry.label == "academic":
        return True
    return any(key in ext for ext in external_lists)


def _academic_substitutes(inst: LexSubInstance, resource, external_lists):
    return [
        (w, c) for w, c in inst.substitutes if is_academic(w, resource, external_lists)
    ]


def derive_iwi(instances, resource: Resource, external_lists=()) -> list[IWIInstance]:
    """Label each target token: informal iff the target is non-academic and
    at least one substitute is academic, formal otherwise. Non-target
    tokens are not emitted."""
    out = []
    for inst in instances:
        if is_academic(inst.target, resource, external_lists):
            label = FORMAL
        elif _academic_substitutes(inst, resource, external_lists):
            label = INFORMAL
        else:
            label = FORMAL
        out.append(IWIInstance(inst.id, inst.tokens, inst.target_index, label))
    return out


def derive_pairs(
    instances,
    resource: Resource,
    acad_table: FrequencyTable,
    nonacad_table: FrequencyTable,
    external_lists=(),
) -> set[WordPair]:
    """Word pairs (target, substitute) where the target is non-academic,
    the substitute is academic, and the target's combined reference-corpus
    unigram rate is strictly higher than the substitute's.

    The frequency guard keeps proper academic terms that the resource
    misses from being proposed for substitution. Multi-word substitutes
    are skipped.
    """
    combined = merge(acad_table, nonacad_table)

    def unigram_rate(word: str) -> float:
        return rel_freq(combined, (word,))

    pairs = set()
    for inst in instances:
        if is_academic(inst.target, resource, external_lists):
            continue
        for word, _ in inst.substitutes:
            norm = normalize_tokens(word)
            if len(norm) != 1:
                continue
            sub = norm[0]
            if not is_academic(sub, resource, external_lists):
                continue
            if unigram_rate(inst.target) > unigram_rate(sub):
                pairs.add(WordPair(inst.target, sub))
    return pairs


def _single_word(word: str) -> str | None:
    norm = normalize_tokens(word)
    return norm[0] if len(norm) == 1 else None


def build_groups(
    instances,
    resource: Resource,
    fallback_lexicons=(),
    external_lists=(),
) -> GroupBuildResult:
    """For each informal target, pick 2 academic + 2 non-academic
    candidates from the gold substitutes ordered by annotator count
    (descending, ties lexicographic). Deficits are backfilled from the
    fallback lexicons in the given order with relevance 0; targets that
    cannot fill both sides are dropped and counted.
    """
    groups = []
    dropped = 0
    for inst in instances:
        if is_academic(inst.target, resource, external_lists):
            continue
        gold: dict[str, int] = {}
        for word, weight in inst.substitutes:
            w = _single_word(word)
            if w is None or w == inst.target:
                continue
            gold[w] = gold.get(w, 0) + weight
        acad_gold = sorted(
            ((w, c) for w, c in gold.items() if is_academic(w, resource, external_lists)),
            key=lambda wc: (-wc[1], wc[0]),
        )
        if not acad_gold:
            continue  # formal target: nothing to paraphrase
        nonacad_gold = sorted(
            ((w, c) for w, c in gold.items() if not is_academic(w, resource, external_lists)),
            key=lambda wc: (-wc[1], wc[0]),
        )
        academic = [Candidate(w, True, c) for w, c in acad_gold[:2]]
        nonacademic = [Candidate(w, False, c) for w, c in nonacad_gold[:2]]
        used = {c.word for c in academic} | {c.word for c in nonacademic} | {inst.target}
        for lexicon in fallback_lexicons:
            for syn, _score in lexicon.get(inst.target, ()):
                if len(academic) >= 2 and len(nonacademic) >= 2:
                    break
                w = _single_word(syn)
                if w is None or w in used:
                    continue
                if is_academic(w, resource, external_lists):
                    if len(academic) < 2:
                        academic.append(Candidate(w, True, 0))
                        used.add(w)
                elif len(nonacademic) < 2:
                    nonacademic.append(Candidate(w, False, 0))
                    used.add(w)
        if len(academic) < 2 or len(nonacademic) < 2:
            dropped += 1
            continue
        groups.append(RankingGroup(inst, tuple(academic + nonacademic)))
    return GroupBuildResult(groups, dropped)


def convert_corpus(instances, resource: Resource, external_lists=()) -> list[LexSubInstance]:
    """Three-step conversion to an academic paraphrase corpus: drop
    academic targets, strip non-academic substitutes, then drop targets
    left without substitutes."""
    out = []
    for inst in instances:
        if is_academic(inst.target, resource, external_lists):
            continue
        kept = tuple(
            (w, c) for w, c in inst.substitutes if is_academic(w, resource, external_lists)
        )
        if not kept:
            continue
        out.append(
            LexSubInstance(inst.id, inst.tokens, inst.target_index, inst.target, inst.pos, kept)
        )
    return out


def iwi_stats(dataset) -> IwiStats:
    """Token and unique-type counts per label over target tokens."""
    stats = IwiStats()
    informal_types, formal_types = set(), set()
    for inst in dataset:
        word = normalize_tokens(inst.token)
        key = word[0] if word else inst.token
        if inst.label == INFORMAL:
            stats.informal_tokens += 1
            informal_types.add(key)
        else:
            stats.formal_tokens += 1
            formal_types.add(key)
    stats.informal_types = len(informal_types)
    stats.formal_types = len(formal_types)
    return stats


def write_iwi(dataset, path) -> None:
    """IWI TSV: sentence_id, token_index, token, label."""
    lines = ["sentence_id\ttoken_index\ttoken\tlabel"]
    for inst in dataset:
        lines.append(f"{inst.sentence_id}\t{inst.token_index}\t{inst.token}\t{inst.label}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_iwi(path, sentences: dict[str, tuple[str, ...]] | None = None) -> list[IWIInstance]:
    """Read the IWI TSV back; `sentences` maps sentence_id to its tokens
    for consumers that need context (featurization). Without it, the
    instance carries just the labeled token."""
    path = Path(path)
    out = []
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != "sentence_id\ttoken_index\ttoken\tlabel":
        raise LexSubFormatError(f"{path}: missing IWI header")
    for i, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise LexSubFormatError(f"{path}: line {i}: expected 4 columns")
        sent_id, idx_s, token, label = parts
        index = int(idx_s)
        if label not in (INFORMAL, FORMAL):
            raise LexSubFormatError(f"{path}: line {i}: unknown label {label!r}")
        if sentences is not None:
            tokens = sentences.get(sent_id)
            if tokens is None:
                raise LexSubFormatError(f"{path}: line {i}: unknown sentence id {sent_id!r}")
        else:
            tokens = tuple([token])
            index = 0
        out.append(IWIInstance(sent_id, tuple(tokens), index, label))
    return out


def load_synonym_lexicon(path) -> dict[str, list[tuple[str, float]]]:
    """Synonym lexicon TSV: word, synonym, score. Synonyms are kept in
    score-descending order (ties lexicographic) per word."""
    path = Path(path)
    raw: dict[str, list[tuple[str, float]]] = {}
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LexSubFormatError(f"{path}: line {i}: expected word<TAB>synonym<TAB>score")
        word, synonym, score_s = parts
        raw.setdefault(word, []).append((synonym, float(score_s)))
    return {w: sorted(syns, key=lambda s: (-s[1], s[0])) for w, syns in raw.items()}


def write_pairs(pairs: set[WordPair], path) -> None:
    lines = ["informal\tacademic"]
    for pair in sorted(pairs, key=lambda p: (p.informal, p.academic)):
        lines.append(f"{pair.informal}\t{pair.academic}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_groups(groups, path) -> None:
    """Groups JSONL: {"instance": <lexsub record>, "candidates": [...]}"""
    with open(path, "w", encoding="utf-8") as fh:
        for group in groups:
            fh.write(
                json.dumps(
                    {
                        "instance": instance_to_record(group.instance),
                        "candidates": [
                            {"word": c.word, "academic": c.is_academic, "relevance": c.relevance}
                            for c in group.candidates
                        ],
                    }
                )
                + "\n"
            )


def read_groups(path) -> list[RankingGroup]:
    path = Path(path)
    groups = []
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            inst = _parse_record(record["instance"], f"{path}: record {i}")
            candidates = tuple(
                Candidate(str(c["word"]), bool(c["academic"]), int(c["relevance"]))
                for c in record["candidates"]
            )
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise LexSubFormatError(f"{path}: record {i}: malformed group ({exc})") from exc
        groups.append(RankingGroup(inst, candidates))
    return groups
