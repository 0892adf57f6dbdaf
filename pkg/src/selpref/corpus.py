"""Sense inventory and triple corpus loading, plus frequency counting.

File formats (tab-separated, ``#`` comments and blank lines ignored):

inventory
    ``<lemma>\t<pos>\t<comma-separated concept ids in sense order>``
    Order is significant: the first concept is sense 1, which is what
    the most-frequent-sense baseline answers.

triples
    ``<verb_lemma>\t<verb_concept>\t<rel>\t<noun_lemma>\t<noun_concept>\t<doc_id>``
    with ``rel`` one of ``subj``/``obj``. Every lemma/concept pair must
    be a sense recorded in the inventory.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import InputError
from .taxonomy import NOUN, VERB, Taxonomy


class Relation(enum.Enum):
    """Grammatical relation of the noun to the verb."""

    SUBJECT = "subj"
    OBJECT = "obj"

    @property
    def token(self) -> str:
        return self.value

    @property
    def code(self) -> int:
        """Dense 0/1 code used by the propagation kernels."""
        return 0 if self is Relation.SUBJECT else 1

    def __str__(self) -> str:
        return self.value


RELATIONS = (Relation.SUBJECT, Relation.OBJECT)
_REL_BY_TOKEN = {r.value: r for r in RELATIONS}


def parse_relation(token: str) -> Relation:
    try:
        return _REL_BY_TOKEN[token]
    except KeyError:
        raise InputError(f"unknown relation {token!r} (expected subj or obj)") from None


class SenseInventory:
    """Ordered senses per (lemma, pos); position 1 is sense 1."""

    def __init__(self, senses: dict[tuple[str, str], tuple[str, ...]]):
        self._senses = senses

    def senses(self, lemma: str, pos: str) -> tuple[str, ...]:
        """Concepts of a lemma in sense order (KeyError if unknown)."""
        return self._senses[(lemma, pos)]

    def has(self, lemma: str, pos: str) -> bool:
        return (lemma, pos) in self._senses

    def sense_index(self, lemma: str, pos: str, concept: str) -> int:
        """1-based sense number of a concept under a lemma."""
        return self._senses[(lemma, pos)].index(concept) + 1

    def n_senses(self, lemma: str, pos: str) -> int:
        return len(self._senses[(lemma, pos)])

    def lemmas(self, pos: str | None = None) -> list[tuple[str, str]]:
        keys = self._senses.keys()
        if pos is not None:
            keys = (k for k in keys if k[1] == pos)
        return sorted(keys)

    def __len__(self) -> int:
        return len(self._senses)


def load_inventory(lines: Iterable[str], taxonomy: Taxonomy,
                   source: str = "<senses>") -> SenseInventory:
    """Parse and validate the sense inventory against a taxonomy."""
    senses: dict[tuple[str, str], tuple[str, ...]] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise InputError(
                f"expected 3 tab-separated fields, got {len(fields)}",
                source=source, line=lineno)
        lemma, pos, concepts_field = fields
        if not lemma or any(ch.isspace() for ch in lemma):
            raise InputError(f"bad lemma {lemma!r}", source=source, line=lineno)
        if pos not in (NOUN, VERB):
            raise InputError(f"bad pos {pos!r}", source=source, line=lineno)
        if (lemma, pos) in senses:
            raise InputError(f"duplicate entry for ({lemma!r}, {pos})",
                             source=source, line=lineno)
        concepts = tuple(c for c in concepts_field.split(",") if c)
        if not concepts:
            raise InputError("empty sense list", source=source, line=lineno)
        seen = set()
        for c in concepts:
            if c not in taxonomy:
                raise InputError(f"unknown concept {c!r}", source=source, line=lineno)
            if taxonomy.pos(c) != pos:
                raise InputError(
                    f"concept {c!r} has pos {taxonomy.pos(c)}, lemma declares {pos}",
                    source=source, line=lineno)
            if c in seen:
                raise InputError(f"concept {c!r} repeated for lemma {lemma!r}",
                                 source=source, line=lineno)
            seen.add(c)
        senses[(lemma, pos)] = concepts
    return SenseInventory(senses)


@dataclass(frozen=True)
class Triple:
    """One observed noun-relation-verb event, sense-tagged on both sides."""

    noun_lemma: str
    noun_concept: str
    rel: Relation
    verb_lemma: str
    verb_concept: str
    doc_id: str


def load_triples(lines: Iterable[str], inventory: SenseInventory,
                 source: str = "<triples>",
                 skip_bad_lines: bool = False,
                 warn: Callable[[str], None] | None = None) -> list[Triple]:
    """Parse and validate triples in file order.

    Validation errors raise InputError unless ``skip_bad_lines`` is set,
    in which case the offending line is dropped and reported through
    ``warn`` (one message per line).
    """
    triples: list[Triple] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            triples.append(_parse_triple_line(line, inventory, source, lineno))
        except InputError as exc:
            if not skip_bad_lines:
                raise
            if warn is not None:
                warn(str(exc))
    return triples


def _parse_triple_line(line: str, inventory: SenseInventory,
                       source: str, lineno: int) -> Triple:
    fields = line.split("\t")
    if len(fields) != 6:
        raise InputError(f"expected 6 tab-separated fields, got {len(fields)}",
                         source=source, line=lineno)
    verb_lemma, verb_concept, rel_token, noun_lemma, noun_concept, doc_id = fields
    rel = _REL_BY_TOKEN.get(rel_token)
    if rel is None:
        raise InputError(f"unknown relation {rel_token!r}", source=source, line=lineno)
    if not inventory.has(verb_lemma, VERB):
        raise InputError(f"unknown verb lemma {verb_lemma!r}",
                         source=source, line=lineno)
    if verb_concept not in inventory.senses(verb_lemma, VERB):
        raise InputError(
            f"{verb_concept!r} is not a sense of verb {verb_lemma!r}",
            source=source, line=lineno)
    if not inventory.has(noun_lemma, NOUN):
        raise InputError(f"unknown noun lemma {noun_lemma!r}",
                         source=source, line=lineno)
    if noun_concept not in inventory.senses(noun_lemma, NOUN):
        raise InputError(
            f"{noun_concept!r} is not a sense of noun {noun_lemma!r}",
            source=source, line=lineno)
    if not doc_id:
        raise InputError("empty doc id", source=source, line=lineno)
    return Triple(noun_lemma, noun_concept, rel, verb_lemma, verb_concept, doc_id)


@dataclass
class FrequencyTables:
    """Direct counts read off the training triples.

    Keys use concept ids and verb lemmas; each triple increments one
    entry in every table, so the totals agree across tables.
    """

    fr_cn: Counter = field(default_factory=Counter)
    # (noun_concept, rel, verb_lemma) -> count
    fr_cn_rel_v: Counter = field(default_factory=Counter)
    # (noun_concept, rel, verb_concept) -> count
    fr_cn_rel_cv: Counter = field(default_factory=Counter)
    # (rel, verb_lemma) -> count
    fr_rel_v: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        """Number of triples counted."""
        return sum(self.fr_rel_v.values())


def count_frequencies(triples: Iterable[Triple]) -> FrequencyTables:
    """Tally the four direct-frequency tables, one increment per triple each."""
    t = FrequencyTables()
    for tr in triples:
        t.fr_cn[tr.noun_concept] += 1
        t.fr_cn_rel_v[(tr.noun_concept, tr.rel, tr.verb_lemma)] += 1
        t.fr_cn_rel_cv[(tr.noun_concept, tr.rel, tr.verb_concept)] += 1
        t.fr_rel_v[(tr.rel, tr.verb_lemma)] += 1
    return t
