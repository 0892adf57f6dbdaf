"""Class-frequency estimation and the three selectional-preference models.

Training propagates every direct count up the concept hierarchy, each
occurrence weighted by 1/|ancestors| of the concept it was observed at,
and stores all resulting class associations without pruning. Scoring
then combines pure lookups:

word-to-word
    direct count ratio fr(cn_i rel v) / fr(rel v).
word-to-class
    sum over ancestors cn of cn_i of P(cn_i|cn) * P(cn|rel v), where
    P(cn_i|cn) is a ratio of propagated class frequencies and
    P(cn|rel v) a propagated count over the direct verb total.
class-to-class
    the same generalization applied to both hierarchies at once, with
    evidence keyed by (noun class, rel, verb class); the verb is
    disambiguated implicitly by taking the max over its senses.

A propagated class frequency is zero only when no descendant of the
class was ever observed; such classes carry no preference mass and the
corresponding terms are defined as 0 rather than an error.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, Mapping

import numpy as np

from . import kernels
from .corpus import (RELATIONS, FrequencyTables, Relation, SenseInventory,
                     parse_relation)
from .errors import InputError
from .taxonomy import NOUN, VERB, Taxonomy

#: Scores this close to the largest sense score count as tied (relative).
_REL_EPS = 1e-9


@dataclass(frozen=True)
class PreferenceScore:
    """Outcome of one preference query.

    ``value`` is None when the model abstains (it has no evidence basis
    for the query at all, e.g. the verb was never seen); an explicit 0.0
    is an answerable zero. ``best_verb_sense`` is filled by the
    class-to-class model with the verb sense that won the max.
    """

    value: float | None
    best_verb_sense: str | None = None

    @property
    def is_abstain(self) -> bool:
        return self.value is None


ABSTAIN = PreferenceScore(None)


class ClassEstimates:
    """Propagated (estimated) class-frequency tables.

    Internally keyed by dense concept indices and interned verb-lemma
    ids; the query methods take concept ids and lemmas.
    """

    def __init__(self, taxonomy: Taxonomy, class_freq: np.ndarray,
                 class_rel_verb: dict[int, float],
                 class_rel_class: dict[int, float],
                 rel_class_freq: np.ndarray,
                 verb_ids: dict[str, int]):
        self.taxonomy = taxonomy
        #: est. frequency of each class, nouns and verbs in one array
        self.class_freq = class_freq
        #: packed (noun class, rel, verb lemma) -> est. frequency
        self.class_rel_verb = class_rel_verb
        #: packed (noun class, rel, verb class) -> est. frequency
        self.class_rel_class = class_rel_class
        #: [rel code, verb class] -> est. frequency of (rel, class)
        self.rel_class_freq = rel_class_freq
        self.verb_ids = verb_ids

    # -- query API --------------------------------------------------------

    def est_class_freq(self, concept: str) -> float:
        """Estimated class frequency: sum over observed descendants d of
        count(d)/|ancestors(d)|. Zero for never-observed classes."""
        return float(self.class_freq[self.taxonomy.index(concept)])

    def est_class_pair_freq(self, cn_i: str, cn: str) -> float:
        """Estimated frequency of cn_i given that cn subsumes it; 0 when
        cn does not subsume cn_i."""
        if not self.taxonomy.subsumes(cn, cn_i):
            return 0.0
        return self.est_class_freq(cn_i)

    def est_class_rel_verb_freq(self, cn: str, rel: Relation, v: str) -> float:
        """Estimated count of (cn rel v) events, propagated from observed
        descendants of cn. Unseen verbs yield 0."""
        i = self.taxonomy.index(cn)
        vid = self.verb_ids.get(v)
        if vid is None:
            return 0.0
        return self.class_rel_verb.get(kernels.pack_key(i, vid, rel.code), 0.0)

    def est_class_rel_class_freq(self, cn: str, rel: Relation, cv: str) -> float:
        """Estimated count of (cn rel cv) events over both hierarchies."""
        i = self.taxonomy.index(cn)
        j = self.taxonomy.index(cv)
        if self.taxonomy.pos(cn) != NOUN or self.taxonomy.pos(cv) != VERB:
            raise ValueError(
                f"expected noun and verb concepts, got {cn!r}/{cv!r}")
        return self.class_rel_class.get(kernels.pack_key(i, j, rel.code), 0.0)

    def est_rel_class_freq(self, rel: Relation, cv: str) -> float:
        """Estimated count of triples with relation rel under verb class cv
        (the normalizing denominator of the class-to-class model)."""
        return float(self.rel_class_freq[rel.code, self.taxonomy.index(cv)])


def build_estimates(tables: FrequencyTables, taxonomy: Taxonomy) -> ClassEstimates:
    """One bottom-up propagation pass per table (kernel-backed)."""
    indptr, indices = taxonomy.ancestor_csr()
    n = taxonomy.n_concepts
    classes = np.diff(indptr).astype(np.float64)  # |ancestors| per concept

    # Verb-concept counts derived from the class-to-class table: per-verb
    # totals pooled over relations, and per-(rel, verb concept) totals.
    fr_cv: Counter = Counter()
    fr_rel_cv: Counter = Counter()
    for (_, rel, cv), c in tables.fr_cn_rel_cv.items():
        fr_cv[cv] += c
        fr_rel_cv[(rel, cv)] += c

    # Dense class frequencies; noun and verb hierarchies are disjoint so
    # both propagate through one call.
    items = [(taxonomy.index(c), cnt) for c, cnt in tables.fr_cn.items()]
    items += [(taxonomy.index(c), cnt) for c, cnt in fr_cv.items()]
    idx = np.fromiter((i for i, _ in items), dtype=np.int32, count=len(items))
    w = np.fromiter((cnt / classes[i] for i, cnt in items),
                    dtype=np.float64, count=len(items))
    class_freq = kernels.accumulate_ancestors(indptr, indices, idx, w, n)

    # (noun class, rel, verb lemma): intern lemmas in first-seen order.
    verb_ids: dict[str, int] = {}
    for (_, v) in tables.fr_rel_v:
        if v not in verb_ids:
            verb_ids[v] = len(verb_ids)
    ks = tables.fr_cn_rel_v
    idx = np.fromiter((taxonomy.index(cn) for (cn, _, _) in ks),
                      dtype=np.int32, count=len(ks))
    sub = np.fromiter(((verb_ids[v] << 1) | rel.code for (_, rel, v) in ks),
                      dtype=np.int64, count=len(ks))
    w = np.fromiter((cnt / classes[taxonomy.index(cn)]
                     for (cn, _, _), cnt in ks.items()),
                    dtype=np.float64, count=len(ks))
    class_rel_verb = kernels.accumulate_ancestors_keyed(indptr, indices, idx, sub, w)

    # (noun class, rel, verb class): the big cross-product table.
    ks = tables.fr_cn_rel_cv
    idx_n = np.fromiter((taxonomy.index(cn) for (cn, _, _) in ks),
                        dtype=np.int32, count=len(ks))
    idx_v = np.fromiter((taxonomy.index(cv) for (_, _, cv) in ks),
                        dtype=np.int32, count=len(ks))
    rels = np.fromiter((rel.code for (_, rel, _) in ks),
                       dtype=np.int32, count=len(ks))
    w = np.fromiter(
        (cnt / (classes[taxonomy.index(cn)] * classes[taxonomy.index(cv)])
         for (cn, _, cv), cnt in ks.items()),
        dtype=np.float64, count=len(ks))
    class_rel_class = kernels.accumulate_ancestor_pairs(
        indptr, indices, indptr, indices, idx_n, idx_v, rels, w)

    # (rel, verb class) denominators, one dense pass per relation.
    rel_class_freq = np.zeros((2, n), dtype=np.float64)
    for rel in RELATIONS:
        items = [(taxonomy.index(cv), cnt)
                 for (r, cv), cnt in fr_rel_cv.items() if r is rel]
        idx = np.fromiter((i for i, _ in items), dtype=np.int32, count=len(items))
        w = np.fromiter((cnt / classes[i] for i, cnt in items),
                        dtype=np.float64, count=len(items))
        rel_class_freq[rel.code] = kernels.accumulate_ancestors(
            indptr, indices, idx, w, n)

    return ClassEstimates(taxonomy, class_freq, class_rel_verb,
                          class_rel_class, rel_class_freq, verb_ids)


class PreferenceModel:
    """Trained preference model: estimates plus the direct tables scoring
    still needs (word-to-word numerator and the per-verb totals)."""

    def __init__(self, taxonomy: Taxonomy, estimates: ClassEstimates,
                 fr_cn_rel_v: Mapping[tuple[str, Relation, str], float],
                 fr_rel_v: Mapping[tuple[Relation, str], float]):
        self.taxonomy = taxonomy
        self.estimates = estimates
        self.fr_cn_rel_v = dict(fr_cn_rel_v)
        self.fr_rel_v = dict(fr_rel_v)

    @classmethod
    def train(cls, taxonomy: Taxonomy, tables: FrequencyTables) -> "PreferenceModel":
        return cls(taxonomy, build_estimates(tables, taxonomy),
                   tables.fr_cn_rel_v, tables.fr_rel_v)

    # -- scoring ----------------------------------------------------------

    def _check_noun(self, cn_i: str) -> None:
        if self.taxonomy.pos(cn_i) != NOUN:
            raise ValueError(f"{cn_i!r} is not a noun concept")

    def p_word2word(self, cn_i: str, rel: Relation, v: str) -> PreferenceScore:
        """Direct ratio fr(cn_i rel v)/fr(rel v); abstains when the verb
        was never seen with this relation."""
        self._check_noun(cn_i)
        denom = self.fr_rel_v.get((rel, v), 0)
        if denom == 0:
            return ABSTAIN
        return PreferenceScore(self.fr_cn_rel_v.get((cn_i, rel, v), 0) / denom)

    def word2class_terms(self, cn_i: str, rel: Relation,
                         v: str) -> list[tuple[str, float]]:
        """Nonzero per-ancestor terms of the word-to-class sum, in
        taxonomy index order."""
        self._check_noun(cn_i)
        denom = self.fr_rel_v.get((rel, v), 0)
        if denom == 0:
            return []
        est = self.estimates
        vid = est.verb_ids.get(v)
        if vid is None:
            return []
        fr_i = est.class_freq[self.taxonomy.index(cn_i)]
        if fr_i == 0.0:
            return []
        terms = []
        for a in sorted(self.taxonomy.ancestor_indices(self.taxonomy.index(cn_i))):
            f_cn = est.class_freq[a]
            if f_cn == 0.0:
                continue
            crv = est.class_rel_verb.get(kernels.pack_key(a, vid, rel.code), 0.0)
            if crv == 0.0:
                continue
            terms.append((self.taxonomy.concept_at(a),
                          float((fr_i / f_cn) * (crv / denom))))
        return terms

    def p_word2class(self, cn_i: str, rel: Relation, v: str) -> PreferenceScore:
        """Sum of P(cn_i|cn) * P(cn|rel v) over all ancestors cn of cn_i;
        abstains when the verb was never seen with this relation."""
        if self.fr_rel_v.get((rel, v), 0) == 0:
            self._check_noun(cn_i)
            return ABSTAIN
        return PreferenceScore(sum((t for _, t in
                                    self.word2class_terms(cn_i, rel, v)), 0.0))

    def class2class_sense_terms(self, cn_i: str, rel: Relation,
                                cv_j: str) -> list[tuple[str, str, float]]:
        """Nonzero (noun class, verb class, term) triples for one verb
        sense of the class-to-class sum."""
        self._check_noun(cn_i)
        tax = self.taxonomy
        est = self.estimates
        fr_i = est.class_freq[tax.index(cn_i)]
        fr_j = est.class_freq[tax.index(cv_j)]
        if fr_i == 0.0 or fr_j == 0.0:
            return []
        terms = []
        anc_v = sorted(tax.ancestor_indices(tax.index(cv_j)))
        for a in sorted(tax.ancestor_indices(tax.index(cn_i))):
            f_cn = est.class_freq[a]
            if f_cn == 0.0:
                continue
            p_noun = fr_i / f_cn
            for b in anc_v:
                f_cv = est.class_freq[b]
                if f_cv == 0.0:
                    continue
                denom = est.rel_class_freq[rel.code, b]
                if denom == 0.0:
                    continue
                crc = est.class_rel_class.get(kernels.pack_key(a, b, rel.code), 0.0)
                if crc == 0.0:
                    continue
                terms.append((tax.concept_at(a), tax.concept_at(b),
                              float(p_noun * (fr_j / f_cv) * (crc / denom))))
        return terms

    def p_class2class(self, cn_i: str, rel: Relation, v: str,
                      inventory: SenseInventory) -> PreferenceScore:
        """Max over the verb's senses of the double generalization sum.

        Raises KeyError when the verb lemma has no senses in the
        inventory (callers deciding word senses treat that as abstention).
        Ties between verb senses keep the lowest sense number.
        """
        senses = inventory.senses(v, VERB)
        best_value = 0.0
        best_sense: str | None = None
        for cv_j in senses:
            total = sum(
                (t for _, _, t in self.class2class_sense_terms(cn_i, rel, cv_j)),
                0.0)
            if total > best_value * (1.0 + _REL_EPS):
                best_value = total
                best_sense = cv_j
        return PreferenceScore(best_value, best_sense)


# -- model dump ------------------------------------------------------------

_DUMP_MAGIC = "# selpref-model v1"


def write_model_dump(model: PreferenceModel, fh: IO[str],
                     digests: Mapping[str, str] | None = None,
                     seed: int | None = None) -> None:
    """Serialize a trained model, one record per nonzero entry.

    Record format: ``<tag>\t<key fields...>\t<value>`` with estimate
    values at 12 significant digits; reloading reproduces every score to
    well within 1e-9. Records are sorted, so identical inputs produce
    byte-identical dumps.
    """
    tax = model.taxonomy
    est = model.estimates
    head = [_DUMP_MAGIC]
    for name in ("taxonomy", "senses", "triples"):
        head.append(f"{name}={(digests or {}).get(name, '-')}")
    head.append(f"seed={seed if seed is not None else '-'}")
    fh.write("\t".join(head) + "\n")

    verb_names = {i: v for v, i in est.verb_ids.items()}
    records: list[tuple] = []
    for i, val in enumerate(est.class_freq):
        if val != 0.0:
            records.append(("cf", tax.concept_at(i), f"{val:.12g}"))
    for key, val in est.class_rel_verb.items():
        if val != 0.0:
            a, vid, rc = kernels.unpack_key(key)
            records.append(("crv", tax.concept_at(a), RELATIONS[rc].token,
                            verb_names[vid], f"{val:.12g}"))
    for key, val in est.class_rel_class.items():
        if val != 0.0:
            a, b, rc = kernels.unpack_key(key)
            records.append(("crc", tax.concept_at(a), RELATIONS[rc].token,
                            tax.concept_at(b), f"{val:.12g}"))
    for rel in RELATIONS:
        for j, val in enumerate(est.rel_class_freq[rel.code]):
            if val != 0.0:
                records.append(("rcf", rel.token, tax.concept_at(j), f"{val:.12g}"))
    for (cn, rel, v), cnt in model.fr_cn_rel_v.items():
        if cnt:
            records.append(("dnv", cn, rel.token, v, f"{cnt:.12g}"))
    for (rel, v), cnt in model.fr_rel_v.items():
        if cnt:
            records.append(("drv", rel.token, v, f"{cnt:.12g}"))
    for rec in sorted(records):
        fh.write("\t".join(rec) + "\n")


def read_model_dump(lines: Iterable[str], taxonomy: Taxonomy,
                    expect_digests: Mapping[str, str] | None = None,
                    source: str = "<dump>") -> PreferenceModel:
    """Load a model dump produced by :func:`write_model_dump`.

    When ``expect_digests`` is given, each named digest must match the
    dump header (guards against pairing a dump with the wrong inputs).
    """
    it = iter(lines)
    try:
        header = next(it).rstrip("\r\n")
    except StopIteration:
        raise InputError("empty dump", source=source) from None
    fields = header.split("\t")
    if fields[0] != _DUMP_MAGIC:
        raise InputError("not a model dump (bad header)", source=source, line=1)
    header_kv = dict(f.split("=", 1) for f in fields[1:] if "=" in f)
    for name, digest in (expect_digests or {}).items():
        got = header_kv.get(name)
        if got not in ("-", None) and got != digest:
            raise InputError(
                f"{name} digest mismatch: dump has {got}, inputs have {digest}",
                source=source, line=1)

    n = taxonomy.n_concepts
    class_freq = np.zeros(n, dtype=np.float64)
    rel_class_freq = np.zeros((2, n), dtype=np.float64)
    class_rel_verb: dict[int, float] = {}
    class_rel_class: dict[int, float] = {}
    verb_ids: dict[str, int] = {}
    fr_cn_rel_v: dict[tuple[str, Relation, str], float] = {}
    fr_rel_v: dict[tuple[Relation, str], float] = {}

    def verb_id(v: str) -> int:
        if v not in verb_ids:
            verb_ids[v] = len(verb_ids)
        return verb_ids[v]

    for lineno, raw in enumerate(it, start=2):
        line = raw.rstrip("\r\n")
        if not line:
            continue
        parts = line.split("\t")
        tag = parts[0]
        try:
            if tag == "cf":
                _, c, val = parts
                class_freq[taxonomy.index(c)] = float(val)
            elif tag == "crv":
                _, c, rt, v, val = parts
                key = kernels.pack_key(taxonomy.index(c), verb_id(v),
                                       parse_relation(rt).code)
                class_rel_verb[key] = float(val)
            elif tag == "crc":
                _, c, rt, cv, val = parts
                key = kernels.pack_key(taxonomy.index(c), taxonomy.index(cv),
                                       parse_relation(rt).code)
                class_rel_class[key] = float(val)
            elif tag == "rcf":
                _, rt, cv, val = parts
                rel_class_freq[parse_relation(rt).code,
                               taxonomy.index(cv)] = float(val)
            elif tag == "dnv":
                _, c, rt, v, val = parts
                fr_cn_rel_v[(c, parse_relation(rt), v)] = float(val)
            elif tag == "drv":
                _, rt, v, val = parts
                fr_rel_v[(parse_relation(rt), v)] = float(val)
            else:
                raise InputError(f"unknown record tag {tag!r}",
                                 source=source, line=lineno)
        except (ValueError, KeyError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad record: {exc}", source=source,
                             line=lineno) from None

    est = ClassEstimates(taxonomy, class_freq, class_rel_verb,
                         class_rel_class, rel_class_freq, verb_ids)
    return PreferenceModel(taxonomy, est, fr_cn_rel_v, fr_rel_v)
