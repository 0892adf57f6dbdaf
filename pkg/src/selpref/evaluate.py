"""Evaluation protocols: k-fold cross-validation and document holdout.

Both protocols retrain the model from scratch for every fold/document
(held-out instances never contribute to their own training tables),
decide each held-out noun instance under all three preference models
plus the most-frequent-sense and random baselines, and report
precision (correct/answered), coverage (answered/total) and recall
(correct/total) per model and relation, with per-noun and per-document
breakdowns.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import (RELATIONS, Relation, SenseInventory, Triple,
                     count_frequencies)
from .prefmodel import PreferenceModel
from .taxonomy import NOUN, Taxonomy
from .wsd import Disambiguator, ModelKind, WsdDecision, WsdInstance

#: Report row labels, in output order.
LABELS = ("random", "mfs", "word2word", "word2class", "class2class")

_KINDS = {"word2word": ModelKind.WORD2WORD,
          "word2class": ModelKind.WORD2CLASS,
          "class2class": ModelKind.CLASS2CLASS}


@dataclass
class Metrics:
    """Counts plus the three derived ratios.

    ``correct`` is fractional only for the analytic random baseline.
    When nothing was answered, precision is undefined; it is stored as
    0.0 with ``precision_defined`` False and printed as ``-``.
    """

    answered: int = 0
    correct: float = 0.0
    total: int = 0

    @property
    def precision_defined(self) -> bool:
        return self.answered > 0

    @property
    def precision(self) -> float:
        return self.correct / self.answered if self.answered else 0.0

    @property
    def coverage(self) -> float:
        return self.answered / self.total if self.total else 0.0

    @property
    def recall(self) -> float:
        return self.correct / self.total if self.total else 0.0


def compute_metrics(pairs: Sequence[tuple[WsdDecision, int]]) -> Metrics:
    """Score decided instances against gold senses.

    No-answer decisions count toward total only.
    """
    m = Metrics(total=len(pairs))
    for decision, gold in pairs:
        if decision.answer is not None:
            m.answered += 1
            if decision.answer == gold:
                m.correct += 1
    return m


@dataclass
class InstanceOutcome:
    """One evaluated instance with every model's answer."""

    noun_lemma: str
    rel: Relation
    verb_lemma: str
    doc_id: str
    gold: int
    n_senses: int
    answers: dict[str, int | None]
    fold: int | None = None


@dataclass
class EvalReport:
    """Aggregated evaluation outcome, deterministically serializable."""

    mode: str
    seed: int
    relations: tuple[Relation, ...]
    instances: list[InstanceOutcome]
    k: int | None = None
    doc_order: tuple[str, ...] = ()
    sampled_random: bool = False
    scheme: str = "per-target shuffle, round-robin folds"

    def _select(self, rel: Relation, scope: str) -> list[InstanceOutcome]:
        out = [i for i in self.instances if i.rel is rel]
        if scope == "overall":
            return out
        kind, _, name = scope.partition(":")
        if kind == "noun":
            return [i for i in out if i.noun_lemma == name]
        return [i for i in out if i.doc_id == name]

    def metrics_for(self, label: str, rel: Relation,
                    scope: str = "overall") -> Metrics:
        sel = self._select(rel, scope)
        if label == "random" and not self.sampled_random:
            m = Metrics(answered=len(sel), total=len(sel))
            m.correct = sum(1.0 / i.n_senses for i in sel)
            return m
        m = Metrics(total=len(sel))
        for i in sel:
            answer = i.answers.get(label)
            if answer is not None:
                m.answered += 1
                if answer == i.gold:
                    m.correct += 1
        return m

    def scopes(self) -> list[str]:
        nouns = sorted({i.noun_lemma for i in self.instances})
        docs = (self.doc_order if self.doc_order
                else tuple(sorted({i.doc_id for i in self.instances})))
        return (["overall"] + [f"noun:{n}" for n in nouns]
                + [f"doc:{d}" for d in docs])

    def to_tsv(self, extra_meta: Mapping[str, str] | None = None) -> str:
        """Render the report; identical inputs yield identical bytes."""
        rel_token = ("both" if len(self.relations) == 2
                     else self.relations[0].token)
        head = [f"# selpref-eval\tmode={self.mode}\tk={self.k if self.k else '-'}"
                f"\tseed={self.seed}\trel={rel_token}"
                f"\tsampled-random={int(self.sampled_random)}"
                f"\tscheme={self.scheme}"]
        if extra_meta:
            head.append("# " + "\t".join(f"{k}={v}"
                                         for k, v in extra_meta.items()))
        lines = head + ["model\trelation\tscope\tprecision\tcoverage\trecall"
                        "\tanswered\tcorrect\ttotal"]
        for scope in self.scopes():
            for label in LABELS:
                for rel in self.relations:
                    m = self.metrics_for(label, rel, scope)
                    prec = _fmt3(m.precision) if m.precision_defined else "-"
                    lines.append("\t".join([
                        label, rel.token, scope, prec, _fmt3(m.coverage),
                        _fmt3(m.recall), str(m.answered), _fmt_count(m.correct),
                        str(m.total)]))
        return "\n".join(lines) + "\n"


def _fmt3(x: float) -> str:
    # Ratios are truncated (not rounded) to 3 decimals: 12/19 prints .631.
    return f"{math.floor(x * 1000 + 1e-9) / 1000:.3f}"


def _fmt_count(x: float) -> str:
    return f"{x:.9g}"


def _decide_all(disamb: Disambiguator, inst: WsdInstance,
                rng: random.Random | None,
                n_senses: int) -> dict[str, int | None]:
    answers: dict[str, int | None] = {}
    for label, kind in _KINDS.items():
        answers[label] = disamb.disambiguate(inst, kind).answer
    answers["mfs"] = disamb.baseline_mfs(inst).answer
    if rng is not None:
        answers["random"] = rng.randint(1, n_senses)
    return answers


def crossvalidate(triples: Sequence[Triple], taxonomy: Taxonomy,
                  inventory: SenseInventory, targets: Iterable[str],
                  k: int = 10, seed: int = 0,
                  relations: tuple[Relation, ...] = RELATIONS,
                  sampled_random: bool = False) -> EvalReport:
    """Per-target stratified k-fold cross-validation on a lexical sample.

    Instances are the triples whose noun lemma is a target (and whose
    relation passes the filter). Each target's instances are shuffled
    with the seed and dealt round-robin into k folds, so fold sizes per
    target differ by at most one. Each fold is decided by a model
    trained on every triple except that fold's own instances.
    """
    if k < 2:
        raise ValueError(f"fold count must be >= 2, got {k}")
    targets = sorted(set(targets))
    if not targets:
        raise ValueError("no target lemmas given")
    for lemma in targets:
        if not inventory.has(lemma, NOUN):
            raise ValueError(f"target lemma {lemma!r} has no noun senses")

    picked = [(j, t) for j, t in enumerate(triples)
              if t.noun_lemma in targets and t.rel in relations]
    if not picked:
        raise ValueError("no instances match the targets")

    rng = random.Random(seed)
    fold_of: dict[int, int] = {}  # triple index -> fold
    for lemma in targets:
        idxs = [j for j, t in picked if t.noun_lemma == lemma]
        rng.shuffle(idxs)
        for pos, j in enumerate(idxs):
            fold_of[j] = pos % k

    sample_rng = random.Random(seed) if sampled_random else None
    outcomes: list[InstanceOutcome] = []
    for fold in range(k):
        held = [(j, t) for j, t in picked if fold_of[j] == fold]
        if not held:
            continue
        held_ids = {j for j, _ in held}
        train = [t for j, t in enumerate(triples) if j not in held_ids]
        disamb = Disambiguator(
            PreferenceModel.train(taxonomy, count_frequencies(train)),
            inventory)
        for _, t in held:
            gold = inventory.sense_index(t.noun_lemma, NOUN, t.noun_concept)
            n_senses = inventory.n_senses(t.noun_lemma, NOUN)
            inst = WsdInstance(t.noun_lemma, t.rel, t.verb_lemma, gold, t.doc_id)
            outcomes.append(InstanceOutcome(
                t.noun_lemma, t.rel, t.verb_lemma, t.doc_id, gold, n_senses,
                _decide_all(disamb, inst, sample_rng, n_senses), fold=fold))

    return EvalReport(mode="xval", seed=seed, relations=relations,
                      instances=outcomes, k=k, sampled_random=sampled_random)


def holdout_documents(triples: Sequence[Triple], taxonomy: Taxonomy,
                      inventory: SenseInventory, eval_docs: Sequence[str],
                      seed: int = 0,
                      relations: tuple[Relation, ...] = RELATIONS,
                      sampled_random: bool = False) -> EvalReport:
    """Whole-document holdout: each listed document is withdrawn from
    training and all its noun instances are decided in turn."""
    present = {t.doc_id for t in triples}
    for doc in eval_docs:
        if doc not in present:
            raise ValueError(f"doc id {doc!r} not present in the triples")

    sample_rng = random.Random(seed) if sampled_random else None
    outcomes: list[InstanceOutcome] = []
    for doc in eval_docs:
        train = [t for t in triples if t.doc_id != doc]
        disamb = Disambiguator(
            PreferenceModel.train(taxonomy, count_frequencies(train)),
            inventory)
        for t in triples:
            if t.doc_id != doc or t.rel not in relations:
                continue
            gold = inventory.sense_index(t.noun_lemma, NOUN, t.noun_concept)
            n_senses = inventory.n_senses(t.noun_lemma, NOUN)
            inst = WsdInstance(t.noun_lemma, t.rel, t.verb_lemma, gold, t.doc_id)
            outcomes.append(InstanceOutcome(
                t.noun_lemma, t.rel, t.verb_lemma, t.doc_id, gold, n_senses,
                _decide_all(disamb, inst, sample_rng, n_senses)))

    return EvalReport(mode="docs", seed=seed, relations=relations,
                      instances=outcomes, doc_order=tuple(eval_docs),
                      sampled_random=sampled_random,
                      scheme="whole-document withdrawal")
