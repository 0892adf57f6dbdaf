"""Word sense decisions for nouns, with baselines and explanations.

A decision scores every sense concept of the noun under one of the
three preference models and answers with the highest-scoring sense;
when every sense scores zero or the model abstains, the answer is
no-answer (which lowers coverage but not precision). Ties go to the
lowest sense number, i.e. fall back toward the most-frequent sense.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .corpus import Relation, SenseInventory
from .prefmodel import ABSTAIN, PreferenceModel, PreferenceScore
from .taxonomy import NOUN

#: Relative slack under which two sense scores count as tied.
_TIE_EPS = 1e-9


class ModelKind(enum.Enum):
    WORD2WORD = "word2word"
    WORD2CLASS = "word2class"
    CLASS2CLASS = "class2class"

    def __str__(self) -> str:
        return self.value


#: CLI tokens for the model kinds.
MODEL_TOKENS = {"w2w": ModelKind.WORD2WORD,
                "w2c": ModelKind.WORD2CLASS,
                "c2c": ModelKind.CLASS2CLASS}


@dataclass(frozen=True)
class WsdInstance:
    """One noun occurrence to disambiguate, attached to a governing verb."""

    noun_lemma: str
    rel: Relation
    verb_lemma: str
    gold_sense_index: int | None = None
    doc_id: str = ""


@dataclass
class WsdDecision:
    """Per-sense scores and the chosen sense (None = no-answer).

    ``model`` is None for baseline decisions, which carry no scores.
    """

    answer: int | None
    scores: dict[int, PreferenceScore]
    model: ModelKind | None


class ExplanationTerm(NamedTuple):
    """One contribution to a sense's score.

    ``verb_part`` is the verb lemma for the word models and the
    contributing verb class for the class-to-class model.
    """

    noun_class: str
    verb_part: str
    value: float


@dataclass
class Explanation:
    """Per-sense score decompositions, each sorted by descending value."""

    per_sense: dict[int, tuple[ExplanationTerm, ...]]
    model: ModelKind

    def top_class(self, sense_index: int) -> str | None:
        """The winning noun superclass for a sense, if it has any mass."""
        terms = self.per_sense.get(sense_index, ())
        return terms[0].noun_class if terms else None


class Disambiguator:
    """Applies a trained preference model to noun instances."""

    def __init__(self, model: PreferenceModel, inventory: SenseInventory):
        self.model = model
        self.inventory = inventory

    def _sense_scores(self, inst: WsdInstance,
                      kind: ModelKind) -> dict[int, PreferenceScore]:
        senses = self.inventory.senses(inst.noun_lemma, NOUN)
        scores: dict[int, PreferenceScore] = {}
        for i, concept in enumerate(senses, start=1):
            if kind is ModelKind.WORD2WORD:
                s = self.model.p_word2word(concept, inst.rel, inst.verb_lemma)
            elif kind is ModelKind.WORD2CLASS:
                s = self.model.p_word2class(concept, inst.rel, inst.verb_lemma)
            else:
                try:
                    s = self.model.p_class2class(concept, inst.rel,
                                                 inst.verb_lemma, self.inventory)
                except KeyError:
                    # Verb lemma outside the inventory: class evidence is
                    # unreachable, so the model abstains on this instance.
                    s = ABSTAIN
            scores[i] = s
        return scores

    def disambiguate(self, inst: WsdInstance, kind: ModelKind) -> WsdDecision:
        """Score every sense and answer with the argmax.

        No-answer when every sense scores 0 or the model abstains.
        Unknown noun lemmas raise KeyError.
        """
        scores = self._sense_scores(inst, kind)
        best_i: int | None = None
        best_v = 0.0
        for i in sorted(scores):
            v = scores[i].value
            if v is not None and v > best_v * (1.0 + _TIE_EPS):
                best_i, best_v = i, v
        return WsdDecision(best_i if best_v > 0.0 else None, scores, kind)

    def explain(self, inst: WsdInstance, kind: ModelKind) -> Explanation:
        """Decompose each sense's score into its contributing terms.

        Term values sum to the sense's score; a zero-scoring sense gets
        an empty term list. For class-to-class the terms come from the
        verb sense that won the max.
        """
        senses = self.inventory.senses(inst.noun_lemma, NOUN)
        per_sense: dict[int, tuple[ExplanationTerm, ...]] = {}
        for i, concept in enumerate(senses, start=1):
            terms: list[ExplanationTerm] = []
            if kind is ModelKind.WORD2WORD:
                s = self.model.p_word2word(concept, inst.rel, inst.verb_lemma)
                if s.value:
                    terms.append(ExplanationTerm(concept, inst.verb_lemma, s.value))
            elif kind is ModelKind.WORD2CLASS:
                terms = [ExplanationTerm(cn, inst.verb_lemma, t)
                         for cn, t in self.model.word2class_terms(
                             concept, inst.rel, inst.verb_lemma)]
            else:
                try:
                    s = self.model.p_class2class(concept, inst.rel,
                                                 inst.verb_lemma, self.inventory)
                except KeyError:
                    s = ABSTAIN
                if s.best_verb_sense is not None:
                    terms = [ExplanationTerm(cn, cv, t)
                             for cn, cv, t in self.model.class2class_sense_terms(
                                 concept, inst.rel, s.best_verb_sense)]
            terms.sort(key=lambda t: (-t.value, t.noun_class, t.verb_part))
            per_sense[i] = tuple(terms)
        return Explanation(per_sense, kind)

    def baseline_mfs(self, inst: WsdInstance) -> WsdDecision:
        """Most-frequent-sense baseline: always sense 1 (inventory order)."""
        self.inventory.senses(inst.noun_lemma, NOUN)  # KeyError if unknown
        return WsdDecision(1, {}, None)

    def baseline_random_expectation(self,
                                    instances: Iterable[WsdInstance]) -> float:
        """Analytic expected accuracy of a uniform random sense choice:
        mean over instances of 1/#senses. Deterministic, no sampling."""
        inv_sizes = [1.0 / self.inventory.n_senses(inst.noun_lemma, NOUN)
                     for inst in instances]
        if not inv_sizes:
            return 0.0
        return sum(inv_sizes) / len(inv_sizes)
