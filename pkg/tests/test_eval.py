"""Evaluation harness tests: metric arithmetic, fold discipline, reports."""

from collections import Counter

import pytest

from selpref.corpus import (RELATIONS, Relation, count_frequencies,
                            load_inventory, load_triples)
from selpref.evaluate import (LABELS, _fmt3, compute_metrics, crossvalidate,
                              holdout_documents)
from selpref.wsd import ModelKind, WsdDecision

OBJ = Relation.OBJECT
SUBJ = Relation.SUBJECT


def decision(answer):
    return WsdDecision(answer, {}, ModelKind.WORD2WORD)


class TestComputeMetrics:
    def test_reference_row(self):
        # 19 instances, 12 correct, 7 wrong, 0 unanswered.
        pairs = ([(decision(1), 1)] * 12 + [(decision(1), 2)] * 7)
        m = compute_metrics(pairs)
        assert (m.correct, m.answered, m.total) == (12, 19, 19)
        assert _fmt3(m.precision) == "0.631"
        assert _fmt3(m.coverage) == "1.000"
        assert _fmt3(m.recall) == "0.631"
        assert abs(m.recall - m.precision * m.coverage) <= 1e-9

    def test_precision_times_coverage_identity(self):
        # Reference cross-check: .959 precision at .260 coverage gives
        # .249 recall (3-decimal rounding).
        assert abs(0.959 * 0.260 - 0.249) <= 0.0005

    def test_zero_answered(self):
        m = compute_metrics([(decision(None), 1)] * 4)
        assert m.total == 4 and m.answered == 0
        assert not m.precision_defined
        assert m.precision == 0.0 and m.coverage == 0.0 and m.recall == 0.0

    def test_empty(self):
        m = compute_metrics([])
        assert (m.answered, m.correct, m.total) == (0, 0.0, 0)

    def test_no_answer_counts_in_total_only(self):
        m = compute_metrics([(decision(2), 2), (decision(None), 2)])
        assert m.answered == 1 and m.correct == 1 and m.total == 2
        assert m.coverage == 0.5


class TestFormatting:
    def test_three_decimals_truncate(self):
        assert _fmt3(12 / 19) == "0.631"   # not rounded up to .632
        assert _fmt3(0.7) == "0.700"
        assert _fmt3(1.0) == "1.000"
        assert _fmt3(0.0) == "0.000"
        assert _fmt3(1 / 3) == "0.333"
        assert _fmt3(2 / 3) == "0.666"


@pytest.fixture(scope="module")
def toy_xval(toy_triples, toy_taxonomy, toy_inventory):
    return crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                         ["duck", "school", "bank"], k=10, seed=42)


class TestCrossValidation:
    def test_instance_selection(self, toy_xval):
        assert len(toy_xval.instances) == 36
        per_noun = Counter(i.noun_lemma for i in toy_xval.instances)
        assert per_noun == {"duck": 12, "school": 12, "bank": 12}

    def test_fold_partition(self, toy_xval):
        for lemma in ("duck", "school", "bank"):
            sizes = Counter(i.fold for i in toy_xval.instances
                            if i.noun_lemma == lemma)
            assert sum(sizes.values()) == 12
            assert max(sizes.values()) - min(sizes.values()) <= 1

    def test_no_leakage(self, toy_xval, toy_triples):
        # Rebuilding a fold's training set drops exactly the held
        # instances' own counts.
        full = count_frequencies(toy_triples)
        targets = {"duck", "school", "bank"}
        for fold in range(10):
            held = [i for i in toy_xval.instances if i.fold == fold]
            if not held:
                continue
            held_keys = Counter()
            remaining = list(toy_triples)
            for h in held:
                for n, t in enumerate(remaining):
                    if (t.noun_lemma == h.noun_lemma and t.rel is h.rel
                            and t.verb_lemma == h.verb_lemma
                            and t.doc_id == h.doc_id):
                        held_keys[(t.noun_concept, t.rel, t.verb_lemma)] += 1
                        del remaining[n]
                        break
            train = count_frequencies(remaining)
            for key, dropped in held_keys.items():
                assert full.fr_cn_rel_v[key] - train.fr_cn_rel_v.get(key, 0) \
                    == dropped

    def test_leave_one_out_degenerate(self, toy_triples, toy_taxonomy,
                                      toy_inventory):
        rep = crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                            ["duck"], k=12, seed=0)
        sizes = Counter(i.fold for i in rep.instances)
        assert len(rep.instances) == 12
        assert all(v == 1 for v in sizes.values())

    def test_determinism(self, toy_triples, toy_taxonomy, toy_inventory):
        a = crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                          ["duck", "school", "bank"], k=10, seed=42)
        b = crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                          ["duck", "school", "bank"], k=10, seed=42)
        assert a.to_tsv() == b.to_tsv()

    def test_seed_changes_fold_assignment(self, toy_xval, toy_triples,
                                          toy_taxonomy, toy_inventory):
        other = crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                              ["duck", "school", "bank"], k=10, seed=43)
        folds_a = [(i.noun_lemma, i.verb_lemma, i.rel.token, i.fold)
                   for i in sorted(toy_xval.instances,
                                   key=lambda x: (x.noun_lemma, x.verb_lemma,
                                                  x.rel.token, x.doc_id))]
        folds_b = [(i.noun_lemma, i.verb_lemma, i.rel.token, i.fold)
                   for i in sorted(other.instances,
                                   key=lambda x: (x.noun_lemma, x.verb_lemma,
                                                  x.rel.token, x.doc_id))]
        assert folds_a != folds_b

    def test_recall_identity_everywhere(self, toy_xval):
        for scope in toy_xval.scopes():
            for label in LABELS:
                for rel in RELATIONS:
                    m = toy_xval.metrics_for(label, rel, scope)
                    if m.answered > 0:
                        assert abs(m.recall - m.precision * m.coverage) <= 1e-9

    def test_breakdowns_sum_to_aggregate(self, toy_xval):
        for label in LABELS:
            for rel in RELATIONS:
                agg = toy_xval.metrics_for(label, rel)
                for prefix in ("noun:", "doc:"):
                    parts = [toy_xval.metrics_for(label, rel, s)
                             for s in toy_xval.scopes()
                             if s.startswith(prefix)]
                    assert sum(p.answered for p in parts) == agg.answered
                    assert sum(p.total for p in parts) == agg.total
                    assert sum(p.correct for p in parts) == \
                        pytest.approx(agg.correct, abs=1e-9)

    def test_per_fold_counts_sum_to_aggregate(self, toy_xval):
        agg = sum(toy_xval.metrics_for("class2class", rel).answered
                  for rel in RELATIONS)
        by_fold = Counter()
        for inst in toy_xval.instances:
            if inst.answers["class2class"] is not None:
                by_fold[inst.fold] += 1
        assert sum(by_fold.values()) == agg

    def test_mfs_and_random_rows(self, toy_xval):
        for rel in RELATIONS:
            mfs = toy_xval.metrics_for("mfs", rel)
            assert mfs.answered == mfs.total
            rnd = toy_xval.metrics_for("random", rel)
            assert rnd.answered == rnd.total
        total_expected = sum(toy_xval.metrics_for("random", rel).correct
                             for rel in RELATIONS)
        assert total_expected == pytest.approx(13.0, abs=1e-9)

    def test_coverage_strictly_increasing_on_toy(self, toy_xval):
        answered = {label: sum(toy_xval.metrics_for(label, rel).answered
                               for rel in RELATIONS)
                    for label in ("word2word", "word2class", "class2class")}
        assert answered["word2word"] < answered["word2class"] \
            < answered["class2class"]

    def test_bad_arguments(self, toy_triples, toy_taxonomy, toy_inventory):
        with pytest.raises(ValueError, match=">= 2"):
            crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                          ["duck"], k=1)
        with pytest.raises(ValueError, match="no target"):
            crossvalidate(toy_triples, toy_taxonomy, toy_inventory, [])
        with pytest.raises(ValueError, match="no noun senses"):
            crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                          ["mystery"])
        with pytest.raises(ValueError, match="no instances"):
            # hen only ever occurs as a subject
            crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                          ["hen"], relations=(OBJ,))


class TestHoldout:
    def test_single_document_corpus_all_abstain(self, toy_taxonomy):
        inv = load_inventory(["duck\tn\tduck_bird\n", "eat\tv\tingest_food\n"],
                             toy_taxonomy)
        triples = load_triples(
            ["eat\tingest_food\tsubj\tduck\tduck_bird\tonly_doc\n"] * 3, inv)
        rep = holdout_documents(triples, toy_taxonomy, inv, ["only_doc"])
        assert len(rep.instances) == 3
        for label in ("word2word", "word2class", "class2class"):
            m = rep.metrics_for(label, SUBJ)
            assert m.answered == 0 and m.coverage == 0.0

    def test_three_doc_holdout(self, toy_triples, toy_taxonomy, toy_inventory):
        rep = holdout_documents(toy_triples, toy_taxonomy, toy_inventory,
                                ["doc1", "doc2", "doc3"])
        assert len(rep.instances) == len(toy_triples)
        # every instance belongs to exactly one held-out doc scope
        for rel in RELATIONS:
            agg = rep.metrics_for("class2class", rel)
            parts = [rep.metrics_for("class2class", rel, f"doc:{d}")
                     for d in ("doc1", "doc2", "doc3")]
            assert sum(p.total for p in parts) == agg.total

    def test_unknown_doc_id(self, toy_triples, toy_taxonomy, toy_inventory):
        with pytest.raises(ValueError, match="doc9"):
            holdout_documents(toy_triples, toy_taxonomy, toy_inventory,
                              ["doc9"])


class TestReportOutput:
    def test_header_and_shape(self, toy_xval):
        text = toy_xval.to_tsv()
        lines = text.splitlines()
        assert lines[0].startswith("# selpref-eval")
        assert "seed=42" in lines[0]
        assert lines[1].split("\t") == [
            "model", "relation", "scope", "precision", "coverage", "recall",
            "answered", "correct", "total"]
        # 5 labels x 2 relations x (overall + 3 nouns + 3 docs)
        assert len(lines) == 2 + 5 * 2 * 7

    def test_undefined_precision_prints_dash(self, toy_taxonomy):
        inv = load_inventory(["duck\tn\tduck_bird\n", "eat\tv\tingest_food\n"],
                             toy_taxonomy)
        triples = load_triples(
            ["eat\tingest_food\tsubj\tduck\tduck_bird\tonly_doc\n"] * 2, inv)
        rep = holdout_documents(triples, toy_taxonomy, inv, ["only_doc"])
        row = [line for line in rep.to_tsv().splitlines()
               if line.startswith("word2word\tsubj\toverall")][0]
        assert row.split("\t")[3] == "-"

    def test_extra_meta_line(self, toy_xval):
        text = toy_xval.to_tsv(extra_meta={"taxonomy": "abc123"})
        assert "# taxonomy=abc123" in text.splitlines()[1]

    def test_sampled_random_mode(self, toy_triples, toy_taxonomy,
                                 toy_inventory):
        a = crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                          ["duck"], k=5, seed=7, sampled_random=True)
        b = crossvalidate(toy_triples, toy_taxonomy, toy_inventory,
                          ["duck"], k=5, seed=7, sampled_random=True)
        assert a.to_tsv() == b.to_tsv()
        m = a.metrics_for("random", OBJ)
        assert m.correct == int(m.correct)  # sampled, not analytic
