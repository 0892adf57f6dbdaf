import random
from collections import Counter

import pytest

from selpref.corpus import (RELATIONS, Relation, count_frequencies,
                            load_inventory, load_triples)
from selpref.errors import InputError
from selpref.taxonomy import load_taxonomy

MINI_TAXONOMY = """\
entity\tn\t-
food\tn\tentity
chicken_food\tn\tfood
person\tn\tentity
chicken_wimp\tn\tperson
act\tv\t-
eat_ingest\tv\tact
devour_s1\tv\tact
"""

MINI_SENSES = """\
chicken\tn\tchicken_food,chicken_wimp
poulet\tn\tchicken_food
eat\tv\teat_ingest
devour\tv\tdevour_s1
"""


@pytest.fixture(scope="module")
def mini_taxonomy():
    return load_taxonomy(MINI_TAXONOMY.splitlines())


@pytest.fixture(scope="module")
def mini_inventory(mini_taxonomy):
    return load_inventory(MINI_SENSES.splitlines(), mini_taxonomy)


class TestInventory:
    def test_polysemous_entry_keeps_sense_order(self, mini_inventory):
        assert mini_inventory.senses("chicken", "n") == ("chicken_food",
                                                         "chicken_wimp")
        assert mini_inventory.sense_index("chicken", "n", "chicken_food") == 1
        assert mini_inventory.sense_index("chicken", "n", "chicken_wimp") == 2

    def test_unknown_concept(self, mini_taxonomy):
        with pytest.raises(InputError, match="unknown concept"):
            load_inventory(["x\tn\tnot_there\n"], mini_taxonomy)

    def test_pos_mismatch(self, mini_taxonomy):
        with pytest.raises(InputError, match="pos"):
            load_inventory(["x\tv\tchicken_food\n"], mini_taxonomy)

    def test_duplicate_lemma_entry(self, mini_taxonomy):
        with pytest.raises(InputError, match="duplicate entry"):
            load_inventory(["x\tn\tfood\n", "x\tn\tperson\n"], mini_taxonomy)

    def test_duplicate_concept_within_lemma(self, mini_taxonomy):
        with pytest.raises(InputError, match="repeated"):
            load_inventory(["x\tn\tfood,food\n"], mini_taxonomy)

    def test_empty_stream_is_valid(self, mini_taxonomy):
        inv = load_inventory([], mini_taxonomy)
        assert len(inv) == 0

    def test_malformed_line_number(self, mini_taxonomy):
        with pytest.raises(InputError, match="2"):
            load_inventory(["chicken\tn\tchicken_food\n", "oops\n"],
                           mini_taxonomy)


class TestTriples:
    def test_field_mapping(self, mini_inventory):
        (t,) = load_triples(
            ["eat\teat_ingest\tobj\tchicken\tchicken_food\tdoc1\n"],
            mini_inventory)
        assert t.verb_lemma == "eat"
        assert t.verb_concept == "eat_ingest"
        assert t.rel is Relation.OBJECT
        assert t.noun_lemma == "chicken"
        assert t.noun_concept == "chicken_food"
        assert t.doc_id == "doc1"

    def test_concept_must_be_a_sense_of_the_lemma(self, mini_inventory):
        with pytest.raises(InputError, match="not a sense"):
            load_triples(["eat\teat_ingest\tobj\tpoulet\tchicken_wimp\td1\n"],
                         mini_inventory)

    def test_unknown_lemma(self, mini_inventory):
        with pytest.raises(InputError, match="unknown noun lemma"):
            load_triples(["eat\teat_ingest\tobj\tmystery\tfood\td1\n"],
                         mini_inventory)
        with pytest.raises(InputError, match="unknown verb lemma"):
            load_triples(["quaff\teat_ingest\tobj\tchicken\tchicken_food\td1\n"],
                         mini_inventory)

    def test_unknown_relation(self, mini_inventory):
        with pytest.raises(InputError, match="unknown relation"):
            load_triples(["eat\teat_ingest\tiobj\tchicken\tchicken_food\td1\n"],
                         mini_inventory)

    def test_line_count_preserved(self, mini_inventory):
        lines = ["eat\teat_ingest\tobj\tchicken\tchicken_food\td1\n"] * 7
        assert len(load_triples(lines, mini_inventory)) == 7

    def test_skip_bad_lines_collects_warnings(self, mini_inventory):
        warnings = []
        triples = load_triples(
            ["eat\teat_ingest\tobj\tchicken\tchicken_food\td1\n",
             "bogus line\n",
             "eat\teat_ingest\tsubj\tchicken\tchicken_wimp\td2\n"],
            mini_inventory, skip_bad_lines=True, warn=warnings.append)
        assert len(triples) == 2
        assert len(warnings) == 1
        assert "2" in warnings[0]

    def test_toy_corpus_loads(self, toy_triples):
        assert len(toy_triples) == 113


class TestCounting:
    def test_empty(self):
        t = count_frequencies([])
        assert t.total == 0
        assert not t.fr_cn and not t.fr_cn_rel_v
        assert not t.fr_cn_rel_cv and not t.fr_rel_v

    def test_two_triples_hand_tally(self, mini_inventory):
        triples = load_triples(
            ["eat\teat_ingest\tobj\tchicken\tchicken_food\td1\n",
             "devour\tdevour_s1\tobj\tchicken\tchicken_food\td1\n"],
            mini_inventory)
        t = count_frequencies(triples)
        assert t.fr_cn["chicken_food"] == 2
        assert t.fr_rel_v[(Relation.OBJECT, "eat")] == 1
        assert t.fr_rel_v[(Relation.OBJECT, "devour")] == 1
        assert t.fr_cn_rel_cv[("chicken_food", Relation.OBJECT, "eat_ingest")] == 1

    def test_synonyms_count_toward_the_same_concept(self, mini_inventory):
        triples = load_triples(
            ["eat\teat_ingest\tobj\tchicken\tchicken_food\td1\n",
             "eat\teat_ingest\tobj\tpoulet\tchicken_food\td2\n"],
            mini_inventory)
        t = count_frequencies(triples)
        assert t.fr_cn_rel_v[("chicken_food", Relation.OBJECT, "eat")] == 2

    def test_conservation(self, toy_triples):
        t = count_frequencies(toy_triples)
        assert t.total == len(toy_triples)
        assert sum(t.fr_rel_v.values()) == len(toy_triples)
        assert sum(t.fr_cn_rel_cv.values()) == len(toy_triples)
        assert sum(t.fr_cn.values()) == len(toy_triples)
        for rel in RELATIONS:
            lhs = sum(c for (cn, r, v), c in t.fr_cn_rel_v.items() if r is rel)
            assert lhs == sum(c for (r, v), c in t.fr_rel_v.items() if r is rel)
            assert lhs == sum(c for (cn, r, cv), c in t.fr_cn_rel_cv.items()
                              if r is rel)

    def test_order_independence(self, toy_triples):
        base = count_frequencies(toy_triples)
        shuffled = list(toy_triples)
        random.Random(3).shuffle(shuffled)
        other = count_frequencies(shuffled)
        assert base.fr_cn == other.fr_cn
        assert base.fr_cn_rel_v == other.fr_cn_rel_v
        assert base.fr_cn_rel_cv == other.fr_cn_rel_cv
        assert base.fr_rel_v == other.fr_rel_v

    def test_incrementality(self, toy_triples):
        a, b = toy_triples[:40], toy_triples[40:]
        whole = count_frequencies(toy_triples)
        pa, pb = count_frequencies(a), count_frequencies(b)
        for table in ("fr_cn", "fr_cn_rel_v", "fr_cn_rel_cv", "fr_rel_v"):
            merged = Counter(getattr(pa, table))
            merged.update(getattr(pb, table))
            assert merged == getattr(whole, table)
