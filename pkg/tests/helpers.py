"""Shared test utilities: tiny fixtures and a seeded random-corpus maker."""

from __future__ import annotations

import random

from selpref.corpus import RELATIONS, SenseInventory, Triple
from selpref.taxonomy import Taxonomy

#: entity > food > chicken_food, plus a two-level verb chain.
CHAIN_TAXONOMY = """\
entity\tn\t-
food\tn\tentity
chicken_food\tn\tfood
ingest_parent\tv\t-
eat_ingest\tv\tingest_parent
"""

#: a > {b, c} > d with d reachable along two paths.
DIAMOND_TAXONOMY = """\
a\tn\t-
b\tn\ta
c\tn\ta
d\tn\tb,c
"""


def chain_taxonomy() -> Taxonomy:
    from selpref.taxonomy import load_taxonomy
    return load_taxonomy(CHAIN_TAXONOMY.splitlines())


def make_random_corpus(seed: int,
                       max_noun: int = 30, max_verb: int = 18,
                       max_triples: int = 200):
    """Seeded random taxonomy + inventory + triples.

    Bounds: at most max_noun + max_verb concepts, 4 parents per concept,
    max_triples triples. Acyclic by construction (parents are sampled
    among earlier concepts).
    """
    rng = random.Random(seed)
    n_noun = rng.randint(4, max_noun)
    n_verb = rng.randint(3, max_verb)
    noun_ids = [f"n{i}" for i in range(n_noun)]
    verb_ids = [f"v{i}" for i in range(n_verb)]
    rows = []
    for ids in (noun_ids, verb_ids):
        pos = "n" if ids is noun_ids else "v"
        for i, cid in enumerate(ids):
            parents = () if i == 0 else tuple(
                rng.sample(ids[:i], rng.randint(1, min(4, i))))
            rows.append((cid, pos, parents))
    taxonomy = Taxonomy(rows)

    senses: dict[tuple[str, str], tuple[str, ...]] = {}
    noun_lemmas, verb_lemmas = [], []
    for j in range(rng.randint(2, 8)):
        lemma = f"noun{j}"
        senses[(lemma, "n")] = tuple(
            rng.sample(noun_ids, rng.randint(1, min(4, n_noun))))
        noun_lemmas.append(lemma)
    for j in range(rng.randint(2, 6)):
        lemma = f"verb{j}"
        senses[(lemma, "v")] = tuple(
            rng.sample(verb_ids, rng.randint(1, min(3, n_verb))))
        verb_lemmas.append(lemma)
    inventory = SenseInventory(senses)

    triples = []
    for _ in range(rng.randint(10, max_triples)):
        nl = rng.choice(noun_lemmas)
        vl = rng.choice(verb_lemmas)
        triples.append(Triple(
            nl, rng.choice(inventory.senses(nl, "n")), rng.choice(RELATIONS),
            vl, rng.choice(inventory.senses(vl, "v")),
            f"d{rng.randint(1, 3)}"))
    return taxonomy, inventory, triples
