#!/usr/bin/env python3
"""Benchmark the compiled propagation kernels against the pure-Python ones.

Builds a synthetic taxonomy and corpus large enough that the training
pass is dominated by the ancestor cross-product accumulation, then
times full estimate builds and a batch of class-to-class queries under
each backend.

Usage:
    python benchmarks/bench_kernels.py [--concepts 20000] [--triples 100000]
"""

from __future__ import annotations

import argparse
import random
import time

from selpref.corpus import RELATIONS, SenseInventory, Triple, count_frequencies
from selpref.kernels import _pure
from selpref.prefmodel import PreferenceModel, build_estimates
from selpref.taxonomy import Taxonomy

try:
    from selpref.kernels import _fast
except ImportError:
    _fast = None


def synth(n_concepts: int, n_triples: int, seed: int = 0):
    rng = random.Random(seed)
    n_noun = int(n_concepts * 0.75)
    n_verb = n_concepts - n_noun
    rows = []
    noun_ids = [f"n{i}" for i in range(n_noun)]
    verb_ids = [f"v{i}" for i in range(n_verb)]
    for ids, pos in ((noun_ids, "n"), (verb_ids, "v")):
        for i, cid in enumerate(ids):
            if i == 0:
                rows.append((cid, pos, ()))
            else:
                # uniform attachment gives the log-depth hierarchies
                # typical of lexical taxonomies; 15% get a second parent
                k = 2 if rng.random() < 0.15 and i >= 2 else 1
                rows.append((cid, pos, tuple(rng.sample(ids[:i], k))))
    taxonomy = Taxonomy(rows)

    n_noun_lemmas = max(2, n_noun // 4)
    n_verb_lemmas = max(2, n_verb // 4)
    senses = {}
    for j in range(n_noun_lemmas):
        senses[(f"noun{j}", "n")] = tuple(
            rng.sample(noun_ids, rng.randint(1, 4)))
    for j in range(n_verb_lemmas):
        senses[(f"verb{j}", "v")] = tuple(
            rng.sample(verb_ids, rng.randint(1, 3)))
    inventory = SenseInventory(senses)

    triples = []
    for _ in range(n_triples):
        nl = f"noun{rng.randrange(n_noun_lemmas)}"
        vl = f"verb{rng.randrange(n_verb_lemmas)}"
        triples.append(Triple(
            nl, rng.choice(inventory.senses(nl, "n")), rng.choice(RELATIONS),
            vl, rng.choice(inventory.senses(vl, "v")), "d0"))
    return taxonomy, inventory, triples


def time_build(kernel_module, taxonomy, tables, repeats: int):
    import selpref.kernels as kernels
    saved = (kernels.accumulate_ancestors, kernels.accumulate_ancestors_keyed,
             kernels.accumulate_ancestor_pairs)
    kernels.accumulate_ancestors = kernel_module.accumulate_ancestors
    kernels.accumulate_ancestors_keyed = kernel_module.accumulate_ancestors_keyed
    kernels.accumulate_ancestor_pairs = kernel_module.accumulate_ancestor_pairs
    try:
        best = float("inf")
        est = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            est = build_estimates(tables, taxonomy)
            best = min(best, time.perf_counter() - t0)
        return best, est
    finally:
        (kernels.accumulate_ancestors, kernels.accumulate_ancestors_keyed,
         kernels.accumulate_ancestor_pairs) = saved


def time_queries(model, inventory, n_queries: int, seed: int = 1):
    rng = random.Random(seed)
    noun_lemmas = inventory.lemmas("n")
    verb_lemmas = [v for v, _ in inventory.lemmas("v")]
    t0 = time.perf_counter()
    for _ in range(n_queries):
        lemma, _ = rng.choice(noun_lemmas)
        concept = rng.choice(inventory.senses(lemma, "n"))
        model.p_class2class(concept, rng.choice(RELATIONS),
                            rng.choice(verb_lemmas), inventory)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--concepts", type=int, default=20000)
    ap.add_argument("--triples", type=int, default=100000)
    ap.add_argument("--queries", type=int, default=2000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    print(f"synthesizing {args.concepts} concepts, {args.triples} triples ...")
    taxonomy, inventory, triples = synth(args.concepts, args.triples)
    tables = count_frequencies(triples)
    indptr, _ = taxonomy.ancestor_csr()
    depth = (indptr[-1] / taxonomy.n_concepts)
    print(f"mean ancestors per concept: {depth:.1f}, "
          f"distinct class-rel-verb keys: {len(tables.fr_cn_rel_v)}, "
          f"class-rel-class keys: {len(tables.fr_cn_rel_cv)}")

    t_pure, est_pure = time_build(_pure, taxonomy, tables, args.repeats)
    print(f"build estimates  pure-python: {t_pure:8.3f} s "
          f"({len(est_pure.class_rel_class)} pair entries)")
    if _fast is None:
        print("compiled kernels not available; install with a C++ toolchain "
              "to compare")
        return
    t_fast, est_fast = time_build(_fast, taxonomy, tables, args.repeats)
    print(f"build estimates  cython:      {t_fast:8.3f} s "
          f"(speedup {t_pure / t_fast:5.1f}x)")
    assert est_pure.class_rel_class == est_fast.class_rel_class, \
        "backends disagree"

    model = PreferenceModel(taxonomy, est_fast, tables.fr_cn_rel_v,
                            tables.fr_rel_v)
    t_q = time_queries(model, inventory, args.queries)
    print(f"{args.queries} class-to-class queries: {t_q:.3f} s "
          f"({1000 * t_q / args.queries:.2f} ms each; "
          f"pure lookups, backend-independent)")


if __name__ == "__main__":
    main()
