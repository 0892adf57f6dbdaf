"""Naive reference computation of the class-frequency estimates.

Each function enumerates descendant sets per query and reads the direct
tables, with no propagation pass, no caching of results, and no shared
code with :mod:`selpref.kernels`. Deliberately slow; exists so the
kernel-backed estimates can be checked against an independent route.
"""

from __future__ import annotations

from collections import Counter

from .corpus import FrequencyTables, Relation
from .taxonomy import NOUN, Taxonomy


def _direct_concept_count(tables: FrequencyTables, taxonomy: Taxonomy,
                          concept: str) -> float:
    if taxonomy.pos(concept) == NOUN:
        return tables.fr_cn.get(concept, 0)
    return sum(c for (_, _, cv), c in tables.fr_cn_rel_cv.items()
               if cv == concept)


def class_freq(tables: FrequencyTables, taxonomy: Taxonomy, c: str) -> float:
    """Sum over descendants d of count(d)/|ancestors(d)|."""
    total = 0.0
    for d in sorted(taxonomy.descendants(c)):
        cnt = _direct_concept_count(tables, taxonomy, d)
        if cnt:
            total += cnt / taxonomy.classes_count(d)
    return total


def class_pair_freq(tables: FrequencyTables, taxonomy: Taxonomy,
                    cn_i: str, cn: str) -> float:
    if not taxonomy.subsumes(cn, cn_i):
        return 0.0
    return class_freq(tables, taxonomy, cn_i)


def class_rel_verb_freq(tables: FrequencyTables, taxonomy: Taxonomy,
                        cn: str, rel: Relation, v: str) -> float:
    """Sum over noun descendants d of count(d rel v)/|ancestors(d)|."""
    total = 0.0
    for d in sorted(taxonomy.descendants(cn)):
        cnt = tables.fr_cn_rel_v.get((d, rel, v), 0)
        if cnt:
            total += cnt / taxonomy.classes_count(d)
    return total


def class_rel_class_freq(tables: FrequencyTables, taxonomy: Taxonomy,
                         cn: str, rel: Relation, cv: str) -> float:
    """Double sum over descendant pairs (dn, dv) of
    count(dn rel dv)/(|ancestors(dn)| * |ancestors(dv)|)."""
    total = 0.0
    desc_v = sorted(taxonomy.descendants(cv))
    for dn in sorted(taxonomy.descendants(cn)):
        kn = taxonomy.classes_count(dn)
        for dv in desc_v:
            cnt = tables.fr_cn_rel_cv.get((dn, rel, dv), 0)
            if cnt:
                total += cnt / (kn * taxonomy.classes_count(dv))
    return total


def rel_class_freq(tables: FrequencyTables, taxonomy: Taxonomy,
                   rel: Relation, cv: str) -> float:
    """Sum over verb descendants dv of count(rel dv)/|ancestors(dv)|."""
    fr_rel_cv: Counter = Counter()
    for (_, r, dv), c in tables.fr_cn_rel_cv.items():
        if r is rel:
            fr_rel_cv[dv] += c
    total = 0.0
    for dv in sorted(taxonomy.descendants(cv)):
        cnt = fr_rel_cv.get(dv, 0)
        if cnt:
            total += cnt / taxonomy.classes_count(dv)
    return total
