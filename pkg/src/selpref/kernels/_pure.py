"""Pure-Python propagation kernels (fallback backend).

Must stay semantically identical to ``_fast.pyx``, including the order
of floating-point accumulation: items are processed in array order and
each item's ancestors in CSR row order.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def accumulate_ancestors(indptr, indices, item_concepts, item_weights, n):
    """Dense upward propagation: out[a] += w for every ancestor a.

    Returns a float64 array of length ``n``.
    """
    indptr = indptr.tolist()
    indices = indices.tolist()
    out = [0.0] * n
    for c, w in zip(item_concepts.tolist(), item_weights.tolist()):
        for j in range(indptr[c], indptr[c + 1]):
            out[indices[j]] += w
    return np.asarray(out, dtype=np.float64)


def accumulate_ancestors_keyed(indptr, indices, item_concepts, item_subkeys,
                               item_weights):
    """Sparse upward propagation grouped by a per-item subkey.

    Returns {(ancestor << 32) | subkey: weight sum}.
    """
    indptr = indptr.tolist()
    indices = indices.tolist()
    acc: dict[int, float] = {}
    for c, sk, w in zip(item_concepts.tolist(), item_subkeys.tolist(),
                        item_weights.tolist()):
        for j in range(indptr[c], indptr[c + 1]):
            key = (indices[j] << 32) | sk
            acc[key] = acc.get(key, 0.0) + w
    return acc


def accumulate_ancestor_pairs(noun_indptr, noun_indices, verb_indptr,
                              verb_indices, item_nouns, item_verbs,
                              item_rels, item_weights):
    """Cross-product propagation over both hierarchies.

    For each item, every (noun ancestor, verb ancestor) pair receives the
    item's weight. Returns {(anc_n << 32) | (anc_v << 1) | rel: sum}.
    """
    noun_indptr = noun_indptr.tolist()
    noun_indices = noun_indices.tolist()
    verb_indptr = verb_indptr.tolist()
    verb_indices = verb_indices.tolist()
    acc: dict[int, float] = {}
    for cn, cv, rel, w in zip(item_nouns.tolist(), item_verbs.tolist(),
                              item_rels.tolist(), item_weights.tolist()):
        for j in range(verb_indptr[cv], verb_indptr[cv + 1]):
            subkeys_v = (verb_indices[j] << 1) | rel
            for i in range(noun_indptr[cn], noun_indptr[cn + 1]):
                key = (noun_indices[i] << 32) | subkeys_v
                acc[key] = acc.get(key, 0.0) + w
    return acc
