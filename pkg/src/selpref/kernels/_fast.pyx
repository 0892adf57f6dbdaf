# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled propagation kernels; see _pure.py for the reference semantics.

Accumulation order matches the pure backend item for item, so both
backends produce bit-identical results.
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libcpp.unordered_map cimport unordered_map

import numpy as np

BACKEND = "cython"


def accumulate_ancestors(int[:] indptr, int[:] indices,
                         int[:] item_concepts, double[:] item_weights, int n):
    out_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] out = out_arr
    cdef Py_ssize_t i, j
    cdef int c
    cdef double w
    for i in range(item_concepts.shape[0]):
        c = item_concepts[i]
        w = item_weights[i]
        for j in range(indptr[c], indptr[c + 1]):
            out[indices[j]] += w
    return out_arr


def accumulate_ancestors_keyed(int[:] indptr, int[:] indices,
                               int[:] item_concepts, long long[:] item_subkeys,
                               double[:] item_weights):
    cdef unordered_map[long long, double] acc
    acc.reserve(16 * item_concepts.shape[0] + 1024)
    cdef Py_ssize_t i, j
    cdef int c
    cdef long long sk, key
    cdef double w
    for i in range(item_concepts.shape[0]):
        c = item_concepts[i]
        sk = item_subkeys[i]
        w = item_weights[i]
        for j in range(indptr[c], indptr[c + 1]):
            key = ((<long long> indices[j]) << 32) | sk
            acc[key] += w
    return _to_dict(acc)


def accumulate_ancestor_pairs(int[:] noun_indptr, int[:] noun_indices,
                              int[:] verb_indptr, int[:] verb_indices,
                              int[:] item_nouns, int[:] item_verbs,
                              int[:] item_rels, double[:] item_weights):
    cdef unordered_map[long long, double] acc
    acc.reserve(32 * item_nouns.shape[0] + 1024)
    cdef Py_ssize_t i, j, k
    cdef int cn, cv, rel
    cdef long long sk, key
    cdef double w
    for i in range(item_nouns.shape[0]):
        cn = item_nouns[i]
        cv = item_verbs[i]
        rel = item_rels[i]
        w = item_weights[i]
        for j in range(verb_indptr[cv], verb_indptr[cv + 1]):
            sk = ((<long long> verb_indices[j]) << 1) | rel
            for k in range(noun_indptr[cn], noun_indptr[cn + 1]):
                key = ((<long long> noun_indices[k]) << 32) | sk
                acc[key] += w
    return _to_dict(acc)


cdef dict _to_dict(unordered_map[long long, double]& acc):
    cdef dict out = {}
    cdef unordered_map[long long, double].iterator it = acc.begin()
    while it != acc.end():
        out[deref(it).first] = deref(it).second
        inc(it)
    return out
