"""Concept hierarchy: a rooted multi-parent DAG with subsumption queries.

Noun and verb concepts live in disjoint hierarchies inside one Taxonomy.
Subsumption is reflexive and transitive; every estimation formula in
:mod:`selpref.prefmodel` is phrased in terms of the ancestor and
descendant closures computed here.

File format (tab-separated, one concept per line)::

    <concept_id>\t<pos>\t<comma-separated parent ids or "-">

with ``pos`` one of ``n``/``v``, ``-`` marking a root, ``#`` starting a
comment line. Order independent: parents may be declared after children.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import InputError

NOUN = "n"
VERB = "v"
_POS_VALUES = (NOUN, VERB)


class Taxonomy:
    """Immutable concept DAG with cached ancestor/descendant closures.

    Concepts are identified by opaque string tokens. Internally each
    concept also has a dense integer index (load order) used by the
    count-propagation kernels; the string API is authoritative.
    """

    def __init__(self, concepts: list[tuple[str, str, tuple[str, ...]]],
                 source: str = "<taxonomy>"):
        """Build and validate from (id, pos, parent ids) rows.

        Raises InputError on duplicate ids, dangling parent references,
        pos mismatches between a concept and its parents, or cycles.
        """
        self._ids: list[str] = []
        self._index: dict[str, int] = {}
        self._pos: list[str] = []
        for cid, pos, _ in concepts:
            if cid in self._index:
                raise InputError(f"duplicate concept id {cid!r}", source=source)
            self._index[cid] = len(self._ids)
            self._ids.append(cid)
            self._pos.append(pos)

        n = len(self._ids)
        self._parents: list[tuple[int, ...]] = [()] * n
        for cid, pos, parent_ids in concepts:
            i = self._index[cid]
            resolved = []
            for pid in parent_ids:
                j = self._index.get(pid)
                if j is None:
                    raise InputError(
                        f"concept {cid!r} references unknown parent {pid!r}",
                        source=source)
                if self._pos[j] != pos:
                    raise InputError(
                        f"concept {cid!r} ({pos}) has parent {pid!r} with "
                        f"different part-of-speech ({self._pos[j]})",
                        source=source)
                resolved.append(j)
            self._parents[i] = tuple(resolved)

        self._order = self._toposort(source)  # parents before children
        self._anc: list[frozenset[int]] = [frozenset()] * n
        for i in self._order:
            s = {i}
            for p in self._parents[i]:
                s.update(self._anc[p])
            self._anc[i] = frozenset(s)

        self._roots = tuple(self._ids[i] for i in range(n) if not self._parents[i])
        self._desc: list[frozenset[int]] | None = None
        self._csr: tuple[np.ndarray, np.ndarray] | None = None

    def _toposort(self, source: str) -> list[int]:
        n = len(self._ids)
        pending = [len(ps) for ps in self._parents]  # unprocessed parent count
        children: list[list[int]] = [[] for _ in range(n)]
        for i, ps in enumerate(self._parents):
            for p in ps:
                children[p].append(i)
        order = [i for i in range(n) if pending[i] == 0]
        head = 0
        while head < len(order):
            i = order[head]
            head += 1
            for c in children[i]:
                pending[c] -= 1
                if pending[c] == 0:
                    order.append(c)
        if len(order) < n:
            stuck = next(self._ids[i] for i in range(n) if pending[i] > 0)
            raise InputError(
                f"cycle detected in parent relation (involving {stuck!r})",
                source=source)
        return order

    # -- basic accessors ------------------------------------------------

    @property
    def n_concepts(self) -> int:
        return len(self._ids)

    @property
    def concepts(self) -> tuple[str, ...]:
        return tuple(self._ids)

    @property
    def roots(self) -> tuple[str, ...]:
        """Concepts with no parents, in load order."""
        return self._roots

    def __contains__(self, concept: str) -> bool:
        return concept in self._index

    def index(self, concept: str) -> int:
        """Dense integer index of a concept (KeyError if unknown)."""
        return self._index[concept]

    def concept_at(self, i: int) -> str:
        return self._ids[i]

    def pos(self, concept: str) -> str:
        """Part-of-speech tag of a concept, 'n' or 'v'."""
        return self._pos[self._index[concept]]

    def parents(self, concept: str) -> frozenset[str]:
        i = self._index[concept]
        return frozenset(self._ids[p] for p in self._parents[i])

    # -- closure queries -------------------------------------------------

    def ancestors(self, concept: str) -> frozenset[str]:
        """Reflexive-transitive closure upward; always contains concept."""
        i = self._index[concept]
        return frozenset(self._ids[a] for a in self._anc[i])

    def descendants(self, concept: str) -> frozenset[str]:
        """Reflexive-transitive closure downward; always contains concept."""
        i = self._index[concept]
        return frozenset(self._ids[d] for d in self._descendant_sets()[i])

    def subsumes(self, upper: str, lower: str) -> bool:
        """True iff upper is an ancestor-or-self of lower (reflexive)."""
        u = self._index[upper]
        low = self._index[lower]
        return u in self._anc[low]

    def classes_count(self, concept: str) -> int:
        """Number of classes the concept belongs to: |ancestors|, self included.

        This is the weight denominator of the class-frequency estimates;
        equals 1 exactly for roots.
        """
        return len(self._anc[self._index[concept]])

    def ancestor_indices(self, i: int) -> frozenset[int]:
        """Ancestor closure as integer indices (kernel-facing)."""
        return self._anc[i]

    def descendant_indices(self, i: int) -> frozenset[int]:
        return self._descendant_sets()[i]

    def _descendant_sets(self) -> list[frozenset[int]]:
        # Inverse closure, built lazily on first descendant query.
        if self._desc is None:
            n = len(self._ids)
            acc: list[set[int]] = [{i} for i in range(n)]
            for i in reversed(self._order):  # children before parents
                for p in self._parents[i]:
                    acc[p].update(acc[i])
            self._desc = [frozenset(s) for s in acc]
        return self._desc

    def ancestor_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Ancestor lists in CSR form: (indptr int32[n+1], indices int32[nnz]).

        Row i lists the ancestor indices of concept i in ascending order,
        i itself included. Shared by both propagation kernel backends.
        """
        if self._csr is None:
            n = len(self._ids)
            indptr = np.zeros(n + 1, dtype=np.int32)
            rows = []
            for i in range(n):
                row = sorted(self._anc[i])
                rows.append(row)
                indptr[i + 1] = indptr[i] + len(row)
            indices = np.fromiter(
                (a for row in rows for a in row), dtype=np.int32,
                count=int(indptr[-1]))
            self._csr = (indptr, indices)
        return self._csr


def load_taxonomy(lines: Iterable[str], source: str = "<taxonomy>") -> Taxonomy:
    """Parse and validate the taxonomy file format.

    ``lines`` is any iterable of text lines (an open file works).
    """
    rows: list[tuple[str, str, tuple[str, ...]]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise InputError(
                f"expected 3 tab-separated fields, got {len(fields)}",
                source=source, line=lineno)
        cid, pos, parents_field = fields
        if not cid or any(ch.isspace() for ch in cid):
            raise InputError(f"bad concept id {cid!r}", source=source, line=lineno)
        if pos not in _POS_VALUES:
            raise InputError(f"bad pos {pos!r} (expected n or v)",
                             source=source, line=lineno)
        if parents_field == "-":
            parent_ids: tuple[str, ...] = ()
        else:
            parent_ids = tuple(p for p in parents_field.split(",") if p)
            if not parent_ids:
                raise InputError("empty parent list (use '-' for a root)",
                                 source=source, line=lineno)
        rows.append((cid, pos, parent_ids))
    return Taxonomy(rows, source=source)
