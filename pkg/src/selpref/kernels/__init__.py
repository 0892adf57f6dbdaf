"""Count-propagation kernels with a compiled fast path.

Training pushes every observed count up the ancestor closure of its
concept(s); for the class-to-class table that is a cross product of two
ancestor sets per triple, which dominates training time on realistic
taxonomies. The inner loops therefore live in a small Cython extension
(``_fast``), with a pure-Python twin (``_pure``) selected at import time
when the extension is unavailable or ``SELPREF_PURE`` is set in the
environment.

Both backends accumulate in identical item order, so they produce
bit-identical tables.

Accumulated keys are packed into a single int64:

    key = (concept << 32) | (other << 1) | rel

where ``other`` is a verb-lemma id or verb-concept index (< 2**30) and
``rel`` is the 0/1 relation code.
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("SELPREF_PURE"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND: str = _impl.BACKEND
accumulate_ancestors = _impl.accumulate_ancestors
accumulate_ancestors_keyed = _impl.accumulate_ancestors_keyed
accumulate_ancestor_pairs = _impl.accumulate_ancestor_pairs


def pack_key(concept: int, other: int, rel: int) -> int:
    """Pack (concept index, verb id or index, relation code) into int64."""
    return (concept << 32) | (other << 1) | rel


def unpack_key(key: int) -> tuple[int, int, int]:
    """Inverse of :func:`pack_key`."""
    low = key & 0xFFFFFFFF
    return key >> 32, low >> 1, low & 1
