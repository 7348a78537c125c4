"""Hot kernels with a compiled backend and a pure Python fallback.

The compiled extension is used when it imports; set ``GROMOVCLASS_BACKEND``
to ``python`` (or ``cython``) to force a choice.  Both expose:

``enumerate_codes(n, allowed=None)``
    allowable structures as a ``(N, n)`` uint8 array of pair indices,
    lexicographically sorted
``invariant_table(codes, n)``
    one int64 row of permutation invariants per structure (see ``_tables``)
``canonical_codes(codes, n)``
    the lexicographically least relabeling of each row
"""
from __future__ import annotations

import os

from . import _pykernels as python_backend

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None


def _select():
    wanted = os.environ.get("GROMOVCLASS_BACKEND", "").strip().lower()
    if wanted == "python":
        return python_backend
    if wanted in ("cython", "compiled"):
        if compiled_backend is None:
            raise ImportError("GROMOVCLASS_BACKEND=cython but the extension is not built")
        return compiled_backend
    return compiled_backend or python_backend


backend = _select()
BACKEND = backend.NAME
enumerate_codes = backend.enumerate_codes
invariant_table = backend.invariant_table
canonical_codes = backend.canonical_codes


def available_backends():
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    return out
