"""Select the rewriting kernel: compiled extension if importable, else pure Python.

Set ``QBUNDLE_PURE=1`` to force the fallback.
"""
import os

from . import _rewrite_py

COMPILED = False
if os.environ.get("QBUNDLE_PURE", "") not in ("", "0"):
    Rewriter = _rewrite_py.Rewriter
else:
    try:
        from ._rewrite import Rewriter  # type: ignore[attr-defined]
        COMPILED = True
    except ImportError:  # pragma: no cover - depends on build
        Rewriter = _rewrite_py.Rewriter

PyRewriter = _rewrite_py.Rewriter
pair_rule = _rewrite_py.pair_rule

_shared = {}


def rewriter(n, compiled=None):
    """Process-wide rewriter for M_q(n); its caches are pure memoization."""
    cls = Rewriter if compiled is None else (Rewriter if compiled else PyRewriter)
    key = (n, cls)
    rw = _shared.get(key)
    if rw is None:
        rw = cls(n)
        _shared[key] = rw
    return rw
