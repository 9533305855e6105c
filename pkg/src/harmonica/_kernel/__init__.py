"""Search kernel, compiled when available.

The extension ``_csearch`` is built from Cython at install time; if it is
missing (or ``HARMONICA_PURE=1`` is set) the pure-Python implementation is
used.  Both return identical results.
"""

import os

from . import _pysearch

try:
    if os.environ.get("HARMONICA_PURE") == "1":
        raise ImportError("pure-Python kernel forced")
    from . import _csearch as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pysearch
    BACKEND = "python"

canonical_search = _impl.canonical_search
py_canonical_search = _pysearch.canonical_search


def compiled_canonical_search():
    """The compiled routine, or ``None`` if the extension is not built."""
    try:
        from . import _csearch
    except ImportError:
        return None
    return _csearch.canonical_search


__all__ = ["BACKEND", "canonical_search", "py_canonical_search", "compiled_canonical_search"]
