"""Backend selection for the mod-p elimination kernel.

The compiled Cython extension is preferred when present; the pure numpy
fallback is selected otherwise, and can be forced with
FERMATSYZ_BACKEND=python.  Both backends implement the same pivot rule and
therefore return identical results.
"""

import os

from . import modp_py

try:
    from . import _modp as _compiled
except ImportError:
    _compiled = None

if _compiled is None or os.environ.get("FERMATSYZ_BACKEND") == "python":
    BACKEND = "python"
    _active = modp_py
else:
    BACKEND = "cython"
    _active = _compiled


def rref_mod_p(a, p):
    return _active.rref_mod_p(a, p)
