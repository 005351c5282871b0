"""Select the compiled kernels when available, else the pure-Python ones.

Set ``GAMMASEQ_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pycore

if os.environ.get("GAMMASEQ_PURE_PYTHON", "") not in ("", "0"):
    impl = _pycore
    NAME = "python"
else:
    try:
        from . import _core as impl
    except ImportError:
        impl = _pycore
        NAME = "python"
    else:
        NAME = "cython"

partial_sum = impl.partial_sum
harmonic_table = impl.harmonic_table
scan_na = impl.scan_na
lgamma_asym = impl.lgamma_asym
digamma_asym = impl.digamma_asym
trigamma_asym = impl.trigamma_asym
trigamma_excess_asym = impl.trigamma_excess_asym


def available():
    """Names of the backends importable in this environment."""
    names = ["python"]
    try:
        from . import _core  # noqa: F401
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def get(name):
    if name == "python":
        return _pycore
    if name == "cython":
        from . import _core

        return _core
    raise ValueError(f"unknown backend {name!r}")
