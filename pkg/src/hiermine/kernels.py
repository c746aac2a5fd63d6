"""Kernel selection: compiled extension if importable, else pure Python.

``HIERMINE_KERNEL=python`` forces the fallback; ``HIERMINE_KERNEL=cython``
makes a missing extension an import error instead of a silent fallback.
"""

import os

from . import _pykernel

_choice = os.environ.get("HIERMINE_KERNEL", "").strip().lower()

if _choice == "python":
    active = _pykernel
else:
    try:
        from . import _ckernel as active
    except ImportError:
        if _choice == "cython":
            raise
        active = _pykernel

NAME = active.NAME
count_level = active.count_level
generate_level = active.generate_level


def available():
    """Names of the kernels importable in this environment."""
    names = ["python"]
    try:
        from . import _ckernel  # noqa: F401
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def get(name):
    if name == "python":
        return _pykernel
    if name == "cython":
        from . import _ckernel
        return _ckernel
    raise ValueError(f"unknown kernel {name!r}")
