"""Selects the quadrature core backend at import time.

``heiskern._quadcore`` resolves to the compiled extension when it was
built (the .so shadows the .py), and to the interpreted module
otherwise; both come from the same source file. Set
HEISKERN_PURE_PYTHON=1 to force the interpreted fallback, e.g. to
benchmark or to sidestep a broken binary.
"""

import importlib.util
import os
from pathlib import Path

__all__ = ["core", "backend_name", "load_pure_core"]


def load_pure_core():
    """Load the interpreted twin of the core from its source file."""
    path = Path(__file__).with_name("_quadcore.py")
    spec = importlib.util.spec_from_file_location(
        "heiskern._quadcore_pure", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


if os.environ.get("HEISKERN_PURE_PYTHON") == "1":
    core = load_pure_core()
else:
    from . import _quadcore as core


def backend_name() -> str:
    """'compiled' when the C extension is active, else 'pure'."""
    return "compiled" if core.is_compiled() else "pure"
