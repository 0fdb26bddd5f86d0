"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when importable; otherwise the
numpy implementation in ``_pykernels`` takes over. Setting the environment
variable ``IMSFEAT_PURE_PYTHON=1`` forces the fallback.
"""

import importlib
import os

_BACKENDS = {"compiled": "imsfeat._ckernels", "python": "imsfeat._pykernels"}


def load_backend(name):
    """Import a backend module by name ("compiled" or "python")."""
    return importlib.import_module(_BACKENDS[name])


def available_backends():
    names = []
    for name in _BACKENDS:
        try:
            load_backend(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    if os.environ.get("IMSFEAT_PURE_PYTHON", "") not in ("", "0"):
        return "python", load_backend("python")
    try:
        return "compiled", load_backend("compiled")
    except ImportError:
        return "python", load_backend("python")


BACKEND, _impl = _select()

ims_weight_counts = _impl.ims_weight_counts
kmeans_step = _impl.kmeans_step
zero_one_max = _impl.zero_one_max
