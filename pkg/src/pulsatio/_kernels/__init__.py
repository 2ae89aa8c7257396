"""Kernel backend selection.

The hot inner loops (packet/wavelet filtering, the Burg lattice, leader
propagation) exist twice: a Cython extension (``_native``) built at install
time and a pure-numpy fallback (``pyref``).  The compiled backend is picked
automatically when importable; set ``PULSATIO_PURE_PYTHON=1`` to force the
fallback (useful for debugging and for the backend benchmark).
"""

import os

from . import pyref

_FORCED_PURE = os.environ.get("PULSATIO_PURE_PYTHON", "").lower() in {"1", "true", "yes"}

if not _FORCED_PURE:
    try:
        from . import _native as _impl
        BACKEND = "native"
    except ImportError:
        _impl = pyref
        BACKEND = "python"
else:
    _impl = pyref
    BACKEND = "python"

burg_reflection = _impl.burg_reflection
modwpt_step = _impl.modwpt_step
dwt_analysis_step = _impl.dwt_analysis_step
dwt_synthesis_step = _impl.dwt_synthesis_step
child_running_max = _impl.child_running_max
neighborhood_max3 = _impl.neighborhood_max3

KERNEL_NAMES = (
    "burg_reflection",
    "modwpt_step",
    "dwt_analysis_step",
    "dwt_synthesis_step",
    "child_running_max",
    "neighborhood_max3",
)


def available_backends():
    """Mapping of backend name -> module, for parity tests and benchmarks."""
    backends = {"python": pyref}
    try:
        from . import _native
        backends["native"] = _native
    except ImportError:
        pass
    return backends
