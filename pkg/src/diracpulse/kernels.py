"""Backend selection for the hot per-site/per-mode kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy versions in ``_kernels_np``. Set ``DIRACPULSE_PURE=1`` to force numpy.
"""
import os

import numpy as np

from . import _kernels_np

_compiled = None
if os.environ.get("DIRACPULSE_PURE") != "1":
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _kernels_np
BACKEND = "cython" if _compiled is not None else "numpy"


def compiled_available():
    return _compiled is not None


def _c(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def _r(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def propagate_modes(U, V, k, mass, t):
    return _impl.propagate_modes(_c(U), _c(V), _r(k), float(mass), float(t))


def h0_modes(U, V, k, mass):
    return _impl.h0_modes(_c(U), _c(V), _r(k), float(mass))


def project_modes(U, V, k, mass, sign):
    return _impl.project_modes(_c(U), _c(V), _r(k), float(mass), float(sign))


def potential_half_step(u, v, a, b, tau):
    return _impl.potential_half_step(_c(u), _c(v), _r(a), _r(b), float(tau))


def gauge_phase(u, v, chi, charge):
    return _impl.gauge_phase(_c(u), _c(v), _r(chi), float(charge))


def densities(u, v, charge):
    return _impl.densities(_c(u), _c(v), float(charge))
