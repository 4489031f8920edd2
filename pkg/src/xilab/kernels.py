"""Backend selection for the numerical kernels.

The compiled extension ``xilab._ckernels`` is used when it imports; otherwise
the pure-Python twins in ``xilab._pykernels`` take over. Setting
``XILAB_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("XILAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND

zeta_em = _impl.zeta_em
eta_borwein = _impl.eta_borwein
bessel_k_scaled = _impl.bessel_k_scaled
radial_dp45 = _impl.radial_dp45


def available_backends():
    """Map backend name to kernel module for every backend that imports."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
