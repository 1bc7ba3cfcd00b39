"""Hot raster/render kernels with a numba fast path and a numpy fallback.

The backend is chosen once at import: numba when importable, unless the
environment variable ``MAPBEV_NO_NUMBA`` is set to a truthy value. Both
backends are bitwise-equivalent; ``mapbev.bench`` compares their speed.
"""

from __future__ import annotations

import os

from . import _numpy_impl

_BACKENDS = {"numpy": _numpy_impl}

try:  # pragma: no cover - exercised indirectly via backend tests
    if os.environ.get("MAPBEV_NO_NUMBA", "0") not in ("1", "true", "yes"):
        from . import _numba_impl

        _BACKENDS["numba"] = _numba_impl
except ImportError:  # numba missing; numpy path still covers everything
    pass

_active = _BACKENDS.get("numba", _numpy_impl)


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    return "numba" if _active is _BACKENDS.get("numba") else "numpy"


def set_backend(name: str) -> str:
    """Switch kernel backend; returns the previously active backend name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    previous = backend_name()
    _active = _BACKENDS[name]
    return previous


def get_backend(name: str):
    """Direct access to a backend module (used by the benchmark)."""
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    return _BACKENDS[name]


def paint_strokes(canvas, segs, radii, value) -> None:
    _active.paint_strokes(canvas, segs, radii, value)


def render_ground_plane(*args, **kwargs):
    return _active.render_ground_plane(*args, **kwargs)


def hash_noise(seed, rows, cols, channel):
    return _active.hash_noise(seed, rows, cols, channel)
