"""Scan-kernel backend selection.

The compiled Cython kernel is preferred; the pure-numpy kernel is the
fallback when the extension was not built.  Both implement the identical
`scan_box` contract and return bit-identical results (see grid_py docstring),
so selection only affects speed.
"""

from . import grid_py

try:
    from . import _grid_cy
    _default = _grid_cy
    BACKEND = "compiled"
except ImportError:  # extension not built
    _grid_cy = None
    _default = grid_py
    BACKEND = "python"

scan_box = _default.scan_box


def get_backend(name: str | None = None):
    """Return a kernel module by name ('compiled' or 'python'); default backend if None."""
    if name is None:
        return _default
    if name == "python":
        return grid_py
    if name == "compiled":
        if _grid_cy is None:
            raise RuntimeError("compiled kernel is not available (extension not built)")
        return _grid_cy
    raise ValueError(f"unknown kernel backend {name!r}")
