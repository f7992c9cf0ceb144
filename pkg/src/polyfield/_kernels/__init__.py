"""Geometry kernel selection.

The compiled extension ``_core`` is preferred; the numpy fallback has
identical semantics and is used when the extension is missing or when
``POLYFIELD_PURE=1`` is set.  ``BACKEND`` reports which one is active.
"""

import os

from . import _fallback

if os.environ.get("POLYFIELD_PURE", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND

first_hit = _impl.first_hit
point_segs_dist = _impl.point_segs_dist
points_segs_dist = _impl.points_segs_dist
segs_intersect_any = _impl.segs_intersect_any
segs_min_dist = _impl.segs_min_dist
directed_hausdorff = _impl.directed_hausdorff
point_in_polygon = _impl.point_in_polygon
