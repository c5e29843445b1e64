"""Kernel backend selection: compiled extension when available, else pure Python.

Set SHAPEGPT_PURE_PYTHON=1 to force the fallback (used by the benchmark to
compare backends).
"""

import os

if os.environ.get("SHAPEGPT_PURE_PYTHON"):
    from . import _kernels_py as impl
else:
    try:
        from . import _kernels_c as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as impl

BACKEND = impl.BACKEND
signed_area = impl.signed_area
point_in_rings = impl.point_in_rings
point_on_rings = impl.point_on_rings
dist_point_segment = impl.dist_point_segment
seg_seg_closest = impl.seg_seg_closest
segment_cuts = impl.segment_cuts
clip_ring_halfplane = impl.clip_ring_halfplane
ray_first_hit = impl.ray_first_hit
