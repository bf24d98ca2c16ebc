"""The 2-extension of a coherent configuration, its 2-closure, and cylindrical relations.

Points of the extension are pairs ``(a, b)`` of base points, stored at index
``a * n + b``; a cell of the extension is therefore a 4-tuple ``(a, b, c, d)``
at row-major index ``((a * n + b) * n + c) * n + d``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cc.closure import closure_of_coloring
from .cc.config import CoherentConfiguration, tensor_product
from .errors import BudgetExceeded, NotColorExactError
from .graphs import BinaryRelation

EXTENSION_MAX_POINTS = 24


@dataclass(frozen=True, eq=False)
class TwoExtension:
    base: CoherentConfiguration
    extended: CoherentConfiguration
    diagonal_points: np.ndarray

    @property
    def n(self) -> int:
        return self.base.n


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise BudgetExceeded("2-extension base point count", n, cap)


def two_extension(cc: CoherentConfiguration, cap: int = EXTENSION_MAX_POINTS,
                  method: str = "auto") -> TwoExtension:
    """Coherent closure of the tensor square together with the diagonal-point relation."""
    n = cc.n
    _check_cap(n, cap)
    square = tensor_product([cc, cc]).color
    diag_pts = np.arange(n) * n + np.arange(n)
    one_delta = np.zeros((n * n, n * n), dtype=bool)
    one_delta[diag_pts, diag_pts] = True
    start = square * 2 + (~one_delta)
    ext = closure_of_coloring(start, tags={"Delta": one_delta}, method=method)
    diag_pts.setflags(write=False)
    return TwoExtension(cc, ext, diag_pts)


def two_closure(cc: CoherentConfiguration, cap: int = EXTENSION_MAX_POINTS,
                extension: TwoExtension | None = None) -> CoherentConfiguration:
    """Restriction of the 2-extension to the diagonal points, moved back to the base points."""
    ext = extension or two_extension(cc, cap)
    d = ext.diagonal_points
    return CoherentConfiguration.from_colors(ext.extended.color[np.ix_(d, d)])


def is_two_closed(cc: CoherentConfiguration, cap: int = EXTENSION_MAX_POINTS,
                  extension: TwoExtension | None = None) -> bool:
    return two_closure(cc, cap, extension).same_partition(cc)


def _relation_mask(cc: CoherentConfiguration, s) -> np.ndarray:
    if isinstance(s, BinaryRelation):
        return s.matrix
    if isinstance(s, np.ndarray) and s.dtype == bool:
        return s
    return cc.relation(s)


def cylinder_mask(s_mask: np.ndarray, i: int, j: int) -> np.ndarray:
    """``{(x, y) : (x_i, y_j) in s}`` on pair-points, for ``i, j`` in {1, 2}."""
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError(f"cylinder indices must be 1 or 2, got ({i}, {j})")
    n = s_mask.shape[0]
    a, b = np.divmod(np.arange(n * n), n)
    xi = a if i == 1 else b
    yj = a if j == 1 else b
    return s_mask[xi[:, None], yj[None, :]]


def cylinder(cc: CoherentConfiguration, s, i: int, j: int) -> BinaryRelation:
    """Cylindrical relation of a relation ``s`` of ``cc`` (colors, mask or BinaryRelation)."""
    mask = np.asarray(_relation_mask(cc, s), dtype=bool)
    if not cc.is_color_exact(mask):
        raise NotColorExactError("cylinder base relation is not a union of colors")
    return BinaryRelation(cc.n * cc.n, cylinder_mask(mask, i, j))
