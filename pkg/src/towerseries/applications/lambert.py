"""Lambert W as a self-referential tower and as a series."""

from __future__ import annotations

import math

from .. import series as S
from .. import tower as T
from ..coeffs import BINARY64, Field
from ..stream import fix


def lambert_w_tower(field: Field = BINARY64) -> T.DTower:
    """All derivatives at 0 of the branch regular there: ``0, 1, -2, 9, -64, ...``.

    W' = exp(-W) / (1 + W), so the tower is the fixpoint of
    ``w = 0 :> exp(-w) / (1 + w)``.
    """
    zero = field.zero
    return fix(lambda w: T.node(lambda: zero, lambda: T.exp(-w) / (1 + w)), T.Node)


def lambert_w_series(w0, field: Field = BINARY64) -> S.Series:
    """Taylor coefficients of W about ``x0 = w0 * exp(w0)`` (where W = w0)."""
    w0 = field.coerce(w0)
    return fix(lambda w: S.sint(w0, S.exp(-w) / (1 + w)), S.Series)


def lambert_center(w0: float) -> float:
    """The abscissa at which W takes the value ``w0``."""
    return w0 * math.exp(w0)
