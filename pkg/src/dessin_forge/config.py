"""Resource caps shared by the library and the CLI."""

from __future__ import annotations

import os

TABLE_CAP = 4096
DEFAULT_ORDER_CAP = 1 << 20
ORDER_CAP_ENV = "DESSIN_FORGE_ORDER_CAP"


def default_order_cap() -> int:
    raw = os.environ.get(ORDER_CAP_ENV)
    if raw is None:
        return DEFAULT_ORDER_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{ORDER_CAP_ENV} must be positive, got {raw!r}")
    return cap
