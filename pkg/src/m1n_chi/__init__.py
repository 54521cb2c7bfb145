"""Exact Euler characteristics of Hodge and cotangent line bundles on M_{1,n}-bar."""

ENGINE_VERSION = "1"

from .series import MultiSeries, geom  # noqa: E402
from .genus1 import ChiTable, chi_table, x1_series, x_series  # noqa: E402

__all__ = ["ENGINE_VERSION", "MultiSeries", "geom", "ChiTable", "chi_table", "x1_series", "x_series"]
