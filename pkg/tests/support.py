"""Shared helpers for the test modules."""

import numpy as np

from moyalkw.gauge import residual_stats


def max_residual(residual, points, n=None):
    """Largest |leaf| of a symbolic residual over sampled points."""
    if n is None:
        n = len(next(iter(points.values())))
    return residual_stats("r", residual, points, n).max_abs_residual


def with_params(points, **params):
    n = len(next(iter(points.values())))
    out = dict(points)
    for k, v in params.items():
        out[k] = np.full(n, float(v))
    return out
