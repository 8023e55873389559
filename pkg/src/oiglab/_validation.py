"""Small input-coercion helpers shared by the library, estimators and CLI."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _Rational

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import InvalidSampleError, OIGError


def as_fraction(value, max_denominator: int = 10 ** 6) -> Fraction:
    """Coerce ints, Fractions, "p/q" strings and floats to a Fraction.

    Floats are snapped with ``limit_denominator`` so that ``7/3`` typed as a
    float is read back as the rational it was meant to be.
    """
    if isinstance(value, bool):
        raise OIGError(f"expected a number, got {value!r}")
    if isinstance(value, (_Rational, int, np.integer)):
        return Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise OIGError(f"not a rational number: {value!r}") from None
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise OIGError(f"not a finite number: {value!r}")
        return Fraction(float(value)).limit_denominator(max_denominator)
    raise OIGError(f"expected a number, got {value!r}")


def check_point_indices(X, num_points: int) -> tuple:
    """1-D array of domain-point indices -> tuple of ints."""
    arr = check_array(np.asarray(X).reshape(1, -1) if np.ndim(X) == 1 else X,
                      dtype=None, ensure_2d=True)
    if arr.shape[0] != 1:
        raise InvalidSampleError("expected a single sample (1-D array of point indices)")
    arr = arr.ravel()
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise InvalidSampleError("point indices must be integers")
        arr = arr.astype(int)
    if arr.min() < 0 or arr.max() >= num_points:
        raise InvalidSampleError(f"point index out of range [0, {num_points})")
    return tuple(int(x) for x in arr)


def check_partial_rows(X, n: int, num_labels: int) -> np.ndarray:
    """Rows of label indices with exactly one ``-1`` marking the hole."""
    arr = check_array(X, dtype=np.int64, ensure_2d=True)
    if arr.shape[1] != n:
        raise InvalidSampleError(f"expected rows of length {n}, got {arr.shape[1]}")
    holes = (arr == -1).sum(axis=1)
    if np.any(holes != 1):
        raise InvalidSampleError("each row must contain exactly one -1 (the hole)")
    bad = (arr != -1) & ((arr < 0) | (arr >= num_labels))
    if np.any(bad):
        raise InvalidSampleError("label index out of range")
    return arr
