"""Small input-checking helpers, in the spirit of sklearn.utils.validation."""

import math
from typing import Iterable, Mapping

import numpy as np

from .exceptions import UnknownMethodError, ValidationError


def check_values(values, *, name="values", min_size=1):
    """Coerce ``values`` to a finite 1-D float array with at least ``min_size`` entries."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size < min_size:
        if min_size == 1:
            raise ValidationError(f"{name} must be non-empty")
        raise ValidationError(f"{name} needs at least {min_size} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite")
    return arr


def check_finite_scalar(x, name):
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError(f"{name} must be finite, got {x!r}")
    return x


def check_positive(x, name, *, strict=True):
    x = check_finite_scalar(x, name)
    if x < 0 or (strict and x == 0):
        raise ValidationError(f"{name} must be {'> 0' if strict else '>= 0'}, got {x!r}")
    return x


def check_methods(available: Iterable[str], requested: Iterable[str]):
    available = set(available)
    missing = [m for m in requested if m not in available]
    if missing:
        raise UnknownMethodError(f"unknown method(s): {', '.join(missing)}")


def check_covers(mapping: Mapping, keys: Iterable, what: str):
    missing = [k for k in keys if k not in mapping]
    if missing:
        raise ValidationError(f"{what} missing for: {', '.join(map(str, missing))}")
