"""Input validation helpers shared by the public entry points."""

import numpy as np

EPS_GEOM = 1e-12


def check_points(points, min_points=1, name="points"):
    """Return ``points`` as a float64 array of shape (k, 3), k >= min_points."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"{name} must have shape (k, 3), got {arr.shape}")
    if arr.shape[0] < min_points:
        raise ValueError(f"{name} needs at least {min_points} rows, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite coordinates")
    return arr


def check_segment(seg, name="segment"):
    arr = check_points(seg, 2, name)
    if arr.shape[0] != 2:
        raise ValueError(f"{name} must be a pair of points, got {arr.shape[0]}")
    if np.linalg.norm(arr[1] - arr[0]) <= EPS_GEOM:
        raise ValueError(f"{name} has zero length")
    return arr


def check_vector(v, name="vector"):
    arr = np.asarray(v, dtype=np.float64)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_direction(xi, name="xi"):
    """Normalize a nonzero 3-vector to a unit direction."""
    arr = check_vector(xi, name)
    norm = np.linalg.norm(arr)
    if norm <= EPS_GEOM:
        raise ValueError(f"{name} must be nonzero")
    return arr / norm


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)
