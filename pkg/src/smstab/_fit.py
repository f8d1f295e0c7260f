import numpy as np


def loglog_slope(x, y) -> float:
    """Least-squares slope of log(y) against log(x)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("need at least two matching samples")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs strictly positive samples")
    if np.ptp(np.log(x)) == 0:
        raise ValueError("samples must not all coincide")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])
