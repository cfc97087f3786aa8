"""Fitting and feature extraction on observable time series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MIN_FIT_SAMPLES = 10


@dataclass(frozen=True)
class ExpFit:
    """Least-squares fit of |y(t)| to prefactor * exp(-rate * t)."""

    prefactor: float
    rate: float
    prefactor_err: float
    rate_err: float
    window: tuple[float, float]
    residual: float
    n_points: int


def _window_mask(times: np.ndarray, window) -> np.ndarray:
    lo, hi = (float(w) for w in window)
    if not lo < hi:
        raise ValueError(f"window must satisfy lo < hi, got {window}")
    return (times >= lo) & (times <= hi)


def fit_exponential(times, values, window) -> ExpFit:
    """Fit A exp(-gamma t) to |values| inside the time window.

    The fit is linear least squares on log|y|; standard errors come from
    the parameter covariance scaled by the log-space residuals.
    """
    t = np.asarray(times, dtype=float)
    y = np.abs(np.asarray(values, dtype=float))
    mask = _window_mask(t, window)
    t, y = t[mask], y[mask]
    if t.size < MIN_FIT_SAMPLES:
        raise ValueError(
            f"need at least {MIN_FIT_SAMPLES} samples in the window, got {t.size}"
        )
    if np.any(y <= 0.0):
        raise ValueError("values must be nonzero inside the fit window")
    logy = np.log(y)
    coef, cov = np.polyfit(t, logy, 1, cov=True)
    rate = -coef[0]
    prefactor = float(np.exp(coef[1]))
    resid = logy - np.polyval(coef, t)
    rms = float(np.sqrt(np.mean(resid**2)))
    return ExpFit(
        prefactor=prefactor,
        rate=float(rate),
        prefactor_err=float(prefactor * np.sqrt(cov[1, 1])),
        rate_err=float(np.sqrt(cov[0, 0])),
        window=(float(window[0]), float(window[1])),
        residual=rms,
        n_points=int(t.size),
    )


def first_maximum(times, values, threshold: float | None = None) -> tuple[float, float]:
    """Location and height of the first interior local maximum.

    Finds the first sample that rises above its left neighbour and does
    not rise further to the right, then sharpens (t, y) with a parabola
    through the three surrounding points.  `threshold` discards maxima
    whose raw height does not exceed it, which keeps numerical ripple at
    the bottom of a signal that has not arrived yet from shadowing the
    real peak.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.size < 3:
        raise ValueError("need at least three samples")
    floor = -np.inf if threshold is None else float(threshold)
    for i in range(1, t.size - 1):
        if y[i] > floor and y[i] > y[i - 1] and y[i] >= y[i + 1]:
            a, b, c = np.polyfit(t[i - 1:i + 2], y[i - 1:i + 2], 2)
            if a < 0.0:
                t_peak = -b / (2.0 * a)
                if t[i - 1] <= t_peak <= t[i + 1]:
                    return float(t_peak), float(np.polyval([a, b, c], t_peak))
            return float(t[i]), float(y[i])
    raise ValueError("no interior maximum found")


def plateau(times, values, window, exclude=None) -> tuple[float, float]:
    """Mean and standard deviation over a window, minus an optional gap.

    `exclude`, if given, removes the closed interval [exclude[0],
    exclude[1]] (a transient dip, say) before averaging.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    mask = _window_mask(t, window)
    if exclude is not None:
        lo, hi = (float(e) for e in exclude)
        mask &= ~((t >= lo) & (t <= hi))
    if not np.any(mask):
        raise ValueError("window selects no samples")
    sel = y[mask]
    return float(np.mean(sel)), float(np.std(sel))
