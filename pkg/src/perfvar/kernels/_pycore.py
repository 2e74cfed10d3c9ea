"""Pure-Python fallback for the compiled residual-recursion kernel.

The moving-average recursion is inherently sequential, so the general case
runs as a plain Python loop. The pure autoregressive case (q == 0) has no
recursion and is fully vectorized.
"""

from __future__ import annotations

import numpy as np


def css_residuals(z: np.ndarray, phi: np.ndarray, theta: np.ndarray, intercept: float) -> np.ndarray:
    """One-step-ahead residuals of an ARMA recursion, conditioned on the
    first p observations with pre-sample residuals fixed at zero.

    Returns the residual sequence e_p..e_{n-1} (length n - p).
    """
    z = np.ascontiguousarray(z, dtype=np.float64)
    phi = np.ascontiguousarray(phi, dtype=np.float64)
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    p = phi.shape[0]
    q = theta.shape[0]
    n = z.shape[0]
    if n <= p:
        return np.empty(0, dtype=np.float64)

    if q == 0:
        e = z[p:] - intercept
        for i in range(p):
            e = e - phi[i] * z[p - 1 - i:n - 1 - i]
        return np.ascontiguousarray(e)

    e = np.zeros(n, dtype=np.float64)
    for t in range(p, n):
        acc = z[t] - intercept
        for i in range(p):
            acc -= phi[i] * z[t - 1 - i]
        for j in range(q):
            k = t - 1 - j
            if k >= p:
                acc -= theta[j] * e[k]
        e[t] = acc
    return e[p:].copy()
