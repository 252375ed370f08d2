"""Reference values of the convergence and decay tables, three significant digits.

Each entry maps ``mu`` to ``(degree, value, order)`` rows; the first order is
``None``.
"""

from __future__ import annotations

__all__ = ["TABLE1_LINF", "TABLE1_WLINF", "TABLE2", "TABLE3_LINF", "TABLE3_L2"]

TABLE1_LINF = {
    1.7: ((8, 5.81e-03, None), (16, 2.03e-03, 1.52), (32, 6.72e-04, 1.60),
          (64, 2.15e-04, 1.65), (128, 6.74e-05, 1.67), (256, 2.09e-05, 1.69)),
    2.6: ((8, 2.35e-03, None), (16, 4.38e-04, 2.42), (32, 8.01e-05, 2.45),
          (64, 1.40e-05, 2.52), (128, 2.37e-06, 2.56), (256, 3.97e-07, 2.58)),
}

TABLE1_WLINF = {
    1.7: ((8, 5.81e-03, None), (16, 2.03e-03, 1.52), (32, 6.72e-04, 1.60),
          (64, 2.15e-04, 1.65), (128, 6.74e-05, 1.67), (256, 2.09e-05, 1.69)),
    2.6: ((8, 2.22e-03, None), (16, 4.38e-04, 2.34), (32, 8.01e-05, 2.45),
          (64, 1.40e-05, 2.52), (128, 2.37e-06, 2.56), (256, 3.97e-07, 2.58)),
}

TABLE2 = {
    0.1: ((8, 1.26e-02, None), (16, 5.59e-03, 1.17), (32, 2.47e-03, 1.18),
          (64, 1.08e-03, 1.19), (128, 4.73e-04, 1.19)),
    1.2: ((8, 6.86e-04, None), (16, 6.59e-05, 3.38), (32, 6.41e-06, 3.36),
          (64, 6.20e-07, 3.37), (128, 5.94e-08, 3.38)),
    2.6: ((8, 1.42e-04, None), (16, 1.35e-06, 6.72), (32, 1.86e-08, 6.18),
          (64, 2.60e-10, 6.16), (128, 3.49e-12, 6.22)),
}

TABLE3_LINF = {
    0.1: ((8, 6.15e-01, None), (16, 5.41e-01, 0.18), (32, 4.74e-01, 0.19),
          (64, 4.14e-01, 0.20), (128, 3.61e-01, 0.20), (256, 3.15e-01, 0.20)),
    1.2: ((8, 2.27e-03, None), (16, 4.87e-04, 2.22), (32, 9.87e-05, 2.30),
          (64, 1.94e-05, 2.35), (128, 3.74e-06, 2.37), (256, 7.15e-07, 2.39)),
}

TABLE3_L2 = {
    0.1: ((8, 8.82e-03, None), (16, 4.11e-03, 1.10), (32, 1.85e-03, 1.15),
          (64, 8.22e-04, 1.17), (128, 3.61e-04, 1.19), (256, 1.58e-04, 1.19)),
    1.2: ((8, 2.32e-04, None), (16, 2.64e-05, 3.14), (32, 2.75e-06, 3.26),
          (64, 2.74e-07, 3.33), (128, 2.67e-08, 3.36), (256, 2.56e-09, 3.38)),
}
