#!/usr/bin/env python3
"""Closed-form and least-squares reference values frozen into the unit tests."""

import math
from fractions import Fraction

import numpy as np


def detection():
    for cells in (1, 20, 100):
        print(f'detection_probability({cells}, 0.05) = {-math.expm1(-0.05 * cells)!r}')


def pii():
    exact = Fraction(1, 2) * Fraction('61.71') + Fraction(1, 2) * Fraction('38')
    computed = 0.5 * 61.71 + 0.5 * 38.0
    print(f'pii exact = {exact} = {float(exact)!r}; double evaluation = {computed!r}')
    print(f'  nearest double to exact == double evaluation: {float(exact) == computed}')
    print(f'  Fraction(double evaluation) - exact = {Fraction(computed) - exact}')
    on_inputs = Fraction(0.5) * Fraction(61.71) + Fraction(0.5) * Fraction(38.0)
    print(f'  exact value on the double inputs, rounded once = {float(on_inputs)!r} '
          f'(equals double evaluation: {float(on_inputs) == computed})')
    print(f'  display truncated to 2 decimals = {repr(computed)[:repr(computed).index(".") + 3]}')


def weather():
    for day in (1, 100, 196, 300):
        t = 14.0 + 7.5 * math.cos(2.0 * math.pi * (day - 196) / 365.0)
        s = 4.4 + 2.6 * math.cos(2.0 * math.pi * (day - 196) / 365.0)
        print(f'synth noise-free day {day}: temp {t!r} sunshine {s!r}')


def ols():
    # 12 samples, 2 features, fixed residuals.
    x1 = np.arange(12, dtype=float)
    x2 = np.array([(i * i) % 7 for i in range(12)], dtype=float)
    e = np.array([0.3, -0.2, 0.1, 0.4, -0.5, 0.2, -0.1, 0.0, 0.25, -0.35, 0.15, -0.05])
    y = 3.0 + 2.0 * x1 - 0.5 * x2 + e
    X = np.column_stack([np.ones(12), x1, x2])
    beta = np.linalg.solve(X.T @ X, X.T @ y)
    resid = y - X @ beta
    r2 = 1 - resid @ resid / ((y - y.mean()) @ (y - y.mean()))
    print('ols y =', ', '.join(repr(v) for v in y))
    print('ols beta (intercept, b1, b2) =', ', '.join(repr(v) for v in beta))
    print('ols r2 =', repr(r2))


def foodflow():
    # 6x4 map, cell 10 m, hive at (0,0); crop patch A = {(2,0),(3,0),(3,1)}, B = {(5,3)}.
    hive = (5.0, 5.0)
    a = [(25.0, 5.0), (35.0, 5.0), (35.0, 15.0)]
    cx = sum(p[0] for p in a) / 3
    cy = sum(p[1] for p in a) / 3
    print('patch A centroid', repr(cx), repr(cy), 'dist', repr(math.hypot(cx - hive[0], cy - hive[1])))
    print('patch A nectar', repr(300.0 * 0.002), 'pollen', repr(300.0 * 0.1),
          'detect', repr(-math.expm1(-0.05 * 3)))
    print('patch B dist', repr(math.hypot(55.0 - 5.0, 35.0 - 5.0)))
    mean_crop = (300.0 * 0.002 + 100.0 * 0.002) / 2
    print('artificial nectar', repr(0.1 * mean_crop))


def weights():
    print('visit_weight(nectar 0.6, d 500, d0 1000) =', repr(0.6 / (1.0 + 500.0 / 1000.0)))


if __name__ == '__main__':
    detection()
    pii()
    weather()
    ols()
    foodflow()
    weights()
