"""
Median closures in l1
=====================

Four points of R^7 at mutual distance 2, closed under the coordinatewise
median. The closure size jumps around as the points move.

"""

from fractions import Fraction as F

from medianwalls import L1Points, is_median, median_closure


def y_points(x):
    h, r = x / 2, 1 - x
    out = []
    for k, s in enumerate([(1, 1, 1), (-1, -1, 1), (1, -1, -1), (-1, 1, -1)]):
        p = [h * v for v in s] + [F(0)] * 4
        p[3 + k] = r
        out.append(p)
    return out


for x in (F(0), F(1, 2), F(1)):
    M, coords = median_closure(L1Points(y_points(x)))
    print(f"x = {x}: {M.n} points, median: {bool(is_median(M))}")

# the closure keeps the generators first
M, coords = median_closure(L1Points(y_points(F(0))))
print(*coords[-1])
