"""
Kernel hierarchy
================

Type 1 implies hypermetric implies negative type. Squared Euclidean
distances sit in the middle: negative type, but usually not type 1.

"""

import random

from medianwalls import Kernel, classify, is_cnd, squared_euclidean
from medianwalls.generators import random_kernel

K = squared_euclidean([(0, 0), (3, 0), (1, 2), (-1, 5)])
v = classify(K)
print(v.type1, v.hypermetric, v.negative_type, v.sqrt_type1)

K23 = Kernel([[0 if i == j else (1 if (i < 2) != (j < 2) else 2) for j in range(5)]
              for i in range(5)])
cnd = is_cnd(K23)
print("K23 negative type:", cnd.is_cnd)
print("violation", *cnd.violation, "value", cnd.value)

rng = random.Random(1)
tally = {}
for _ in range(30):
    v = classify(random_kernel(rng, 5))
    key = (v.type1, v.hypermetric, v.negative_type)
    tally[key] = tally.get(key, 0) + 1
for key, count in sorted(tally.items()):
    print(key, count)
