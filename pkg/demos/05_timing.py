"""
Timing the determinant algorithms
=================================

Median wall time of Bareiss elimination against condensation with the
fallback policy.  The numbers are informational only.
"""

import statistics
import time

from dodgson import INTEGERS, det_bareiss, dodgson_det, random_matrix


def median_time(fn, A, reps=3):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn(A)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


print(f"{'n':>5} {'bareiss':>10} {'dodgson':>10}")
for n in (20, 50, 100):
    A = random_matrix(INTEGERS, n, 99, seed=n)
    tb = median_time(det_bareiss, A)
    td = median_time(lambda M: dodgson_det(M), A)
    print(f"{n:>5} {tb:>10.4f} {td:>10.4f}")

# the same table is available from the command line:
#   dodgson bench --sizes 20,50,100 --repetitions 3
