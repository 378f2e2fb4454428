"""
Minors and determinant oracles
==============================

Matrices are indexed from 1.  ``minor`` deletes rows and columns;
``det_cofactor`` (Laplace expansion) and ``det_bareiss`` (fraction-free
elimination) compute determinants independently of each other.
"""

from dodgson import INTEGERS, Matrix, build_A_k, build_B_l, det_bareiss, det_cofactor, random_matrix

A = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
print(A.minor(rows=[2], cols=[1]))
print("a_{3,2} =", A[3, 2])

# the two oracles agree on a seeded random matrix
R = random_matrix(INTEGERS, 8, 9, seed=8)
print("cofactor:", det_cofactor(R), " bareiss:", det_bareiss(R))

# A(k) swaps in column n-k as the last column; for k >= 3 that column
# already appears, so the determinant vanishes
n = 6
R = random_matrix(INTEGERS, n, 9, seed=1)
for k in range(n):
    print(f"det A({k}) = {det_bareiss(build_A_k(R, k))}")

# B(l) copies row n-l over row n; singular for every l >= 1
print([str(det_bareiss(build_B_l(R, l))) for l in range(n)])
