"""
Dodgson condensation
====================

Each level holds the connected 2x2 minors of the previous one, divided by
the interior of the level before that.  A zero in that interior stops the
plain algorithm; a zero policy decides what to do instead.
"""

from dodgson import (
    CondensationAborted,
    Matrix,
    ZeroPolicy,
    det_bareiss,
    dodgson_det,
    format_trace,
    prime_field,
    random_matrix,
)

A = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
det, trace = dodgson_det(A)
print(format_trace(trace))

# a zero in the middle of a 3x3 breaks the division of the last step
Z = Matrix.from_rows([[1, 2, 3], [4, 0, 6], [7, 8, 9]])
try:
    dodgson_det(Z, ZeroPolicy("fail"))
except CondensationAborted as exc:
    print("fail policy:", exc)

d, t = dodgson_det(Z, ZeroPolicy("row_swap", 2))
print("row_swap:", d, "sign", t.sign, [str(e) for e in t.policy_events])

d, t = dodgson_det(Z, ZeroPolicy("bareiss_fallback"))
print("fallback:", d, [str(e) for e in t.policy_events])

# over GF(5) zeros are common; the fallback keeps every result exact
GF5 = prime_field(5)
events = 0
for seed in range(200):
    M = random_matrix(GF5, 8, 1, seed)
    d, t = dodgson_det(M)
    assert d == det_bareiss(M)
    events += bool(t.policy_events)
print(f"{events}/200 GF(5) matrices needed the fallback, all agreed with Bareiss")
