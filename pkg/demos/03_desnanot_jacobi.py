"""
Checking the Desnanot-Jacobi identity
=====================================

For any square A and rows/columns k < l,

    det(A) det(A without k,l) = det(A_ll) det(A_kk) - det(A_lk) det(A_kl)

Each check returns a report whose residual is exactly zero when the identity
holds.
"""

from dodgson import (
    INTEGERS,
    DependentInteriorSpec,
    corner_identity_check,
    desnanot_jacobi_check,
    fuzz_identities,
    gamma_lambda_digamma_check,
    lemma3_check,
    make_singular_interior,
    prime_field,
    random_matrix,
    relocate,
)

A = random_matrix(INTEGERS, 5, 9, seed=5)
r = desnanot_jacobi_check(A, 2, 4)
print(r.to_json())
print("P =", r.terms.P, " Q =", r.terms.Q, " det A =", r.terms.lhs_full_det)

# moving k, l to the last two positions turns the general case into the
# corner case without changing any term
B = relocate(A, 2, 4)
print("same terms after relocation:", corner_identity_check(B).terms == r.terms)

# the closed forms used in the inductive step
g = gamma_lambda_digamma_check(A)
print("gamma, lambda, digamma:", g.terms.gamma, g.terms.lam, g.terms.digamma, "ok" if g.passed else "FAIL")

# singular interior: the cross-minor combination vanishes on its own
S = make_singular_interior(6, DependentInteriorSpec((1, -2, 0, 3), 2), INTEGERS, seed=0)
print("lemma 3 residual:", lemma3_check(S).residual)

# a small campaign over GF(7)
summary = fuzz_identities(prime_field(7), (3, 8), 9, trials=50, seed=1)
print(summary.format())
