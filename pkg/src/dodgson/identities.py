"""Exact residual checks for the Desnanot-Jacobi identity and its lemmas.

Every check returns a :class:`ResidualReport`; a report passes exactly when
its residual is the zero element of the matrix's domain.  All determinants
here go through :func:`~dodgson.matrix.det_bareiss`, so the checks are
independent of the condensation engine they justify.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations

from .matrix import Matrix, ShapeError, build_A_k, build_B_l, det_bareiss, random_matrix
from .scalar import RingDomain, Scalar

__all__ = [
    "IdentityTerms",
    "ResidualReport",
    "DependentInteriorSpec",
    "PreconditionError",
    "CampaignSummary",
    "mdet",
    "relocate",
    "desnanot_jacobi_check",
    "corner_identity_check",
    "gamma_lambda_digamma_check",
    "lemma3_check",
    "make_singular_interior",
    "random_dependent_spec",
    "expand_A_k",
    "expand_B_l",
    "lemma1_checks",
    "lemma2_checks",
    "fuzz_identities",
]


class PreconditionError(ValueError):
    """The matrix does not satisfy the hypothesis of the identity being checked."""


def mdet(A: Matrix, rows=(), cols=()) -> Scalar:
    """det of ``A`` with the given 1-based rows and columns removed."""
    return det_bareiss(A.minor(rows, cols))


@dataclass(frozen=True)
class IdentityTerms:
    lhs_full_det: Scalar
    lhs_double_minor_det: Scalar
    P: Scalar
    Q: Scalar
    gamma: Scalar | None = None
    lam: Scalar | None = None
    digamma: Scalar | None = None


@dataclass(frozen=True)
class ResidualReport:
    identity_id: str
    residual: Scalar
    n: int
    matrix_digest: str
    terms: IdentityTerms | None = None
    k: int | None = None
    l: int | None = None
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    @property
    def domain(self) -> RingDomain:
        return self.residual.domain

    def to_record(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "n": self.n,
            "domain": str(self.domain),
            "seed": self.seed,
            "k": self.k,
            "l": self.l,
            "residual": str(self.residual),
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


def _report(identity_id, A: Matrix, residual: Scalar, terms=None, k=None, l=None) -> ResidualReport:
    return ResidualReport(identity_id, residual, A.rows, A.digest(), terms, k, l)


def _require(A: Matrix, n_min: int, what: str) -> int:
    if not A.is_square:
        raise ShapeError(f"{what} needs a square matrix, got {A.shape}")
    if A.rows < n_min:
        raise ShapeError(f"{what} needs n >= {n_min}, got {A.rows}")
    return A.rows


def desnanot_jacobi_check(A: Matrix, k: int, l: int) -> ResidualReport:
    """Residual of det(A)·det(A without k,l) = P - Q for deleted pair k < l.

    ``P = det(A_ll)·det(A_kk)`` and ``Q = det(A_lk)·det(A_kl)``, where
    ``A_rc`` drops row r and column c.
    """
    n = _require(A, 3, "desnanot_jacobi_check")
    if not 1 <= k < l <= n:
        raise ShapeError(f"need 1 <= k < l <= {n}, got k={k}, l={l}")
    full = det_bareiss(A)
    inner = mdet(A, (k, l), (k, l))
    P = mdet(A, (l,), (l,)) * mdet(A, (k,), (k,))
    Q = mdet(A, (l,), (k,)) * mdet(A, (k,), (l,))
    terms = IdentityTerms(full, inner, P, Q)
    return _report("desnanot_jacobi", A, full * inner - (P - Q), terms, k, l)


def corner_identity_check(A: Matrix) -> ResidualReport:
    """The ``(k, l) = (n-1, n)`` case: P - Q = det(A)·det(interior)."""
    n = _require(A, 3, "corner_identity_check")
    full = det_bareiss(A)
    inner = mdet(A, (n - 1, n), (n - 1, n))
    P = mdet(A, (n,), (n,)) * mdet(A, (n - 1,), (n - 1,))
    Q = mdet(A, (n,), (n - 1,)) * mdet(A, (n - 1,), (n,))
    terms = IdentityTerms(full, inner, P, Q)
    return _report("corner", A, full * inner - (P - Q), terms, n - 1, n)


def relocate(A: Matrix, k: int, l: int) -> Matrix:
    """Move row and column k to position n-1 and l to position n.

    The same permutation is applied on both sides, so the determinant is
    unchanged; the other rows and columns keep their relative order.
    """
    n = _require(A, 2, "relocate")
    if not 1 <= k < l <= n:
        raise ShapeError(f"need 1 <= k < l <= {n}, got k={k}, l={l}")
    order = [i for i in range(1, n + 1) if i not in (k, l)] + [k, l]
    return A.permuted(order)


def gamma_lambda_digamma_check(A: Matrix) -> ResidualReport:
    """Γ, Λ, ϝ from their 2x2-of-minors definitions against their closed forms.

    The closed forms are det(A minus row n, column c)·det(A minus the last
    three rows and columns) for c = n, n-1, n-2 respectively.  The residual
    is the first nonzero difference, or zero.
    """
    n = _require(A, 4, "gamma_lambda_digamma_check")
    a, b, c = n, n - 1, n - 2

    def d(rows, cols):
        return mdet(A, rows, cols)

    gamma = d((a, c), (a, c)) * d((a, b), (a, b)) - d((a, b), (a, c)) * d((a, c), (a, b))
    lam = d((a, c), (b, c)) * d((a, b), (a, b)) - d((a, b), (b, c)) * d((a, c), (a, b))
    digamma = d((a, c), (b, c)) * d((a, b), (a, c)) - d((a, c), (a, c)) * d((a, b), (b, c))

    inner3 = d((a, b, c), (a, b, c))
    closed = (d((a,), (a,)) * inner3, d((a,), (b,)) * inner3, d((a,), (c,)) * inner3)
    diffs = [gamma - closed[0], lam - closed[1], digamma - closed[2]]
    residual = next((x for x in diffs if not x.is_zero()), diffs[0])

    full = det_bareiss(A)
    inner = d((b, a), (b, a))
    P = d((a,), (a,)) * d((b,), (b,))
    Q = d((a,), (b,)) * d((b,), (a,))
    terms = IdentityTerms(full, inner, P, Q, gamma, lam, digamma)
    return _report("gamma_lambda_digamma", A, residual, terms)


def lemma3_check(A: Matrix) -> ResidualReport:
    """With a singular interior, det(A_nn)det(A_{n-1,n-1}) - det(A_{n,n-1})det(A_{n-1,n}) vanishes.

    Raises :class:`PreconditionError` if the interior (A without rows and
    columns n-1, n) is not singular.
    """
    n = _require(A, 3, "lemma3_check")
    inner = mdet(A, (n - 1, n), (n - 1, n))
    if not inner.is_zero():
        raise PreconditionError(f"interior determinant is {inner}, not zero")
    P = mdet(A, (n,), (n,)) * mdet(A, (n - 1,), (n - 1,))
    Q = mdet(A, (n,), (n - 1,)) * mdet(A, (n - 1,), (n,))
    terms = IdentityTerms(det_bareiss(A), inner, P, Q)
    return _report("lemma3", A, P - Q, terms, n - 1, n)


@dataclass(frozen=True)
class DependentInteriorSpec:
    """Coefficients ``lambdas[i-1]`` for rows i = 1..n-2, and the row they rebuild.

    Row ``replaced_row`` of the interior block becomes the combination of the
    *other* interior rows; its own coefficient is ignored.
    """

    lambdas: tuple
    replaced_row: int

    def validate(self, n: int) -> None:
        if len(self.lambdas) != n - 2:
            raise ValueError(f"need {n - 2} coefficients, got {len(self.lambdas)}")
        if not 1 <= self.replaced_row <= n - 2:
            raise ValueError(f"replaced_row must lie in 1..{n - 2}")
        if not any(self.lambdas):
            raise ValueError("at least one coefficient must be nonzero")


def make_singular_interior(n: int, lambda_spec: DependentInteriorSpec, domain: RingDomain,
                           seed: int, entry_bound: int = 9) -> Matrix:
    """Random n x n matrix whose leading (n-2) x (n-2) block has dependent rows.

    Everything is random except row ``replaced_row`` on columns 1..n-2, which
    is overwritten by the lambda-combination of the other rows there.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    lambda_spec.validate(n)
    A = random_matrix(domain, n, entry_bound, seed)
    lam = [domain.convert(x) for x in lambda_spec.lambdas]
    k = lambda_spec.replaced_row
    combo = []
    for j in range(n - 2):
        s = domain.zero
        for i in range(n - 2):
            if i + 1 != k:
                s = domain.add(s, domain.mul(lam[i], A.data[i][j]))
        combo.append(s)
    row = tuple(combo) + A.data[k - 1][n - 2:]
    return A.with_row(k, row)


def random_dependent_spec(n: int, domain: RingDomain, rng: random.Random, bound: int = 3) -> DependentInteriorSpec:
    k = rng.randint(1, n - 2)
    while True:
        lam = tuple(rng.randint(-bound, bound) for _ in range(n - 2))
        if any(domain.convert(x) for x in lam):
            return DependentInteriorSpec(lam, k)


def expand_A_k(A: Matrix, k: int) -> Scalar:
    """det A(k) expanded along its last column, from minors of ``A``.

    a_{n,n-k}·det(A minus rows/cols n, n-1, n-2) plus, for l = 3..n-1,
    (-1)^l · a_{n-l,n-k} · det(A minus rows n-1, n-2, n-l and cols n, n-1, n-2).
    """
    n = A.rows
    cols = (n, n - 1, n - 2)
    total = A[n, n - k] * mdet(A, cols, cols)
    for l in range(3, n):
        term = A[n - l, n - k] * mdet(A, (n - 1, n - 2, n - l), cols)
        total = total - term if l % 2 else total + term
    return total


def expand_B_l(A: Matrix, l: int) -> Scalar:
    """det B(l) expanded along its last row: sum over k of (-1)^k a_{n-l,n-k} det(A_{n,n-k})."""
    n = A.rows
    total = Scalar(A.domain.zero, A.domain)
    for k in range(n):
        term = A[n - l, n - k] * mdet(A, (n,), (n - k,))
        total = total - term if k % 2 else total + term
    return total


def lemma1_checks(A: Matrix) -> list[ResidualReport]:
    """Vanishing of det A(k) for k >= 3, and the last-column expansion for every k."""
    n = _require(A, 4, "lemma1_checks")
    out = []
    for k in range(n):
        d = det_bareiss(build_A_k(A, k))
        if k >= 3:
            out.append(_report("A_k_vanishing", A, d, k=k))
        out.append(_report("A_k_expansion", A, d - expand_A_k(A, k), k=k))
    return out


def lemma2_checks(A: Matrix) -> list[ResidualReport]:
    """Vanishing of det B(l) for l >= 1, and the last-row expansion for every l."""
    n = _require(A, 2, "lemma2_checks")
    out = []
    for l in range(n):
        d = det_bareiss(build_B_l(A, l))
        if l >= 1:
            out.append(_report("B_l_vanishing", A, d, l=l))
        out.append(_report("B_l_expansion", A, d - expand_B_l(A, l), l=l))
    return out


@dataclass
class CampaignSummary:
    """Pass/fail counts per identity, in first-seen order."""

    counts: dict = field(default_factory=dict)
    reports: list = field(default_factory=list)
    trials: int = 0

    @property
    def failures(self) -> int:
        return sum(f for _, f in self.counts.values())

    @property
    def first_failure(self) -> ResidualReport | None:
        return next((r for r in self.reports if not r.passed), None)

    def add(self, report: ResidualReport) -> None:
        p, f = self.counts.get(report.identity_id, (0, 0))
        self.counts[report.identity_id] = (p + 1, f) if report.passed else (p, f + 1)
        self.reports.append(report)

    def format(self) -> str:
        lines = [f"trials: {self.trials}"]
        for ident, (p, f) in self.counts.items():
            lines.append(f"{ident}: passed {p} failed {f}")
        lines.append(f"failures: {self.failures}")
        if self.first_failure is not None:
            lines.append("first failure: " + self.first_failure.to_json())
        return "\n".join(lines)


def _trial(args) -> list[ResidualReport]:
    domain, n, bound, seed, tamper = args
    A = random_matrix(domain, n, bound, seed)
    rng = random.Random(seed + 1)
    pairs = list(combinations(range(1, n + 1), 2))
    if n > 5:
        pairs = sorted(rng.sample(pairs, 5))
    reports = []
    for k, l in pairs:
        r = desnanot_jacobi_check(A, k, l)
        if tamper:
            r = replace(r, residual=r.residual + 1)
        reports.append(r)
    reports.append(corner_identity_check(A))
    if n >= 4:
        reports.append(gamma_lambda_digamma_check(A))
        reports.extend(lemma1_checks(A))
    reports.extend(lemma2_checks(A))
    return [replace(r, seed=seed) for r in reports]


def fuzz_identities(domain: RingDomain, n_range: tuple[int, int], entry_bound: int, trials: int,
                    seed: int, *, workers: int = 1, tamper: bool = False) -> CampaignSummary:
    """Run every identity check on ``trials`` seeded random matrices.

    Sizes are drawn from the inclusive ``n_range``.  For n <= 5 all pairs
    (k, l) are checked, otherwise five random ones.  The summary depends
    only on the arguments; with ``workers > 1`` trials run in a process pool
    and are merged in trial order.  ``tamper`` corrupts every
    Desnanot-Jacobi residual and exists to test the harness itself.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    lo, hi = n_range
    if not 3 <= lo <= hi:
        raise ValueError(f"n_range must satisfy 3 <= lo <= hi, got {n_range}")
    master = random.Random(seed)
    jobs = [(domain, master.randint(lo, hi), entry_bound, master.getrandbits(64), tamper)
            for _ in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_trial, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = map(_trial, jobs)
    summary = CampaignSummary(trials=trials)
    for reports in results:
        for r in reports:
            summary.add(r)
    return summary
