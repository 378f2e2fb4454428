"""Dodgson condensation.

Level 1 is the input matrix.  Level ``t + 1`` is built from level ``t`` by
taking every connected 2x2 minor and dividing it by the matching interior
entry of level ``t - 1`` (all ones for the first step).  Entry ``(i, j)`` of
level ``t`` is then the determinant of the contiguous ``t x t`` block of the
input starting at ``(i, j)``, and level ``n`` is the 1x1 determinant.

A zero interior entry makes the quotient undefined; :class:`ZeroPolicy`
chooses what happens then.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import Matrix, ShapeError, det_bareiss, minor, MinorSpec
from .scalar import InexactDivisionError, Scalar

__all__ = [
    "ZeroPolicy",
    "PolicyEvent",
    "CondensationTrace",
    "ZeroDivisorError",
    "CondensationAborted",
    "CondensationInvariantError",
    "condense_step",
    "dodgson_det",
    "apply_row_swap_policy",
    "format_trace",
]


class ZeroDivisorError(ArithmeticError):
    """A divisor entry is zero; ``position`` is its 1-based interior index."""

    def __init__(self, position: tuple[int, int], level: int | None = None):
        self.position = position
        self.level = level
        where = f" of level {level}" if level is not None else ""
        super().__init__(f"zero divisor at interior position {position}{where}")


class CondensationAborted(RuntimeError):
    """The zero policy gave up."""

    def __init__(self, message: str, level: int | None = None, position: tuple[int, int] | None = None):
        self.level = level
        self.position = position
        super().__init__(message)


class CondensationInvariantError(AssertionError):
    """A nonzero divisor did not divide the 2x2 minor exactly.

    The Desnanot-Jacobi identity rules this out, so it always indicates a
    bug rather than bad input.
    """


@dataclass(frozen=True)
class ZeroPolicy:
    kind: str = "bareiss_fallback"
    max_restarts: int = 1

    def __post_init__(self):
        if self.kind not in ("fail", "row_swap", "bareiss_fallback"):
            raise ValueError(f"unknown zero policy {self.kind!r}")
        if self.kind == "row_swap" and self.max_restarts < 1:
            raise ValueError("row_swap needs max_restarts >= 1")

    @classmethod
    def parse(cls, text: str) -> "ZeroPolicy":
        """``fail``, ``bareiss_fallback`` or ``row_swap[:N]``."""
        name, _, arg = text.partition(":")
        name = name.strip().replace("-", "_")
        if name == "row_swap":
            return cls(name, int(arg) if arg else 3)
        if arg:
            raise ValueError(f"policy {name!r} takes no argument")
        return cls(name)

    def __str__(self) -> str:
        return f"row_swap:{self.max_restarts}" if self.kind == "row_swap" else self.kind


@dataclass(frozen=True)
class PolicyEvent:
    """``level`` is the level whose interior held the zero, ``position`` its
    1-based interior index (which is also the index of the entry being
    computed two levels further down)."""

    level: int
    position: tuple[int, int]
    action: str
    detail: str = ""

    def __str__(self) -> str:
        r, c = self.position
        tail = f" {self.detail}" if self.detail else ""
        return f"# policy {self.action} at level {self.level} pos ({r},{c}){tail}"


@dataclass
class CondensationTrace:
    levels: list[Matrix] = field(default_factory=list)
    sign: int = 1
    policy_events: list[PolicyEvent] = field(default_factory=list)
    final_det: Scalar | None = None
    divisions: int = 0


def _quotients(current: Matrix, interior: Matrix | None, on_zero):
    dom = current.domain
    m = current.rows
    C = current.data
    exact = dom.kind == "integers"
    mul, sub = dom.mul, dom.sub
    out = []
    divisions = 0
    for i in range(m - 1):
        top, bot = C[i], C[i + 1]
        row = []
        div_row = interior.data[i] if interior is not None else None
        for j in range(m - 1):
            num = sub(mul(top[j], bot[j + 1]), mul(top[j + 1], bot[j]))
            if div_row is None:
                row.append(num)
                continue
            d = div_row[j]
            if not d:
                row.append(on_zero((i + 1, j + 1)))
                continue
            divisions += 1
            if exact:
                q, r = divmod(num, d)
                if r:
                    raise CondensationInvariantError(
                        f"{num} not divisible by {d} at ({i + 1},{j + 1})")
                row.append(q)
            else:
                row.append(dom.div_exact(num, d))
        out.append(tuple(row))
    return Matrix(tuple(out), dom), divisions


def _check_step_shapes(current: Matrix, interior: Matrix | None) -> None:
    if not current.is_square or current.rows < 2:
        raise ShapeError(f"condense_step needs a square matrix of size >= 2, got {current.shape}")
    if interior is not None:
        if interior.shape != (current.rows - 1, current.cols - 1):
            raise ShapeError(
                f"interior must be {current.rows - 1}x{current.rows - 1}, got {interior.shape}")
        if interior.domain != current.domain:
            raise ShapeError("interior and current live in different domains")


def condense_step(current: Matrix, interior: Matrix | None = None) -> Matrix:
    """One condensation step.

    ``interior`` is the ``(m-1) x (m-1)`` divisor, or ``None`` for the all-ones
    divisor of the first step.  A zero divisor raises
    :class:`ZeroDivisorError` carrying its position.
    """
    _check_step_shapes(current, interior)

    def on_zero(pos):
        raise ZeroDivisorError(pos)

    nxt, _ = _quotients(current, interior, on_zero)
    return nxt


def _interior(M: Matrix) -> Matrix:
    n = M.rows
    return minor(M, MinorSpec((1, n), (1, n)))


def _block_det(A: Matrix, i: int, j: int, size: int):
    block = Matrix(tuple(r[j - 1:j - 1 + size] for r in A.data[i - 1:i - 1 + size]), A.domain)
    return det_bareiss(block).value


def _run(A: Matrix, policy: ZeroPolicy, trace: CondensationTrace) -> Matrix:
    """Build the whole pyramid of ``A`` into ``trace.levels``."""
    levels = [A]
    prev = None
    cur = A
    while cur.rows > 1:
        t = len(levels)  # level number of ``cur``
        divisor_level = t - 1

        def on_zero(pos, _t=t, _dl=divisor_level):
            if policy.kind == "bareiss_fallback":
                trace.policy_events.append(PolicyEvent(_dl, pos, "bareiss_fallback"))
                return _block_det(A, pos[0], pos[1], _t + 1)
            raise ZeroDivisorError(pos, _dl)

        nxt, nd = _quotients(cur, _interior(prev) if prev is not None else None, on_zero)
        trace.divisions += nd
        levels.append(nxt)
        prev, cur = cur, nxt
    trace.levels = levels
    return cur


def dodgson_det(A: Matrix, policy: ZeroPolicy | None = None) -> tuple[Scalar, CondensationTrace]:
    """Determinant of ``A`` by condensation, with the full pyramid.

    Over the integers each nonzero division is checked for a zero remainder.
    Under ``fail`` a zero divisor raises :class:`CondensationAborted`; under
    ``row_swap`` rows of ``A`` are swapped and condensation restarts; under
    ``bareiss_fallback`` (the default) the offending entry is computed
    directly as a contiguous minor of ``A``, so the call never aborts.
    """
    policy = policy or ZeroPolicy()
    if not A.is_square:
        raise ShapeError(f"determinant of a non-square {A.rows}x{A.cols} matrix")
    dom = A.domain
    trace = CondensationTrace()
    if A.rows == 0:
        trace.final_det = Scalar(dom.one, dom)
        return trace.final_det, trace

    current = A
    seen = {A.digest()}
    restarts = 0
    while True:
        try:
            last = _run(current, policy, trace)
            break
        except ZeroDivisorError as exc:
            if policy.kind == "fail":
                trace.policy_events.append(PolicyEvent(exc.level, exc.position, "fail"))
                raise CondensationAborted(
                    f"zero divisor at interior position {exc.position} of level {exc.level}",
                    exc.level, exc.position) from None
            current, flip, rows = apply_row_swap_policy(
                current, exc.level, exc.position, restarts, policy.max_restarts, seen)
            restarts += 1
            trace.sign *= flip
            trace.policy_events.append(
                PolicyEvent(exc.level, exc.position, "row_swap", f"rows ({rows[0]},{rows[1]})"))

    value = last.data[0][0]
    if trace.sign < 0:
        value = dom.neg(value)
    trace.final_det = Scalar(value, dom)
    return trace.final_det, trace


def apply_row_swap_policy(A: Matrix, level: int, position: tuple[int, int], restarts_used: int,
                          max_restarts: int, seen: set | None = None):
    """Swap two adjacent rows of ``A`` to move a zero divisor.

    The zero sits in the interior of level ``level``, whose entries are
    determinants of ``level x level`` blocks; its preimage is the block of
    rows ``i+1 .. i+level``.  The bottom row of that block is swapped with
    the row below it, or, if that matrix was already tried, the top row
    with the row above it.  Returns ``(matrix, -1, (r, s))``.

    Raises :class:`CondensationAborted` once ``max_restarts`` is reached or
    when every candidate reproduces a matrix in ``seen`` (which is updated).
    """
    if restarts_used >= max_restarts:
        raise CondensationAborted(
            f"row_swap exhausted {max_restarts} restart(s)", level, position)
    seen = set() if seen is None else seen
    seen.add(A.digest())
    i = position[0]
    n = A.rows
    candidates = [(i + level, i + level + 1), (i, i + 1)]
    for r, s in candidates:
        if not (1 <= r < s <= n):
            continue
        B = A.with_rows_swapped(r, s)
        d = B.digest()
        if d in seen:
            continue
        seen.add(d)
        return B, -1, (r, s)
    raise CondensationAborted("row_swap cannot change the zero pattern", level, position)


def format_trace(trace: CondensationTrace) -> str:
    """Render every level in the matrix file format with ``@level`` headers."""
    from .matfile import format_matrix

    lines = []
    sign = "+1" if trace.sign > 0 else "-1"
    if trace.levels:
        lines.append(f"@domain {trace.levels[0].domain}")
    early = [e for e in trace.policy_events if e.action != "bareiss_fallback"]
    lines.extend(str(e) for e in early)
    for t, M in enumerate(trace.levels, 1):
        lines.append(f"@level {t} @sign {sign}")
        lines.append(format_matrix(M, directive=False).rstrip("\n"))
        lines.extend(str(e) for e in trace.policy_events
                     if e.action == "bareiss_fallback" and e.level == t)
    if trace.final_det is not None:
        lines.append(f"# det {trace.final_det}")
    return "\n".join(lines) + "\n"
