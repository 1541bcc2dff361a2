"""Set-operation engines and the exact combinatorial machinery behind the
expander experiments: sumsets and images, d-fold iterates, linear-factor
scans, degeneracy detection, the bad-value set of a bivariate polynomial,
the squares-in-an-interval construction, and the sumset inequalities that
must hold with no constants attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import (
    DegeneracyDetected,
    DivisionByZero,
    InvariantViolated,
    PreconditionViolated,
    ZeroPolynomial,
)
from .field import FieldCtx
from .polynomials import PolyBi, PolyUni, linear_form_remainder

_OP_CODES = {"+": 0, "-": 1, "*": 2}


def as_set(ctx: FieldCtx, A) -> np.ndarray:
    """Canonical sorted unique element-index array."""
    arr = np.unique(np.asarray(list(A), dtype=np.int64).reshape(-1))
    if arr.size and (arr[0] < 0 or arr[-1] >= ctx.q):
        raise PreconditionViolated("element index out of range")
    return arr


def op_set(ctx: FieldCtx, A, B, op: str) -> np.ndarray:
    """Exact {a op b : a in A, b in B}, sorted."""
    a = as_set(ctx, A)
    b = as_set(ctx, B)
    if op == "/":
        if b.size and np.any(b == 0):
            raise DivisionByZero("0 in divisor set")
        b = np.sort(ctx.inv_arr(b)) if b.size else b
        op = "*"
    if op not in _OP_CODES:
        raise PreconditionViolated(f"unknown set operation {op!r}")
    if a.size == 0 or b.size == 0:
        return np.empty(0, dtype=np.int64)
    if ctx.k == 1:
        return _kernels.pairwise_zp(a, b, ctx.p, _OP_CODES[op])
    if op == "+":
        z = ctx.add_arr(a[:, None], b[None, :])
    elif op == "-":
        z = ctx.sub_arr(a[:, None], b[None, :])
    else:
        z = ctx.mul_arr(a[:, None], b[None, :])
    return np.unique(z.reshape(-1))


def dfold(ctx: FieldCtx, A, op: str, d: int) -> np.ndarray:
    """d-fold iterated sum- or product-set, left-folded."""
    if op not in "+*":
        raise PreconditionViolated("dfold supports '+' and '*' only")
    if d < 2:
        raise PreconditionViolated("d must be >= 2")
    a = as_set(ctx, A)
    if op == "*" and a.size and a[0] == 0:
        raise PreconditionViolated("0 not allowed in a product-fold base set")
    out = a
    for _ in range(d - 1):
        out = op_set(ctx, out, a, op)
    return out


def image_uni(ctx: FieldCtx, f: PolyUni, A) -> np.ndarray:
    a = as_set(ctx, A)
    if a.size == 0:
        return a
    return np.unique(f.eval_arr(ctx, a))


def image_bi(ctx: FieldCtx, P: PolyBi, E) -> np.ndarray:
    pts = np.asarray(list(E), dtype=np.int64).reshape(-1, 2)
    if pts.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    return np.unique(P.eval_pairs(ctx, pts[:, 0], pts[:, 1]))


def pair_set(ctx: FieldCtx, f: PolyBi, E, F) -> np.ndarray:
    """Exact {f(x1 - y1, x2 - y2) : x in E, y in F}."""
    e = np.asarray(list(E), dtype=np.int64).reshape(-1, 2)
    fr = np.asarray(list(F), dtype=np.int64).reshape(-1, 2)
    if e.shape[0] == 0 or fr.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    d1 = ctx.sub_arr(e[:, None, 0], fr[None, :, 0])
    d2 = ctx.sub_arr(e[:, None, 1], fr[None, :, 1])
    return np.unique(f.eval_pairs(ctx, d1, d2))


# ---------------------------------------------------------------------------
# Linear factors, degeneracy, bad values
# ---------------------------------------------------------------------------


def linear_factor_scan(ctx: FieldCtx, P: PolyBi) -> list[tuple[int, int, int]]:
    """All linear divisors alpha*x + beta*y + gamma of P, up to scalar.

    Normalization: the first nonzero of (alpha, beta) is 1, so candidates
    are (1, beta, gamma) and (0, 1, gamma): q^2 + q exact divisions.
    """
    if P.is_zero:
        raise ZeroPolynomial("zero polynomial has every linear factor")
    found = []
    for beta in range(ctx.q):
        for gamma in range(ctx.q):
            if linear_form_remainder(ctx, P, 1, beta, gamma).is_zero:
                found.append((1, beta, gamma))
    for gamma in range(ctx.q):
        if linear_form_remainder(ctx, P, 0, 1, gamma).is_zero:
            found.append((0, 1, gamma))
    return found


@lru_cache(maxsize=None)
def line_tables(ctx: FieldCtx) -> np.ndarray:
    """(q+1, q, q) flat grid indices of the lines of F_q^2, grouped by the
    direction of the linear form; grid index of (x, y) is x*q + y."""
    q = ctx.q
    els = ctx.elements()
    out = np.empty((q + 1, q, q), dtype=np.int32)
    # form y = t
    for t in range(q):
        out[0, t] = els * q + t
    # forms x + v*y = t: points ((t - v*y), y)
    for v in range(q):
        vy = ctx.mul_arr(np.int64(v), els)
        for t in range(q):
            xs = ctx.sub_arr(np.int64(t), vy)
            out[v + 1, t] = xs * q + els
    out.flags.writeable = False
    return out


def is_degenerate(ctx: FieldCtx, P: PolyBi) -> bool:
    """True when P = Q(L) for a univariate Q and a linear form L, tested by
    constancy on every level set of some direction (exact for deg P < q)."""
    k = P.total_degree
    if k <= 0:
        return True  # constants are Q(L) with constant Q
    if k == 1:
        return True
    if k >= ctx.q:
        raise PreconditionViolated("functional degeneracy test needs deg P < q")
    values = P.eval_grid(ctx).reshape(-1)
    lines = line_tables(ctx)
    for d in range(lines.shape[0]):
        lv = values[lines[d]]
        if np.all(lv == lv[:, :1]):
            return True
    return False


def bad_set_delta(ctx: FieldCtx, P: PolyBi, assume_nondegenerate: bool = False) -> frozenset[int]:
    """{a : P - a has a linear factor}, by scanning each level.

    Raises DegeneracyDetected for degenerate P and InvariantViolated if the
    bad set is larger than deg(P) - 1, which no tested input has achieved.
    """
    if not assume_nondegenerate and is_degenerate(ctx, P):
        raise DegeneracyDetected(f"{P!r} is a univariate of a linear form")
    delta = set()
    for a in range(ctx.q):
        if linear_factor_scan(ctx, P.sub_const(ctx, a)):
            delta.add(a)
    k = P.total_degree
    if len(delta) > k - 1:
        raise InvariantViolated(
            f"bad set has {len(delta)} elements, expected <= {k - 1}"
        )
    return frozenset(delta)


def delta_stats_fast(ctx: FieldCtx, grids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched (|bad set|, degenerate) for many polynomials at once.

    grids: (B, q*q) uint8 grid evaluations.  Valid for total degree < q;
    cross-checked against the scan route in the test suite.
    """
    return _kernels.line_value_stats(grids, line_tables(ctx))


def level_has_linear_factor(ctx: FieldCtx, P: PolyBi, a: int) -> bool:
    """Whether P - a has a linear factor, by looking for a line on which P
    is constant equal to a.  Equivalent to the division scan for
    total degree < q, and much cheaper inside sweeps."""
    if P.total_degree >= ctx.q:
        raise PreconditionViolated("grid factor test needs deg P < q")
    if P.is_zero:
        raise ZeroPolynomial("zero polynomial has every linear factor")
    values = P.eval_grid(ctx).reshape(-1)
    lv = values[line_tables(ctx)]
    const = (lv == lv[:, :, :1]).all(axis=2)
    return bool(np.any(const & (lv[:, :, 0] == a)))


# ---------------------------------------------------------------------------
# Squares in a short interval
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalSquaresCert:
    """Witness that {a + a'^2} stays inside an interval of length 2M."""

    p: int
    N: int
    M: int
    window_start: int  # L; the window is {L+1, ..., L+M}
    A: np.ndarray
    squares_size: int
    sumset_size: int

    @property
    def bound(self) -> int:
        return 2 * self.M

    @property
    def size_ratio(self) -> float:
        return len(self.A) / self.N


def garaev_chang_construct(ctx: FieldCtx, N: int) -> IntervalSquaresCert:
    """Squares trapped in [1, M] intersected with the best window of length
    M = floor(2*sqrt(N*p)); the shifted-square sumset then provably fits in
    an interval of length < 2M, which is asserted on the exact sumset."""
    if ctx.k != 1:
        raise PreconditionViolated("construction lives in a prime field")
    p = ctx.p
    if not (1 <= N < 0.01 * p):
        raise PreconditionViolated(f"need 1 <= N < 0.01p, got N={N}, p={p}")
    M = math.isqrt(4 * N * p)
    xs = np.arange(p, dtype=np.int64)
    sq = (xs * xs) % p
    in_x = (sq >= 1) & (sq <= M)
    in_x[0] = False
    # best window {L+1, ..., L+M} inside [1, p-1], smallest L on ties
    csum = np.concatenate([[0], np.cumsum(in_x)])
    ls = np.arange(0, p - M, dtype=np.int64)
    window_counts = csum[ls + M + 1] - csum[ls + 1]
    L = int(ls[np.argmax(window_counts)])
    A = xs[(xs > L) & (xs <= L + M) & in_x]
    if A.size == 0:
        raise InvariantViolated("pigeonhole guarantees a nonempty window")
    squares = np.unique((A * A) % p)
    sumset = op_set(ctx, A, squares, "+")
    if sumset.size > 2 * M:
        raise InvariantViolated(
            f"|A + A^2| = {sumset.size} exceeds the 2M = {2 * M} interval bound"
        )
    return IntervalSquaresCert(
        p=p, N=N, M=M, window_start=L, A=A,
        squares_size=int(squares.size), sumset_size=int(sumset.size),
    )


# ---------------------------------------------------------------------------
# Exact sumset inequalities (no implied constants)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SumsetInequalityReport:
    """Integer sizes and the four inequalities, each of which must hold."""

    size_a: int
    size_sq: int
    size_a_plus_sq: int
    size_4a: int
    size_sq_diff: int
    size_a_plus_a: int
    size_a_minus_a: int

    @property
    def fourfold_ok(self) -> bool:
        return self.size_4a * self.size_sq**3 <= self.size_a_plus_sq**4

    @property
    def square_diff_ok(self) -> bool:
        return self.size_sq_diff * self.size_a <= self.size_a_plus_sq**2

    @property
    def sum_ok(self) -> bool:
        return self.size_a_plus_a * self.size_sq <= self.size_a_plus_sq**2

    @property
    def diff_ok(self) -> bool:
        return self.size_a_minus_a * self.size_sq <= self.size_a_plus_sq**2

    @property
    def all_ok(self) -> bool:
        return self.fourfold_ok and self.square_diff_ok and self.sum_ok and self.diff_ok


def pr_ruzsa_checks(ctx: FieldCtx, A) -> SumsetInequalityReport:
    """The four exact sumset inequalities around A and A^2 = {a^2 : a in A}:

        |A+A+A+A| * |A^2|^3 <= |A+A^2|^4
        |A^2-A^2| * |A|     <= |A+A^2|^2
        |A+A|    * |A^2|    <= |A+A^2|^2
        |A-A|    * |A^2|    <= |A+A^2|^2

    All comparisons are exact integer arithmetic.
    """
    a = as_set(ctx, A)
    if a.size == 0:
        raise PreconditionViolated("A must be nonempty")
    sq = np.unique(ctx.mul_arr(a, a))
    a_plus_sq = op_set(ctx, a, sq, "+")
    two_a = op_set(ctx, a, a, "+")
    four_a = op_set(ctx, op_set(ctx, two_a, a, "+"), a, "+")
    return SumsetInequalityReport(
        size_a=int(a.size),
        size_sq=int(sq.size),
        size_a_plus_sq=int(a_plus_sq.size),
        size_4a=int(four_a.size),
        size_sq_diff=int(op_set(ctx, sq, sq, "-").size),
        size_a_plus_a=int(two_a.size),
        size_a_minus_a=int(op_set(ctx, a, a, "-").size),
    )
