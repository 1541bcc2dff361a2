"""Univariate and bivariate polynomials over F_q.

Polynomials are context-free coefficient containers; every operation takes
the FieldCtx it should compute in.  Univariate coefficients are stored low
to high with no trailing zeros, bivariate ones as a sparse {(i, j): c} map.
A PolyUni may carry an optional factored form (unit times irreducible
powers); ``validate_factors`` checks it expands back to the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FactoredFormRequired, PreconditionViolated, ZeroPolynomial
from .field import FieldCtx


@dataclass(frozen=True)
class PolyUni:
    coeffs: tuple[int, ...]
    factors: tuple[tuple["PolyUni", int], ...] | None = None
    unit: int = 1

    @staticmethod
    def make(coeffs, factors=None, unit=1) -> "PolyUni":
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        if factors is not None:
            factors = tuple((f if isinstance(f, PolyUni) else PolyUni.make(f), int(e))
                            for f, e in factors)
        return PolyUni(tuple(int(x) for x in c), factors, int(unit))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def eval(self, ctx: FieldCtx, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def eval_arr(self, ctx: FieldCtx, xs: np.ndarray) -> np.ndarray:
        """Horner evaluation on an index array."""
        xs = np.asarray(xs, dtype=np.int64)
        if ctx.k == 1:
            acc = np.zeros_like(xs)
            for c in reversed(self.coeffs):
                acc = (acc * xs + c) % ctx.p
            return acc
        acc = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            acc = ctx.add_arr(ctx.mul_arr(acc, xs), np.int64(c))
        return acc

    def eval_all(self, ctx: FieldCtx) -> np.ndarray:
        return self.eval_arr(ctx, ctx.elements())

    # -- ring operations ------------------------------------------------------

    def add(self, other: "PolyUni", ctx: FieldCtx) -> "PolyUni":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyUni.make([ctx.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def sub(self, other: "PolyUni", ctx: FieldCtx) -> "PolyUni":
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyUni.make([ctx.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def scale(self, c: int, ctx: FieldCtx) -> "PolyUni":
        return PolyUni.make([ctx.mul(c, a) for a in self.coeffs])

    def mul(self, other: "PolyUni", ctx: FieldCtx) -> "PolyUni":
        if self.is_zero or other.is_zero:
            return PolyUni.make(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
        return PolyUni.make(out)

    def divmod(self, other: "PolyUni", ctx: FieldCtx) -> tuple["PolyUni", "PolyUni"]:
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        quot = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = ctx.inv(other.coeffs[-1])
        while len(rem) >= len(other.coeffs) and rem:
            c = ctx.mul(rem[-1], inv_lead)
            shift = len(rem) - len(other.coeffs)
            if c:
                quot[shift] = c
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = ctx.sub(rem[shift + i], ctx.mul(c, b))
            rem.pop()
        return PolyUni.make(quot), PolyUni.make(rem)

    def monic(self, ctx: FieldCtx) -> "PolyUni":
        if self.is_zero or self.is_monic:
            return PolyUni.make(self.coeffs)
        return self.scale(ctx.inv(self.coeffs[-1]), ctx)

    def pow(self, e: int, ctx: FieldCtx) -> "PolyUni":
        result = PolyUni.make((1,))
        base = self
        while e:
            if e & 1:
                result = result.mul(base, ctx)
            base = base.mul(base, ctx)
            e >>= 1
        return result

    # -- factored form ---------------------------------------------------------

    def require_factors(self) -> tuple[tuple["PolyUni", int], ...]:
        if self.factors is None:
            raise FactoredFormRequired(f"factored form required for {self.coeffs}")
        return self.factors

    def expand_factors(self, ctx: FieldCtx) -> "PolyUni":
        acc = PolyUni.make((self.unit,))
        for f, e in self.require_factors():
            acc = acc.mul(f.pow(e, ctx), ctx)
        return acc

    def validate_factors(self, ctx: FieldCtx) -> None:
        """Check the factored form: distinct monic irreducibles, positive
        exponents, and exact expansion back to the coefficients."""
        factors = self.require_factors()
        seen = set()
        for f, e in factors:
            if e < 1:
                raise PreconditionViolated("factor exponents must be positive")
            if not f.is_monic or f.degree < 1:
                raise PreconditionViolated("factors must be monic of degree >= 1")
            if f.coeffs in seen:
                raise PreconditionViolated("factors must be distinct")
            seen.add(f.coeffs)
            if not irreducible_over(ctx, f):
                raise PreconditionViolated(f"factor {f.coeffs} is reducible over F_{ctx.q}")
        if self.expand_factors(ctx).coeffs != self.coeffs:
            raise PreconditionViolated("factored form does not expand to the coefficients")

    def distinct_root_count(self, ctx: FieldCtx) -> int:
        """Number of distinct roots in a splitting field: the sum of the
        degrees of the distinct irreducible factors (each is separable)."""
        return sum(f.degree for f, _ in self.require_factors())

    def __repr__(self):  # pragma: no cover
        return f"PolyUni{self.coeffs}"


def x_poly() -> PolyUni:
    return PolyUni.make((0, 1))


def gcd_uni(a: PolyUni, b: PolyUni, ctx: FieldCtx) -> PolyUni:
    while not b.is_zero:
        a, b = b, a.divmod(b, ctx)[1]
    return a.monic(ctx)


def irreducible_over(ctx: FieldCtx, f: PolyUni) -> bool:
    """Irreducibility over F_q (same criterion as the prime-field test,
    with q in place of p)."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    f = f.monic(ctx)
    k = f.degree
    x = x_poly()

    def powmod_q(base: PolyUni, times: int) -> PolyUni:
        # base^(q^times) mod f by iterated q-th powering
        out = base
        for _ in range(times):
            out = _powmod(out, ctx.q, f, ctx)
        return out

    if powmod_q(x, k).sub(x.divmod(f, ctx)[1], ctx).coeffs != ():
        return False
    from .field import prime_factors

    for r in prime_factors(k):
        diff = powmod_q(x, k // r).sub(x, ctx)
        if gcd_uni(diff, f, ctx).degree > 0:
            return False
    return True


def _powmod(a: PolyUni, e: int, mod: PolyUni, ctx: FieldCtx) -> PolyUni:
    result = PolyUni.make((1,))
    base = a.divmod(mod, ctx)[1]
    while e:
        if e & 1:
            result = result.mul(base, ctx).divmod(mod, ctx)[1]
        base = base.mul(base, ctx).divmod(mod, ctx)[1]
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# Bivariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyBi:
    """Sparse bivariate polynomial {(i, j): coeff} with nonzero coefficients."""

    coeffs: tuple[tuple[tuple[int, int], int], ...]

    @staticmethod
    def make(mapping) -> "PolyBi":
        items = mapping.items() if hasattr(mapping, "items") else mapping
        cleaned = {(int(i), int(j)): int(c) for (i, j), c in items if int(c) != 0}
        return PolyBi(tuple(sorted(cleaned.items())))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(i + j for (i, j), _ in self.coeffs)

    def eval(self, ctx: FieldCtx, x: int, y: int) -> int:
        acc = 0
        for (i, j), c in self.coeffs:
            acc = ctx.add(acc, ctx.mul(c, ctx.mul(ctx.pow(x, i), ctx.pow(y, j))))
        return acc

    def eval_pairs(self, ctx: FieldCtx, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Evaluate on paired index arrays (same shape)."""
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if ctx.k == 1:
            p = ctx.p
            acc = np.zeros(np.broadcast(xs, ys).shape, dtype=np.int64)
            deg = self.total_degree
            xp = {0: np.ones_like(xs)}
            yp = {0: np.ones_like(ys)}
            for e in range(1, deg + 1):
                xp[e] = (xp[e - 1] * xs) % p
                yp[e] = (yp[e - 1] * ys) % p
            for (i, j), c in self.coeffs:
                acc = (acc + c * ((xp[i] * yp[j]) % p)) % p
            return acc
        out = np.empty(np.broadcast(xs, ys).shape, dtype=np.int64)
        bx, by = np.broadcast_arrays(xs, ys)
        flat = out.reshape(-1)
        for idx, (xv, yv) in enumerate(zip(bx.reshape(-1), by.reshape(-1))):
            flat[idx] = self.eval(ctx, int(xv), int(yv))
        return out

    def eval_grid(self, ctx: FieldCtx) -> np.ndarray:
        """Values on the full q x q grid; entry [x, y] is P(x, y)."""
        els = ctx.elements()
        return self.eval_pairs(ctx, els[:, None], els[None, :])

    def sub_const(self, ctx: FieldCtx, a: int) -> "PolyBi":
        d = self.as_dict()
        d[(0, 0)] = ctx.sub(d.get((0, 0), 0), a)
        return PolyBi.make(d)

    def coeff_of_y(self) -> list[PolyUni]:
        """Rewrite as a polynomial in y with PolyUni coefficients in x."""
        deg_y = max((j for (_, j), _ in self.coeffs), default=-1)
        rows: list[dict[int, int]] = [dict() for _ in range(deg_y + 1)]
        for (i, j), c in self.coeffs:
            rows[j][i] = c
        out = []
        for row in rows:
            n = max(row, default=-1) + 1
            out.append(PolyUni.make([row.get(i, 0) for i in range(n)]))
        return out

    def __repr__(self):  # pragma: no cover
        return f"PolyBi({dict(self.coeffs)})"


def poly_bi_from_uni(f: PolyUni, var: int) -> PolyBi:
    """Lift a univariate polynomial into x (var=0) or y (var=1)."""
    return PolyBi.make({((i, 0) if var == 0 else (0, i)): c for i, c in enumerate(f.coeffs)})


def linear_form_remainder(ctx: FieldCtx, P: PolyBi, alpha: int, beta: int, gamma: int) -> PolyUni:
    """Remainder of P on division by the linear form alpha*x + beta*y + gamma.

    Computed by substituting the solved variable, which is exactly the
    image of P in F_q[x, y] / (alpha*x + beta*y + gamma) = F_q[t].
    """
    if alpha == 0 and beta == 0:
        raise PreconditionViolated("not a linear form")
    if beta != 0:
        # y = -(alpha*x + gamma) / beta, remainder is a polynomial in x
        inv_b = ctx.inv(beta)
        s = PolyUni.make((ctx.mul(ctx.neg(gamma), inv_b), ctx.mul(ctx.neg(alpha), inv_b)))
        rows = P.coeff_of_y()
        acc = PolyUni.make(())
        spow = PolyUni.make((1,))
        for row in rows:
            acc = acc.add(row.mul(spow, ctx), ctx)
            spow = spow.mul(s, ctx)
        return acc
    # x = -gamma / alpha, remainder is a polynomial in y
    x0 = ctx.mul(ctx.neg(gamma), ctx.inv(alpha))
    deg_y = max((j for (_, j), _ in P.coeffs), default=-1)
    out = [0] * (deg_y + 1)
    for (i, j), c in P.coeffs:
        out[j] = ctx.add(out[j], ctx.mul(c, ctx.pow(x0, i)))
    return PolyUni.make(out)
