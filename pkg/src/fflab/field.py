"""Exact arithmetic in F_p and small extension fields F_{p^k}.

Elements are canonical integer indices in [0, q): the base-p digits of an
index are the coefficients (low to high) of the representative polynomial
modulo the field's defining polynomial.  Index 0 is the additive identity
and index 1 the multiplicative identity.  Construction precomputes the
discrete-log, exponential and absolute-trace tables, so multiplicative
characters and Frobenius orbits are O(1) lookups afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, DivisionByZero, NotIrreducible, NotPrime, PreconditionViolated

DEFAULT_ORDER_CAP = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test; cheap at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Sorted distinct prime factors of n >= 1."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Dense univariate polynomial arithmetic over F_p (coefficient lists, low to
# high).  Used for field construction only; hot paths use the tables below.
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(mod):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _trim(a)


def _poly_mulmod(a, b, mod, p):
    return _poly_mod(_poly_mul(a, b, p), mod, p)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = _poly_mod(list(a), mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        # make b monic before reducing
        inv_lead = pow(b[-1], p - 2, p)
        b = [(c * inv_lead) % p for c in b]
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(coeffs: tuple[int, ...] | list[int], p: int) -> bool:
    """Full irreducibility test for a monic polynomial over F_p.

    Uses the standard criterion: f of degree k is irreducible iff
    x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
    """
    f = list(coeffs)
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # frob[j] = x^(p^j) mod f, computed by iterated p-th powering
    fr = x
    frob = [x]
    for _ in range(k):
        fr = _poly_powmod(fr, p, f, p)
        frob.append(fr)
    if frob[k] != _poly_mod(x, f, p):
        return False
    for r in prime_factors(k):
        diff = list(frob[k // r])
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(diff, f, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Candidates are ordered by their low-coefficient vector read as a
    base-p integer, which makes the choice deterministic.
    """
    if k == 1:
        return (0, 1)
    for packed in range(p**k):
        low = _digits(packed, p, k)
        cand = low + (1,)
        if is_irreducible(cand, p):
            return cand
    raise NotIrreducible(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


def _digits(n: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(n % p)
        n //= p
    return tuple(out)


# ---------------------------------------------------------------------------
# Field context
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable description of F_q = F_{p^k} with precomputed tables.

    Safe to share across threads and processes; every table is marked
    read-only after construction.
    """

    p: int
    k: int
    q: int
    modulus: tuple[int, ...]
    gen: int
    exp_table: np.ndarray  # (q-1,) g^m for m in [0, q-1)
    dlog_table: np.ndarray  # (q,) inverse of exp_table; dlog_table[0] = -1
    trace_table: np.ndarray  # (q,) absolute trace, values in [0, p)

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, pw = self.p, 0, 1
        for _ in range(self.k):
            out += ((a + b) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p, out, pw = self.p, 0, 1
        for _ in range(self.k):
            out += ((-a) % p) * pw
            a //= p
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        n = self.q - 1
        return int(self.exp_table[(int(self.dlog_table[a]) + int(self.dlog_table[b])) % n])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        n = self.q - 1
        return int(self.exp_table[(n - int(self.dlog_table[a])) % n])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of 0")
            return 0 if e else 1
        n = self.q - 1
        return int(self.exp_table[(int(self.dlog_table[a]) * e) % n])

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def trace(self, c: int) -> int:
        """Absolute trace Tr(c) = c + c^p + ... + c^(p^(k-1)), in [0, p)."""
        return int(self.trace_table[c])

    def dlog(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("discrete log of 0")
        return int(self.dlog_table[a])

    # -- vectorized arithmetic on index arrays --------------------------------

    def _digits_arr(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (self.k,), dtype=np.int64)
        t = a.copy()
        for j in range(self.k):
            out[..., j] = t % self.p
            t //= self.p
        return out

    def _pack_arr(self, digits: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        return (digits * weights).sum(axis=-1)

    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        return self._pack_arr((self._digits_arr(a) + self._digits_arr(b)) % self.p)

    def neg_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        return self._pack_arr((-self._digits_arr(a)) % self.p)

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        n = self.q - 1
        out[nz] = self.exp_table[(self.dlog_table[a[nz]] + self.dlog_table[b[nz]]) % n]
        return out

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of 0")
        n = self.q - 1
        return self.exp_table[(n - self.dlog_table[a]) % n]

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def units(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def __repr__(self):  # pragma: no cover
        return f"FieldCtx(p={self.p}, k={self.k}, q={self.q})"


def _field_mul_poly(a: int, b: int, modulus, p: int, k: int) -> int:
    """Table-free product, used during construction before dlog exists."""
    pa = _trim(list(_digits(a, p, k)))
    pb = _trim(list(_digits(b, p, k)))
    prod = _poly_mod(_poly_mul(pa, pb, p), list(modulus), p)
    out, pw = 0, 1
    for c in prod:
        out += c * pw
        pw *= p
    return out


def _find_generator(p: int, k: int, q: int, modulus) -> int:
    """Smallest canonical index generating F_q*, by order-divisor checks."""
    if q == 2:
        return 1
    factors = prime_factors(q - 1)
    cofactors = [(q - 1) // r for r in factors]

    def powmod(a: int, e: int) -> int:
        if k == 1:
            return pow(a, e, p)
        result, base = 1, a
        while e:
            if e & 1:
                result = _field_mul_poly(result, base, modulus, p, k)
            base = _field_mul_poly(base, base, modulus, p, k)
            e >>= 1
        return result

    for cand in range(2, q):
        if all(powmod(cand, m) != 1 for m in cofactors):
            return cand
    raise NotIrreducible("no generator found; modulus is not irreducible")  # pragma: no cover


def build_field(p: int, k: int = 1, modulus=None, order_cap: int = DEFAULT_ORDER_CAP) -> FieldCtx:
    """Construct F_{p^k} with all tables.

    When ``modulus`` is omitted and k > 1 the lexicographically smallest
    monic irreducible of degree k is selected, so two calls with equal
    inputs produce identical contexts.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise PreconditionViolated("extension degree must be >= 1")
    q = p**k
    if q > order_cap:
        raise CapExceeded(f"q = {q} exceeds cap {order_cap}")
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise PreconditionViolated(f"modulus must be monic of degree {k}")
        if not is_irreducible(modulus, p):
            raise NotIrreducible(f"{modulus} is reducible over F_{p}")

    gen = _find_generator(p, k, q, modulus)

    exp = np.empty(q - 1, dtype=np.int64)
    acc = 1
    if k == 1:
        for m in range(q - 1):
            exp[m] = acc
            acc = (acc * gen) % p
    else:
        for m in range(q - 1):
            exp[m] = acc
            acc = _field_mul_poly(acc, gen, modulus, p, k)
    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp] = np.arange(q - 1, dtype=np.int64)

    if k == 1:
        trace = np.arange(q, dtype=np.int64)
    else:
        elems = np.arange(q, dtype=np.int64)
        n = q - 1
        acc_tr = elems.copy()
        x = elems.copy()
        for _ in range(k - 1):
            # x <- x^p via the dlog tables (0 stays 0)
            nz = x != 0
            x = x.copy()
            x[nz] = exp[(dlog[x[nz]] * p) % n]
            # digit-wise addition
            da = np.empty((q, k), dtype=np.int64)
            db = np.empty((q, k), dtype=np.int64)
            ta, tb = acc_tr.copy(), x.copy()
            for j in range(k):
                da[:, j] = ta % p
                db[:, j] = tb % p
                ta //= p
                tb //= p
            weights = p ** np.arange(k, dtype=np.int64)
            acc_tr = (((da + db) % p) * weights).sum(axis=1)
        if np.any(acc_tr >= p):
            raise NotIrreducible("trace left the prime subfield; modulus is reducible")
        trace = acc_tr

    for arr in (exp, dlog, trace):
        arr.flags.writeable = False
    return FieldCtx(p=p, k=k, q=q, modulus=modulus, gen=gen,
                    exp_table=exp, dlog_table=dlog, trace_table=trace)


def field_arith(ctx: FieldCtx, op: str, a: int, b: int | None = None) -> int:
    """Single-operation dispatcher over the scalar methods of FieldCtx."""
    if op == "add":
        return ctx.add(a, b)
    if op == "sub":
        return ctx.sub(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "div":
        return ctx.div(a, b)
    if op == "neg":
        return ctx.neg(a)
    if op == "inv":
        return ctx.inv(a)
    if op == "pow":
        return ctx.pow(a, b)
    raise PreconditionViolated(f"unknown field operation {op!r}")


def primitive_element(ctx: FieldCtx) -> tuple[int, np.ndarray]:
    """The fixed generator of F_q* and the full discrete-log table."""
    return ctx.gen, ctx.dlog_table
