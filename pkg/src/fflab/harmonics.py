"""Dense complex Fourier analysis over G = G_1 x ... x G_d, G_i in {F_q, F_q*}.

Conventions, fixed once here and verified by round-trip and Plancherel
tests rather than assumed:

- transform        fhat(chi) = |G|^(-1) * sum_x f(x) conj(chi(x))
- inversion        f(x)      = sum_chi chi(x) fhat(chi)
- convolution      (f * g)(x) = sum_y f(y) g(x . y^(-1)),
                   with transform |G| * fhat * ghat
- pairing          sum_x f(x) conj(g(x)) = |G| sum_chi fhat(chi) conj(ghat(chi))

Characters: an additive axis is labelled by b in F_q with
chi_b(c) = exp(2*pi*i * Tr(b*c) / p); a multiplicative axis by j in
Z_(q-1) with psi_j(g^m) = exp(2*pi*i * j*m / (q-1)).  Multiplicative axes
carry F_q* only, so psi(0) never arises.  Points on an axis are stored by
position: the element index on an additive axis, the discrete log on a
multiplicative one.  The all-zero label is the trivial character.

Transforms are per-axis dense matrix products (no fast transform): axis
sizes stay small enough at desk scale that BLAS wins and the code stays
obviously equal to the defining sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CapExceeded, EmptySet, PointOutsideCarrier, PreconditionViolated, SpecMismatch
from .field import FieldCtx

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"

# largest axis for which a dense character matrix is allocated
DFT_AXIS_CAP = 4096

CharIndex = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GroupSpec:
    """A product group over one field: a tuple of axis kinds."""

    ctx: FieldCtx
    axes: tuple[str, ...]

    def __post_init__(self):
        if not self.axes:
            raise PreconditionViolated("at least one axis required")
        for a in self.axes:
            if a not in (ADDITIVE, MULTIPLICATIVE):
                raise PreconditionViolated(f"unknown axis kind {a!r}")
        object.__setattr__(self, "axes", tuple(self.axes))

    @property
    def d(self) -> int:
        return len(self.axes)

    @cached_property
    def axis_sizes(self) -> tuple[int, ...]:
        q = self.ctx.q
        return tuple(q if a == ADDITIVE else q - 1 for a in self.axes)

    @cached_property
    def size(self) -> int:
        n = 1
        for s in self.axis_sizes:
            n *= s
        return n

    def compatible(self, other: "GroupSpec") -> bool:
        return (
            self.axes == other.axes
            and self.ctx.p == other.ctx.p
            and self.ctx.k == other.ctx.k
            and self.ctx.modulus == other.ctx.modulus
        )

    # -- element <-> position ------------------------------------------------

    def elem_to_pos(self, axis: int, elem) -> np.ndarray:
        """Axis position of element indices; 0 is outside F_q* carriers."""
        elem = np.asarray(elem, dtype=np.int64)
        if np.any(elem < 0) or np.any(elem >= self.ctx.q):
            raise PointOutsideCarrier("element index out of range")
        if self.axes[axis] == ADDITIVE:
            return elem
        if np.any(elem == 0):
            raise PointOutsideCarrier("0 is not on a multiplicative axis")
        return self.ctx.dlog_table[elem]

    def pos_to_elem(self, axis: int, pos) -> np.ndarray:
        pos = np.asarray(pos, dtype=np.int64)
        if self.axes[axis] == ADDITIVE:
            return pos
        return self.ctx.exp_table[pos]

    def points_to_pos(self, points: Iterable[tuple[int, ...]]) -> np.ndarray:
        """(n, d) position array from an iterable of element-index tuples."""
        pts = [tuple(pt) for pt in points]
        out = np.empty((len(pts), self.d), dtype=np.int64)
        for i, pt in enumerate(pts):
            if len(pt) != self.d:
                raise PointOutsideCarrier(f"point {pt} has wrong arity")
            out[i] = pt
        for ax in range(self.d):
            out[:, ax] = self.elem_to_pos(ax, out[:, ax])
        return out

    def pos_to_flat(self, pos: np.ndarray) -> np.ndarray:
        return np.ravel_multi_index(tuple(pos[..., i] for i in range(self.d)), self.axis_sizes)

    def flat_to_points(self, flat: np.ndarray) -> list[tuple[int, ...]]:
        multi = np.unravel_index(np.asarray(flat, dtype=np.int64), self.axis_sizes)
        cols = [self.pos_to_elem(i, multi[i]) for i in range(self.d)]
        return [tuple(int(c[i]) for c in cols) for i in range(len(cols[0]))]

    # -- group operation in position space ------------------------------------

    def combine_pos(self, axis: int, a, b, invert_b: bool = False) -> np.ndarray:
        """Position of x . y (or x . y^(-1)) from per-axis positions."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.axes[axis] == ADDITIVE:
            return self.ctx.sub_arr(a, b) if invert_b else self.ctx.add_arr(a, b)
        n = self.ctx.q - 1
        return (a - b) % n if invert_b else (a + b) % n

    @cached_property
    def flat_combine_table(self) -> np.ndarray | None:
        """(N, N) table of flat positions of x . y, or None above desk cap."""
        if self.size > 2048:
            return None
        grids = np.meshgrid(
            *[np.arange(s, dtype=np.int64) for s in self.axis_sizes], indexing="ij"
        )
        axis_pos = [g.reshape(-1) for g in grids]
        combined = [
            self.combine_pos(i, axis_pos[i][:, None], axis_pos[i][None, :])
            for i in range(self.d)
        ]
        flat = np.ravel_multi_index(tuple(combined), self.axis_sizes)
        return np.ascontiguousarray(flat.astype(np.int32))

    # -- characters -----------------------------------------------------------

    def char_matrix(self, axis: int) -> np.ndarray:
        """W[label, pos] = chi_label(element at pos) for one axis."""
        cached = self.__dict__.setdefault("_char_cache", {})
        if axis in cached:
            return cached[axis]
        n = self.axis_sizes[axis]
        if n > DFT_AXIS_CAP:
            raise CapExceeded(f"axis size {n} exceeds transform cap {DFT_AXIS_CAP}")
        ctx = self.ctx
        if self.axes[axis] == ADDITIVE:
            labels = np.arange(ctx.q, dtype=np.int64)
            prods = ctx.mul_arr(labels[:, None], labels[None, :])
            tr = ctx.trace_table[prods]
            W = np.exp(2j * np.pi * tr / ctx.p)
        else:
            m = np.arange(ctx.q - 1, dtype=np.int64)
            W = np.exp(2j * np.pi * (np.outer(m, m) % (ctx.q - 1)) / (ctx.q - 1))
        W.flags.writeable = False
        cached[axis] = W
        return W

    def char_values(self, char: CharIndex) -> np.ndarray:
        """chi(x) for every x, shaped like a DenseFn's values."""
        out = np.ones((1,) * self.d, dtype=np.complex128)
        for i, label in enumerate(char):
            vec = self.char_matrix(i)[label]
            shape = [1] * self.d
            shape[i] = self.axis_sizes[i]
            out = out * vec.reshape(shape)
        return out

    def __repr__(self):  # pragma: no cover
        kinds = ",".join("F_q" if a == ADDITIVE else "F_q*" for a in self.axes)
        return f"GroupSpec(q={self.ctx.q}, {kinds})"


@dataclass(frozen=True, eq=False)
class DenseFn:
    """A complex-valued function on the product group, dense, canonical order."""

    spec: GroupSpec
    values: np.ndarray

    @staticmethod
    def make(spec: GroupSpec, values) -> "DenseFn":
        arr = np.asarray(values, dtype=np.complex128).reshape(spec.axis_sizes).copy()
        arr.flags.writeable = False
        return DenseFn(spec, arr)

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Fourier coefficients indexed by character labels, canonical order."""

    spec: GroupSpec
    coeffs: np.ndarray

    @staticmethod
    def make(spec: GroupSpec, coeffs) -> "Spectrum":
        arr = np.asarray(coeffs, dtype=np.complex128).reshape(spec.axis_sizes).copy()
        arr.flags.writeable = False
        return Spectrum(spec, arr)

    @property
    def flat(self) -> np.ndarray:
        return self.coeffs.reshape(-1)


class UniformityNorm(NamedTuple):
    value: float
    char: CharIndex


def _require_same_spec(f, g):
    if f.spec is not g.spec and not f.spec.compatible(g.spec):
        raise SpecMismatch("operands live on different group specs")


def indicator(spec: GroupSpec, points: Iterable[tuple[int, ...]]) -> DenseFn:
    """0/1 function supported on the given element-index tuples."""
    vals = np.zeros(spec.size, dtype=np.complex128)
    pos = spec.points_to_pos(points)
    if len(pos):
        vals[spec.pos_to_flat(pos)] = 1.0
    return DenseFn.make(spec, vals)


def _apply_axis_matrices(mats, arr):
    out = arr
    for i, M in enumerate(mats):
        out = np.moveaxis(np.tensordot(M, out, axes=([1], [i])), 0, i)
    return out


def fourier_forward(f: DenseFn) -> Spectrum:
    spec = f.spec
    mats = [spec.char_matrix(i).conj() for i in range(spec.d)]
    return Spectrum.make(spec, _apply_axis_matrices(mats, f.values) / spec.size)


def fourier_inverse(S: Spectrum) -> DenseFn:
    spec = S.spec
    mats = [spec.char_matrix(i).T for i in range(spec.d)]
    return DenseFn.make(spec, _apply_axis_matrices(mats, S.coeffs))


def convolve(f: DenseFn, g: DenseFn) -> DenseFn:
    """(f * g)(x) = sum_y f(y) g(x . y^(-1)), via the spectral identity."""
    _require_same_spec(f, g)
    Sf = fourier_forward(f)
    Sg = fourier_forward(g)
    prod = Spectrum.make(f.spec, f.spec.size * Sf.coeffs * Sg.coeffs)
    return fourier_inverse(prod)


def convolve_direct(f: DenseFn, g: DenseFn) -> DenseFn:
    """Reference O(|G|^2) evaluator of the defining sum, kept for testing."""
    _require_same_spec(f, g)
    spec = f.spec
    sizes = spec.axis_sizes
    grids = np.meshgrid(*[np.arange(s, dtype=np.int64) for s in sizes], indexing="ij")
    xpos = [gr.reshape(-1) for gr in grids]
    gflat = g.flat
    fflat = f.flat
    out = np.zeros(spec.size, dtype=np.complex128)
    for yflat in range(spec.size):
        fy = fflat[yflat]
        if fy == 0:
            continue
        ymulti = np.unravel_index(yflat, sizes)
        comb = [
            spec.combine_pos(i, xpos[i], np.int64(ymulti[i]), invert_b=True)
            for i in range(spec.d)
        ]
        out += fy * gflat[np.ravel_multi_index(tuple(comb), sizes)]
    return DenseFn.make(spec, out)


def plancherel_residual(f: DenseFn, g: DenseFn) -> float:
    """|sum_x f conj(g) - |G| sum_chi fhat conj(ghat)|; caller asserts."""
    _require_same_spec(f, g)
    lhs = np.vdot(g.flat, f.flat)  # sum f * conj(g)
    Sf, Sg = fourier_forward(f), fourier_forward(g)
    rhs = f.spec.size * np.vdot(Sg.flat, Sf.flat)
    return abs(lhs - rhs)


def uniformity_norm(f: DenseFn) -> UniformityNorm:
    """max over nontrivial characters of |fhat|, with the argmax label."""
    if f.spec.size < 2:
        raise PreconditionViolated("group must have at least 2 elements")
    mags = np.abs(fourier_forward(f).flat).copy()
    mags[0] = -1.0  # exclude the trivial character (the all-zero label)
    arg = int(np.argmax(mags))
    char = tuple(int(t) for t in np.unravel_index(arg, f.spec.axis_sizes))
    return UniformityNorm(float(mags[arg]), char)


def translate(f: DenseFn, z: tuple[int, ...]) -> DenseFn:
    """x -> f(x . z^(-1)), the translate of f by the group element z."""
    spec = f.spec
    zpos = spec.points_to_pos([z])[0]
    sizes = spec.axis_sizes
    grids = np.meshgrid(*[np.arange(s, dtype=np.int64) for s in sizes], indexing="ij")
    comb = [
        spec.combine_pos(i, grids[i].reshape(-1), np.int64(zpos[i]), invert_b=True)
        for i in range(spec.d)
    ]
    return DenseFn.make(spec, f.flat[np.ravel_multi_index(tuple(comb), sizes)])


def sum_tolerance(spec: GroupSpec) -> float:
    """Absolute tolerance for |G|-term double-precision sums."""
    return 1e-9 * (1 + spec.size)


def full_carrier(spec: GroupSpec) -> list[tuple[int, ...]]:
    """Every point of the carrier as element-index tuples."""
    axes_elems = [
        np.arange(spec.ctx.q) if a == ADDITIVE else np.arange(1, spec.ctx.q)
        for a in spec.axes
    ]
    grids = np.meshgrid(*axes_elems, indexing="ij")
    stacked = np.stack([g.reshape(-1) for g in grids], axis=1)
    return [tuple(int(v) for v in row) for row in stacked]


def random_subset(spec: GroupSpec, size: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    """Uniform subset of the carrier without replacement."""
    if size < 0 or size > spec.size:
        raise EmptySet(f"cannot sample {size} of {spec.size} points")
    flat = rng.choice(spec.size, size=size, replace=False)
    return spec.flat_to_points(np.sort(flat))
