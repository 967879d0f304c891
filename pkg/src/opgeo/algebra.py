"""Finite direct sums of full matrix algebras, their duals, and norming sets.

The algebra is a direct sum of full complex matrix blocks with the max
norm across blocks.  Its dual is carried on the same block structure via
the trace pairing f(x) = sum_i tr(a_i x_i), with dual norm the sum of
block trace norms.  The face of the dual ball exposed by a norm-one
element x is parameterized exactly through the block SVD frames of x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from opgeo import linalg
from opgeo.errors import PreconditionError, ShapeMismatchError

ACTIVE_THRESHOLD = 1e-6
BORDERLINE_THRESHOLD = 1e-4


@dataclass(frozen=True)
class AlgebraShape:
    """Block dimensions [n_1, ..., n_k] of a direct sum of full matrix algebras."""

    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.block_dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"block dims must be positive and nonempty, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def dual_dimension(self) -> int:
        """Complex dimension of the dual: sum of n_i^2."""
        return sum(d * d for d in self.block_dims)

    def __str__(self) -> str:
        return "+".join(f"M{d}" for d in self.block_dims)


def _check_blocks(shape: AlgebraShape, blocks) -> tuple[np.ndarray, ...]:
    if len(blocks) != len(shape.block_dims):
        raise ShapeMismatchError(
            f"expected {len(shape.block_dims)} blocks, got {len(blocks)}"
        )
    out = []
    for dim, b in zip(shape.block_dims, blocks):
        m = linalg.as_matrix(b)
        if m.shape != (dim, dim):
            raise ShapeMismatchError(f"block of shape {m.shape} does not match M{dim}")
        m.setflags(write=False)
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class Element:
    """A block-diagonal operator in the direct-sum algebra."""

    shape: AlgebraShape
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", _check_blocks(self.shape, self.blocks))

    @classmethod
    def from_blocks(cls, blocks) -> "Element":
        mats = [linalg.as_matrix(b) for b in blocks]
        shape = AlgebraShape(tuple(m.shape[0] for m in mats))
        return cls(shape, tuple(mats))

    @classmethod
    def identity(cls, shape: AlgebraShape) -> "Element":
        return cls(shape, tuple(np.eye(d, dtype=np.complex128) for d in shape.block_dims))

    @classmethod
    def zero(cls, shape: AlgebraShape) -> "Element":
        return cls(shape, tuple(np.zeros((d, d), dtype=np.complex128) for d in shape.block_dims))

    def _binary(self, other: "Element", op) -> "Element":
        if self.shape != other.shape:
            raise ShapeMismatchError("elements live in different algebras")
        return Element(self.shape, tuple(op(a, b) for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other: "Element") -> "Element":
        return self._binary(other, np.add)

    def __sub__(self, other: "Element") -> "Element":
        return self._binary(other, np.subtract)

    def __matmul__(self, other: "Element") -> "Element":
        return self._binary(other, np.matmul)

    def __mul__(self, scalar) -> "Element":
        s = complex(scalar)
        return Element(self.shape, tuple(s * b for b in self.blocks))

    __rmul__ = __mul__

    def __neg__(self) -> "Element":
        return self * (-1.0)

    @property
    def H(self) -> "Element":
        """Blockwise conjugate transpose."""
        return Element(self.shape, tuple(b.conj().T for b in self.blocks))

    def assemble(self) -> np.ndarray:
        """Dense block-diagonal matrix carrying all blocks."""
        n = sum(self.shape.block_dims)
        out = np.zeros((n, n), dtype=np.complex128)
        pos = 0
        for b in self.blocks:
            d = b.shape[0]
            out[pos : pos + d, pos : pos + d] = b
            pos += d
        return out


@dataclass(frozen=True)
class Functional:
    """A dual element under the trace pairing: f(x) = sum_i tr(a_i x_i)."""

    shape: AlgebraShape
    densities: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "densities", _check_blocks(self.shape, self.densities))

    @classmethod
    def from_densities(cls, densities) -> "Functional":
        mats = [linalg.as_matrix(a) for a in densities]
        shape = AlgebraShape(tuple(m.shape[0] for m in mats))
        return cls(shape, tuple(mats))

    def vectorize(self) -> np.ndarray:
        """Flat complex coordinate vector (used for span-rank computations)."""
        return np.concatenate([a.ravel() for a in self.densities])


def element_norm(x: Element) -> float:
    """Direct-sum operator norm: max over blocks."""
    return max(linalg.operator_norm(b) for b in x.blocks)


def functional_norm(f: Functional) -> float:
    """Dual norm: sum of block trace norms."""
    return sum(linalg.trace_norm(a) for a in f.densities)


def evaluate(f: Functional, x: Element) -> complex:
    """Trace pairing f(x) = sum_i tr(a_i x_i)."""
    if f.shape != x.shape:
        raise ShapeMismatchError("functional and element shapes differ")
    return complex(sum(np.trace(a @ b) for a, b in zip(f.densities, x.blocks)))


@dataclass(frozen=True)
class BlockFrame:
    """SVD frame data for one block of a norming-set description."""

    active: bool
    left: np.ndarray | None = None      # W_i
    right: np.ndarray | None = None     # V_i
    unit_indices: tuple[int, ...] = ()  # J_i: singular values at one


@dataclass(frozen=True)
class NormingSetDescription:
    """Exact parameterization of the norming functionals of a norm-one element.

    Members are exactly the functionals with densities a_i = V_i c_i W_i*
    where c_i is PSD, supported on the sigma = 1 singular subspace J_i, the
    traces sum to one across blocks, and a_i = 0 on inactive blocks.
    """

    base: Element
    frames: tuple[BlockFrame, ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def span_dim(self) -> int:
        return sum(len(fr.unit_indices) ** 2 for fr in self.frames if fr.active)

    @property
    def active_blocks(self) -> tuple[int, ...]:
        return tuple(i for i, fr in enumerate(self.frames) if fr.active)


def norming_set(x: Element, tol: float = ACTIVE_THRESHOLD) -> NormingSetDescription:
    """Describe the set of functionals with f(x) = ||f|| = 1.

    Requires ||x|| = 1 within `tol`.  A block participates iff its operator
    norm is within `tol` of one; within a participating block only the
    singular directions with sigma >= 1 - tol carry dual mass.  Singular
    values in the borderline band [1 - 1e-4, 1 - tol) are surfaced as
    warnings because the span dimension is discontinuous there.
    """
    nrm = element_norm(x)
    if abs(nrm - 1.0) > tol:
        raise PreconditionError(f"norming_set requires ||x|| = 1, got {nrm!r}")
    frames = []
    warnings = []
    for i, b in enumerate(x.blocks):
        res = linalg.svd(b)
        s = res.singular_values
        borderline = np.where((s >= 1.0 - BORDERLINE_THRESHOLD) & (s < 1.0 - tol))[0]
        if borderline.size:
            warnings.append(
                f"block {i}: singular values {s[borderline].tolist()} are within "
                f"[1-{BORDERLINE_THRESHOLD:.0e}, 1-{tol:.0e}) of the activity cliff"
            )
        if s.size and s[0] >= 1.0 - tol:
            unit = tuple(int(j) for j in np.where(s >= 1.0 - tol)[0])
            frames.append(
                BlockFrame(active=True, left=res.left, right=res.right, unit_indices=unit)
            )
        else:
            frames.append(BlockFrame(active=False))
    return NormingSetDescription(base=x, frames=tuple(frames), warnings=tuple(warnings))


def sample_norming_functional(desc: NormingSetDescription, rng: np.random.Generator) -> Functional:
    """Draw a random member of the described norming set.

    Per active block a PSD coefficient matrix supported on the unit singular
    subspace is drawn as GG* for complex Gaussian G; traces are normalized
    jointly so the dual norm is exactly one.
    """
    if not desc.active_blocks:
        raise PreconditionError("description has no active block")
    raw = {}
    total = 0.0
    for i in desc.active_blocks:
        fr = desc.frames[i]
        k = len(fr.unit_indices)
        g = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        h = g @ g.conj().T
        raw[i] = h
        total += float(np.trace(h).real)
    densities = []
    for i, fr in enumerate(desc.frames):
        d = desc.base.shape.block_dims[i]
        if not fr.active:
            densities.append(np.zeros((d, d), dtype=np.complex128))
            continue
        c = np.zeros((d, d), dtype=np.complex128)
        idx = np.asarray(fr.unit_indices)
        c[np.ix_(idx, idx)] = raw[i] / total
        densities.append(fr.right @ c @ fr.left.conj().T)
    return Functional(desc.base.shape, tuple(densities))


def numeric_span_rank(fs, tol: float = 1e-7) -> int:
    """Complex-linear rank of a family of functionals.

    Counts singular values of the stacked coordinate vectors above
    tol * sigma_max.
    """
    if not fs:
        return 0
    mat = np.stack([f.vectorize() for f in fs])
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


@dataclass(frozen=True)
class NormingMinimum:
    """Result of minimizing Re f(x) over the norming set of a unitary."""

    value: float
    hermitian_residual: float


def min_real_over_norming(u: Element, x: Element, unitary_tol: float = 1e-8) -> NormingMinimum:
    """inf of Re f(x) over functionals norming the unitary u.

    Equals the min over blocks of the smallest eigenvalue of the Hermitian
    part of x u*; the Hermitian residual max_i ||(xu*)_i - (xu*)_i*|| is
    reported alongside (it vanishes exactly when all f(x) are real).
    """
    if u.shape != x.shape:
        raise ShapeMismatchError("unitary and element shapes differ")
    for b in u.blocks:
        dev = linalg.operator_norm(b.conj().T @ b - np.eye(b.shape[0]))
        if dev > unitary_tol:
            raise PreconditionError(f"u is not unitary: ||u*u - 1|| = {dev:.3e}")
    value = np.inf
    resid = 0.0
    for xb, ub in zip(x.blocks, u.blocks):
        m = xb @ ub.conj().T
        resid = max(resid, linalg.operator_norm(m - m.conj().T))
        herm = 0.5 * (m + m.conj().T)
        value = min(value, float(np.linalg.eigvalsh(herm)[0]))
    return NormingMinimum(value=float(value), hermitian_residual=resid)
