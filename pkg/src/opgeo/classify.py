"""Dual-route operator classifiers, witnesses, and certificates.

Every class of operators gets an algebraic oracle (built from products and
adjoints) and a geometric route (built from norms and norming functionals
only).  Non-partial-isometries are refuted by an explicit witness element;
invertibles are certified by a unitary together with a spectral gap.  The
membership testers for the two comparison sets of the partial-isometry
characterization exist to exhibit the equivalence on samples; verdicts always
rest on the exact witness / span / certificate constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from opgeo import linalg
from opgeo.algebra import (
    Element,
    Functional,
    NormingMinimum,
    element_norm,
    evaluate,
    min_real_over_norming,
    norming_set,
    numeric_span_rank,
    sample_norming_functional,
)
from opgeo.errors import (
    DegenerateInputError,
    MalformedCertificateError,
    PreconditionError,
    ShapeMismatchError,
)


@dataclass(frozen=True)
class Tolerances:
    """Three-decade tolerance hierarchy separating noise from decisions."""

    decomposition: float = 1e-10
    equality: float = 1e-8
    classification: float = 1e-6

    def as_dict(self) -> dict:
        return {
            "decomposition": self.decomposition,
            "equality": self.equality,
            "classification": self.classification,
        }


DEFAULT_TOLERANCES = Tolerances()


def default_witness_function(s: float) -> float:
    """s(1-s): vanishes at 0 and 1, positive between, bounded by 1/s - 1."""
    return s * (1.0 - s)


def _validate_witness_function(phi: Callable[[float], float]) -> None:
    if abs(phi(0.0)) > 1e-12 or abs(phi(1.0)) > 1e-12:
        raise ValueError("witness function must vanish at 0 and 1")
    grid = np.linspace(1e-4, 1.0 - 1e-4, 2001)
    vals = np.array([phi(float(s)) for s in grid])
    if np.any(vals <= 0.0):
        raise ValueError("witness function must be positive on (0, 1)")
    if np.any(vals > 1.0 / grid - 1.0 + 1e-12):
        raise ValueError("witness function must satisfy phi(s) <= 1/s - 1")


@dataclass(frozen=True)
class WitnessConfig:
    """Knobs for witness construction and the X1/X2 membership testers."""

    witness_function: Callable[[float], float] = default_witness_function
    gap: float = 1e-3
    b_radii: tuple[float, ...] = tuple(np.logspace(-3.0, 3.0, 13))
    n_phases: int = 16
    a_floor: float = 1e-3    # lower end of the X1 search, relative to 1/||y||
    a_ceiling: float = 10.0  # upper end, relative to 1/||y||
    a_grid_points: int = 40
    member_tol: float = 1e-7

    def __post_init__(self):
        _validate_witness_function(self.witness_function)
        if not (0.0 < self.gap < 0.5):
            raise ValueError("gap must lie in (0, 1/2)")

    def b_grid(self) -> np.ndarray:
        """Complex grid of log-spaced radii times 16th-roots-of-unity phases."""
        phases = np.exp(1j * np.pi * np.arange(self.n_phases) / 8.0)
        return (np.asarray(self.b_radii)[:, None] * phases[None, :]).ravel()


DEFAULT_WITNESS_CONFIG = WitnessConfig()


@dataclass(frozen=True)
class PartialIsometryWitness:
    """Checkable refutation of partial-isometry membership.

    y stays in both comparison sets at small scales (||x +/- y|| = 1) yet
    breaks the max identity at b = 1/||y||, with a strictly positive margin.
    """

    y: Element
    b: float
    norm_plus: float
    norm_minus: float
    norm_at_b: float
    margin: float
    spectral_point: float


@dataclass(frozen=True)
class InvertibilityCertificate:
    """Unitary direction plus spectral gap certifying invertibility."""

    u: Element
    epsilon: float


@dataclass(frozen=True)
class Verdict:
    """Outcome of a dual-route classification."""

    predicate: str
    algebraic: bool
    geometric: bool
    evidence: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=lambda: DEFAULT_TOLERANCES.as_dict())

    @property
    def agreement(self) -> bool:
        return self.algebraic == self.geometric


def _require_norm_one(x: Element, tol: float) -> float:
    nrm = element_norm(x)
    if nrm <= 1e-12:
        raise DegenerateInputError("the zero element has no norm-one classification")
    if abs(nrm - 1.0) > tol:
        raise PreconditionError(f"operation requires ||x|| = 1, got {nrm!r}")
    return nrm


def _block_singular_values(x: Element) -> list[tuple[int, float]]:
    out = []
    for i, b in enumerate(x.blocks):
        for s in linalg.singular_values(b):
            out.append((i, float(s)))
    return out


def _grid_norms(x: Element, y: Element, bs: np.ndarray) -> np.ndarray:
    """||x + b y|| for every b in the flat complex array bs (batched SVD)."""
    norms = np.zeros(bs.shape[0])
    for xb, yb in zip(x.blocks, y.blocks):
        stack = xb[None, :, :] + bs[:, None, None] * yb[None, :, :]
        s = np.linalg.svd(stack, compute_uv=False)
        norms = np.maximum(norms, s[:, 0])
    return norms


# ---------------------------------------------------------------------------
# partial isometries


def is_partial_isometry_algebraic(x: Element, tol: float = 1e-6) -> bool:
    """x x* x = x within `tol` (support identity oracle)."""
    return element_norm(x @ x.H @ x - x) <= tol


def construct_witness(
    x: Element,
    cfg: WitnessConfig = DEFAULT_WITNESS_CONFIG,
    eq_tol: float = 1e-8,
) -> PartialIsometryWitness | None:
    """Build the refuting element y = phi(|x|) x, or None if no singular
    value of x lies in [gap, 1 - gap].

    |x| is the left absolute value (xx*)^(1/2) per block.  The spectral
    point maximizes phi(s) * s among admissible singular values, which is
    what drives the margin at b = 1/||y||.
    """
    _require_norm_one(x, 1e-6)
    phi = cfg.witness_function
    admissible = [
        s for _, s in _block_singular_values(x) if cfg.gap <= s <= 1.0 - cfg.gap
    ]
    if not admissible:
        return None
    t = max(admissible, key=lambda s: phi(s) * s)

    y_blocks = []
    for b in x.blocks:
        absb = linalg.matrix_abs(b, side="left")
        y_blocks.append(linalg.apply_function_hermitian(absb, phi) @ b)
    y = Element(x.shape, tuple(y_blocks))

    y_norm = element_norm(y)
    b_scale = 1.0 / y_norm
    norm_plus = element_norm(x + y)
    norm_minus = element_norm(x - y)
    norm_at_b = element_norm(x + b_scale * y)
    margin = norm_at_b - 1.0
    if abs(norm_plus - 1.0) > eq_tol or abs(norm_minus - 1.0) > eq_tol:
        raise PreconditionError(
            f"witness invariant violated: ||x+y|| = {norm_plus!r}, ||x-y|| = {norm_minus!r}"
        )
    if margin <= 0.0:
        raise PreconditionError(f"witness margin is not positive: {margin!r}")
    return PartialIsometryWitness(
        y=y,
        b=b_scale,
        norm_plus=norm_plus,
        norm_minus=norm_minus,
        norm_at_b=norm_at_b,
        margin=margin,
        spectral_point=t,
    )


def x1_member(x: Element, y: Element, cfg: WitnessConfig = DEFAULT_WITNESS_CONFIG) -> bool:
    """Tester for the symmetric-perturbation set: does some a > 0 give
    ||x + ay|| = ||x - ay|| = 1?

    Coarse log-grid over a in [a_floor, a_ceiling] / ||y|| followed by a
    golden-section refinement of max(| ||x+ay|| - 1 |, | ||x-ay|| - 1 |).
    This is a harness tester, not a decision procedure.
    """
    y_norm = element_norm(y)
    if y_norm <= 1e-12:
        # 0 belongs to both comparison sets; admitted by continuity.
        return True

    def objective(a: float) -> float:
        dev_p = abs(element_norm(x + a * y) - 1.0)
        dev_m = abs(element_norm(x - a * y) - 1.0)
        return max(dev_p, dev_m)

    lo = cfg.a_floor / y_norm
    hi = cfg.a_ceiling / y_norm
    grid = np.geomspace(lo, hi, cfg.a_grid_points)
    vals = [objective(float(a)) for a in grid]
    k = int(np.argmin(vals))
    best = vals[k]
    left = grid[max(k - 1, 0)]
    right = grid[min(k + 1, len(grid) - 1)]

    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = float(left), float(right)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = objective(c), objective(d)
    for _ in range(60):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = objective(d)
        best = min(best, fc, fd)
        if best <= cfg.member_tol / 10.0:
            break
    return best <= cfg.member_tol


def x2_deviation(x: Element, y: Element, cfg: WitnessConfig = DEFAULT_WITNESS_CONFIG) -> float:
    """max over the b-grid of | ||x + by|| - max(1, ||by||) |."""
    y_norm = element_norm(y)
    if y_norm <= 1e-12:
        return abs(element_norm(x) - 1.0)
    bs = cfg.b_grid()
    norms = _grid_norms(x, y, bs)
    reference = np.maximum(1.0, np.abs(bs) * y_norm)
    return float(np.max(np.abs(norms - reference)))


def x2_member(x: Element, y: Element, cfg: WitnessConfig = DEFAULT_WITNESS_CONFIG) -> bool:
    """Tester for the max-identity set: ||x + by|| = max(1, ||by||) on the grid."""
    return x2_deviation(x, y, cfg) <= cfg.member_tol


def _defect_direction(x: Element, rng: np.random.Generator) -> Element | None:
    """A normalized direction from the corner (1-q) A (1-p), p = x*x, q = xx*."""
    shape = x.shape
    blocks = []
    for b in x.blocks:
        d = b.shape[0]
        p = b.conj().T @ b
        q = b @ b.conj().T
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        blocks.append((np.eye(d) - q) @ g @ (np.eye(d) - p))
    y = Element(shape, tuple(blocks))
    nrm = element_norm(y)
    if nrm <= 1e-8:
        return None
    return (1.0 / nrm) * y


def _random_direction(x: Element, rng: np.random.Generator) -> Element:
    blocks = [
        rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        for d in x.shape.block_dims
    ]
    y = Element(x.shape, tuple(blocks))
    return (1.0 / element_norm(y)) * y


def is_partial_isometry_geometric(
    x: Element,
    cfg: WitnessConfig = DEFAULT_WITNESS_CONFIG,
    rng: np.random.Generator | None = None,
    n_directions: int = 6,
) -> Verdict:
    """Geometric route: no witness exists and the two comparison-set testers
    agree on sampled directions (defect corner and random)."""
    rng = rng if rng is not None else np.random.default_rng(0)
    algebraic = is_partial_isometry_algebraic(x)
    witness = construct_witness(x, cfg)
    evidence: dict = {}
    if witness is not None:
        evidence["witness"] = witness
        geometric = False
    else:
        equivalent = True
        checked = 0
        for _ in range(n_directions):
            y = _defect_direction(x, rng)
            if y is not None:
                checked += 1
                if x1_member(x, y, cfg) != x2_member(x, y, cfg):
                    equivalent = False
                    break
            y = _random_direction(x, rng)
            checked += 1
            if x1_member(x, y, cfg) != x2_member(x, y, cfg):
                equivalent = False
                break
        evidence["directions_checked"] = checked
        geometric = equivalent
    return Verdict("partial_isometry", algebraic, geometric, evidence)


def is_extreme_point(
    x: Element,
    cfg: WitnessConfig = DEFAULT_WITNESS_CONFIG,
    rng: np.random.Generator | None = None,
    n_directions: int = 6,
) -> Verdict:
    """Extreme points of the unit ball: no symmetric perturbation survives.

    Algebraic route: partial isometry with a full support on one side in
    every block (forces unitary blocks here).  Geometric route: no witness
    and every sampled nonzero defect direction fails the X1 test.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    pi = is_partial_isometry_algebraic(x)
    full_support = True
    for b in x.blocks:
        d = b.shape[0]
        left = linalg.operator_norm(np.eye(d) - b @ b.conj().T)
        right = linalg.operator_norm(np.eye(d) - b.conj().T @ b)
        if min(left, right) > 1e-6:
            full_support = False
            break
    algebraic = pi and full_support

    witness = construct_witness(x, cfg)
    evidence: dict = {}
    if witness is not None:
        evidence["witness"] = witness
        geometric = False
    else:
        geometric = True
        for _ in range(n_directions):
            y = _defect_direction(x, rng)
            if y is None:
                continue
            if x1_member(x, y, cfg):
                geometric = False
                break
    return Verdict("extreme_point", algebraic, geometric, evidence)


# ---------------------------------------------------------------------------
# unitaries


def is_unitary_algebraic(x: Element, tol: float = 1e-6) -> bool:
    """x*x = xx* = 1 within `tol`."""
    one = Element.identity(x.shape)
    return (
        element_norm(x.H @ x - one) <= tol
        and element_norm(x @ x.H - one) <= tol
    )


def is_unitary_geometric(
    x: Element,
    tol: float = 1e-6,
    rng: np.random.Generator | None = None,
    rank_check: bool = True,
) -> Verdict:
    """Geometric route: the norming set spans the full dual.

    The span dimension is read off the exact parameterization; a sampled
    numeric span rank cross-checks it.  Elements of norm != 1 have an empty
    norming set in this sense and are geometrically non-unitary.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    algebraic = is_unitary_algebraic(x, tol)
    dual_dim = x.shape.dual_dimension
    evidence: dict = {"dual_dimension": dual_dim}
    nrm = element_norm(x)
    if abs(nrm - 1.0) > tol:
        evidence["reason"] = f"norm {nrm!r} is not 1; norming set empty"
        return Verdict("unitary", algebraic, False, evidence)
    desc = norming_set(x, tol)
    evidence["span_dim"] = desc.span_dim
    evidence["warnings"] = list(desc.warnings)
    if rank_check and desc.active_blocks:
        samples = [
            sample_norming_functional(desc, rng) for _ in range(3 * max(desc.span_dim, 1))
        ]
        evidence["numeric_span_rank"] = numeric_span_rank(samples, tol=1e-7)
    geometric = desc.span_dim == dual_dim
    return Verdict("unitary", algebraic, geometric, evidence)


def norming_annihilates_defect(
    x: Element, samples: int, rng: np.random.Generator
) -> float:
    """max over sampled norming functionals of |f(1 - x*x)| for a partial
    isometry x; vanishes because dual mass sits on the unit singular frame."""
    desc = norming_set(x)
    defect = Element.identity(x.shape) - x.H @ x
    worst = 0.0
    for _ in range(samples):
        f = sample_norming_functional(desc, rng)
        worst = max(worst, abs(evaluate(f, defect)))
    return worst


@dataclass(frozen=True)
class DefectNormReport:
    """Norm identities for x + a t p with p = 1 - x*x, x a partial isometry.

    identity_deviation: max | ||x + atp||^2 - ||xx* + t^2 p|| |  (exact identity:
        the cross terms cancel because xp = 0).
    inequality_slack: max over the grid of ||x + atp||^2 - (1 + t^2), clipped
        at zero (the bound used to force f(p) = 0).
    orthogonal_case_deviation: max | ||x + atp|| - max(1, |t|) |; zero exactly
        when xx* is orthogonal to p, and strictly positive otherwise.
    """

    identity_deviation: float
    inequality_slack: float
    orthogonal_case_deviation: float


def defect_norm_identity(
    x: Element,
    t_grid: tuple[float, ...] = (0.1, 0.5, 1.0, 2.0, 10.0),
    n_phases: int = 16,
) -> DefectNormReport:
    """Audit the defect-perturbation norm identities over a t and phase grid."""
    one = Element.identity(x.shape)
    p = one - x.H @ x
    q = x @ x.H
    phases = np.exp(1j * np.pi * np.arange(n_phases) / 8.0)
    identity_dev = 0.0
    slack = 0.0
    orth_dev = 0.0
    for t in t_grid:
        reference = element_norm(q + (t * t) * p)
        for a in phases:
            nrm = element_norm(x + (a * t) * p)
            identity_dev = max(identity_dev, abs(nrm * nrm - reference))
            slack = max(slack, nrm * nrm - (1.0 + t * t))
            orth_dev = max(orth_dev, abs(nrm - max(1.0, t)))
    return DefectNormReport(
        identity_deviation=identity_dev,
        inequality_slack=max(0.0, slack),
        orthogonal_case_deviation=orth_dev,
    )


# ---------------------------------------------------------------------------
# invertibility


def element_min_singular_value(x: Element) -> float:
    return min(float(linalg.singular_values(b)[-1]) for b in x.blocks)


def invertibility_certificate(
    x: Element, threshold: float = 1e-6
) -> InvertibilityCertificate | None:
    """Certificate (u, epsilon) with u the left-polar unitary and epsilon the
    smallest singular value; None when x is numerically singular."""
    sigma_min = element_min_singular_value(x)
    if sigma_min <= threshold:
        return None
    u_blocks = [linalg.polar(b, side="left").isometry for b in x.blocks]
    return InvertibilityCertificate(
        u=Element(x.shape, tuple(u_blocks)), epsilon=sigma_min
    )


def verify_certificate(
    x: Element, cert: InvertibilityCertificate, tol: float = 1e-8
) -> bool:
    """Check a certificate: u unitary, xu* Hermitian, lambda_min >= epsilon.

    Malformed certificates (epsilon <= 0, block mismatch) raise; a well-formed
    certificate that fails the spectral conditions returns False.
    """
    if not isinstance(cert, InvertibilityCertificate):
        raise MalformedCertificateError("not an invertibility certificate")
    if not (cert.epsilon > 0.0) or not np.isfinite(cert.epsilon):
        raise MalformedCertificateError(f"epsilon must be positive, got {cert.epsilon!r}")
    if cert.u.shape != x.shape:
        raise MalformedCertificateError("certificate unitary has mismatched block structure")
    try:
        result: NormingMinimum = min_real_over_norming(cert.u, x, unitary_tol=tol)
    except PreconditionError:
        return False
    if result.hermitian_residual > tol:
        return False
    return result.value >= cert.epsilon - tol


# ---------------------------------------------------------------------------
# unit-dependent predicates


def _require_unit(x: Element, unit: Element, tol: float = 1e-8) -> None:
    if unit.shape != x.shape:
        raise ShapeMismatchError("unit and element shapes differ")
    dev = element_norm(unit - Element.identity(unit.shape))
    if dev > tol:
        raise PreconditionError(f"supplied unit is not the identity: deviation {dev:.3e}")


def lumer_slopes(
    x: Element, unit: Element, alphas: tuple[float, ...] = (1e-2, 1e-3, 1e-4)
) -> dict[float, float]:
    """Signed slopes d(alpha) = (||1 + i alpha x|| - 1) / alpha for both signs."""
    _require_unit(x, unit)
    out = {}
    for a in alphas:
        for signed in (a, -a):
            out[signed] = (element_norm(unit + (1j * signed) * x) - 1.0) / signed
    return out


def is_self_adjoint_lumer(
    x: Element,
    unit: Element,
    alphas: tuple[float, ...] = (1e-2, 1e-3, 1e-4),
    factor: float = 10.0,
) -> bool:
    """Lumer criterion: ||1 + i alpha x|| = 1 + o(alpha).

    For each scale the two signed slopes must decay linearly:
    max |d(+/-alpha)| <= factor * alpha * max(1, ||x||^2).
    """
    slopes = lumer_slopes(x, unit, alphas)
    bound_scale = max(1.0, element_norm(x) ** 2)
    for a in alphas:
        worst = max(abs(slopes[a]), abs(slopes[-a]))
        if worst > factor * a * bound_scale:
            return False
    return True


def _state_basis(n: int) -> list[np.ndarray]:
    """n^2 density matrices spanning the Hermitian-detecting states on M_n."""
    basis = []
    eye = np.eye(n, dtype=np.complex128)
    for j in range(n):
        basis.append(np.outer(eye[j], eye[j].conj()))
    for j in range(n):
        for k in range(j + 1, n):
            v = (eye[j] + eye[k]) / np.sqrt(2.0)
            basis.append(np.outer(v, v.conj()))
            w = (eye[j] + 1j * eye[k]) / np.sqrt(2.0)
            basis.append(np.outer(w, w.conj()))
    return basis


def is_self_adjoint_states(x: Element, unit: Element, tol: float = 1e-8) -> bool:
    """f(x) real for the spanning family of matrix-unit-derived states."""
    _require_unit(x, unit)
    for b in x.blocks:
        for rho in _state_basis(b.shape[0]):
            if abs(np.trace(rho @ b).imag) > tol:
                return False
    return True


def _real_coords(m: np.ndarray) -> np.ndarray:
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def _from_real_coords(r: np.ndarray, n: int) -> np.ndarray:
    half = n * n
    return (r[:half] + 1j * r[half:]).reshape(n, n)


def recover_adjoint(x: Element, unit: Element) -> Element:
    """Recover x* from norm data alone: split x = h + ik with h, k in the
    state-detected real subspace and return h - ik.

    The real subspace is computed per block as the nullspace of the
    constraints Im tr(rho z) = 0 over the state basis; the split is the
    solution of the induced real-linear system.  The result coincides with
    the blockwise conjugate transpose.
    """
    _require_unit(x, unit)
    out_blocks = []
    for b in x.blocks:
        n = b.shape[0]
        basis = _state_basis(n)
        # Im tr(rho z) as a real-linear functional of (Re z, Im z)
        rows = []
        for rho in basis:
            rt = rho.T
            rows.append(np.concatenate([rt.imag.ravel(), rt.real.ravel()]))
        constraint = np.stack(rows)
        _, s, vh = np.linalg.svd(constraint)
        tol = max(constraint.shape) * np.finfo(float).eps * (s[0] if s.size else 1.0)
        null = vh[np.sum(s > tol) :].conj().T  # (2n^2, dim H) real basis of H
        # multiplication by i: (re, im) -> (-im, re)
        half = n * n
        i_null = np.concatenate([-null[half:], null[:half]])
        system = np.concatenate([null, i_null], axis=1)
        coeffs, *_ = np.linalg.lstsq(system, _real_coords(b), rcond=None)
        dim = null.shape[1]
        h = _from_real_coords(null @ coeffs[:dim], n)
        k = _from_real_coords(null @ coeffs[dim:], n)
        out_blocks.append(h - 1j * k)
    return Element(x.shape, tuple(out_blocks))


def is_positive(
    x: Element,
    unit: Element,
    rng: np.random.Generator | None = None,
    samples: int = 50,
) -> Verdict:
    """Three-route positivity: spectral oracle, state values, and the
    norm-shift inequality || ||x|| 1 - x || <= ||x||.

    The state route evaluates the spanning basis, the eigenstates of the
    Hermitian part, and `samples` random pure states; its minimum equals
    the smallest eigenvalue of the Hermitian part, so all three routes are
    unanimous on clean inputs.
    """
    _require_unit(x, unit)
    rng = rng if rng is not None else np.random.default_rng(0)
    tol_eq = 1e-8

    herm_dev = element_norm(x - x.H)
    lam_min = np.inf
    for b in x.blocks:
        herm = 0.5 * (b + b.conj().T)
        lam_min = min(lam_min, float(np.linalg.eigvalsh(herm)[0]))
    spectral = herm_dev <= 1e-6 and lam_min >= -tol_eq

    min_re = np.inf
    max_im = 0.0
    for b in x.blocks:
        n = b.shape[0]
        states = list(_state_basis(n))
        herm = 0.5 * (b + b.conj().T)
        _, vecs = np.linalg.eigh(herm)
        for j in range(n):
            states.append(np.outer(vecs[:, j], vecs[:, j].conj()))
        for _ in range(samples):
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            v /= np.linalg.norm(v)
            states.append(np.outer(v, v.conj()))
        for rho in states:
            val = complex(np.trace(rho @ b))
            min_re = min(min_re, val.real)
            max_im = max(max_im, abs(val.imag))
    state_route = min_re >= -tol_eq and max_im <= tol_eq

    nrm = element_norm(x)
    shift_ok = element_norm(nrm * unit - x) <= nrm + tol_eq
    norm_route = is_self_adjoint_states(x, unit) and shift_ok

    evidence = {
        "lambda_min": None if lam_min is np.inf else float(lam_min),
        "state_min_real": None if min_re is np.inf else float(min_re),
        "state_max_imag": float(max_im),
        "conditions": {
            "spectral": spectral,
            "states": state_route,
            "norm_shift": norm_route,
        },
        "unanimous": spectral == state_route == norm_route,
    }
    return Verdict("positive", spectral, state_route and norm_route, evidence)


def is_projection(
    x: Element,
    unit: Element,
    rng: np.random.Generator | None = None,
) -> Verdict:
    """Three-route projection test: idempotent-Hermitian oracle, positive
    partial isometry, and the symmetry x = (1 + v)/2 with v self-adjoint
    unitary."""
    _require_unit(x, unit)
    oracle = (
        element_norm(x @ x - x) <= 1e-6 and element_norm(x - x.H) <= 1e-6
    )

    pos = is_positive(x, unit, rng=rng)
    pi_and_positive = is_partial_isometry_algebraic(x) and pos.algebraic and pos.geometric

    v = 2.0 * x - unit
    one = Element.identity(x.shape)
    symmetry = (
        element_norm(v - v.H) <= 1e-6
        and element_norm(v.H @ v - one) <= 1e-6
        and element_norm(v @ v.H - one) <= 1e-6
    )

    evidence = {
        "conditions": {
            "idempotent_hermitian": oracle,
            "positive_partial_isometry": pi_and_positive,
            "symmetry_unitary": symmetry,
        },
        "unanimous": oracle == pi_and_positive == symmetry,
    }
    return Verdict("projection", oracle, pi_and_positive and symmetry, evidence)
