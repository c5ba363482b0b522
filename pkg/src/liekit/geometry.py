"""Bi-invariant metric geometry at the identity and extrinsic geometry of adjoint orbits.

Orbits live in the flat ambient space (g, <,>), so geodesics there are straight
lines and the shape operator of Ad(G)Z comes from differentiating the
equivariant normal field Ad(g)Z -> Ad(g)N.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .adjoint import Ad_matrix
from .algebra import LieAlgebra, is_semisimple, require_compact, split_simple_ideals
from .cartan import RootSystem, invariant_metric, is_regular, stabilizer_algebra, standard_cartan
from .errors import (
    CanonicalFormError,
    ConsistencyError,
    DegeneratePlaneError,
    EinsteinError,
    PreconditionError,
    RegularityError,
)
from .numlin import herm_eig, mat_exp
from .weyl import WeylGroup, to_fundamental_domain

__all__ = [
    "BiInvariantMetric",
    "OrbitShape",
    "trace_metric",
    "killing_metric",
    "custom_metric",
    "levi_civita",
    "curvature_tensor",
    "curvature_4",
    "sectional",
    "ricci",
    "ricci_matrix",
    "einstein_constant",
    "orbit_shape_operator",
    "finite_difference_shape",
    "canonical_cartan_element",
    "parallel_orbit_check",
    "orbit_report",
]

FD_STEP = 1e-4


@dataclass(frozen=True, eq=False)
class BiInvariantMetric:
    owner: LieAlgebra
    gram: np.ndarray
    kind: str

    def inner(self, x, y) -> float:
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.inner(x, x), 0.0)))

    def orthonormal_basis(self) -> np.ndarray:
        """Rows e_i (algebra coordinates) with <e_i, e_j> = delta_ij."""
        chol = np.linalg.cholesky(self.gram)
        return np.linalg.inv(chol.T).T


def _validate(L, gram, kind):
    gram = np.asarray(gram, dtype=float)
    if gram.shape != (L.dim, L.dim) or not np.allclose(gram, gram.T, atol=1e-12):
        raise PreconditionError("metric must be a symmetric d x d matrix")
    if L.dim:
        w = np.linalg.eigvalsh(gram)
        if w.min() <= 1e-10 * max(1.0, w.max()):
            raise PreconditionError("metric is not positive-definite")
        skew = np.einsum("kl,ilj->ikj", gram, L.ad_matrices)
        err = np.abs(skew + np.transpose(skew, (0, 2, 1))).max()
        if err > 1e-9 * (1.0 + np.abs(skew).max()):
            raise PreconditionError(f"metric is not ad-invariant (residual {err:.3e})")
    return BiInvariantMetric(L, gram, kind)


def trace_metric(L: LieAlgebra) -> BiInvariantMetric:
    return _validate(L, L.trace_gram, "trace-form")


def killing_metric(L: LieAlgebra) -> BiInvariantMetric:
    require_compact(L)
    return _validate(L, -L.killing, "minus-killing")


def custom_metric(L: LieAlgebra, gram) -> BiInvariantMetric:
    return _validate(L, gram, "custom")


def levi_civita(m: BiInvariantMetric, x, y) -> np.ndarray:
    """nabla_X Y = 1/2 [X, Y] for left-invariant fields."""
    return 0.5 * m.owner.bracket(x, y)


def curvature_tensor(m: BiInvariantMetric, x, y, z) -> np.ndarray:
    """R(X, Y)Z = 1/4 [[X, Y], Z]."""
    L = m.owner
    return 0.25 * L.bracket(L.bracket(x, y), z)


def curvature_4(m: BiInvariantMetric, x, y, z, w) -> float:
    """R(X, Y, Z, W) = <R(X, Y)Z, W>."""
    return m.inner(curvature_tensor(m, x, y, z), w)


def sectional(m: BiInvariantMetric, x, y) -> float:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    xx, yy, xy = m.inner(x, x), m.inner(y, y), m.inner(x, y)
    denom = xx * yy - xy * xy
    if denom <= 1e-12 * max(xx * yy, 1e-300):
        raise DegeneratePlaneError("X and Y do not span a plane")
    return curvature_4(m, x, y, x, y) / denom


def _require_ricci_kind(m):
    if m.kind not in ("trace-form", "minus-killing"):
        raise PreconditionError("Ricci curvature is provided for the trace-form and -B metrics")


def ricci_matrix(m: BiInvariantMetric) -> np.ndarray:
    """Ric(b_a, b_b) on the algebra basis by tracing R(X, e_i)Y against e_i."""
    _require_ricci_kind(m)
    L = m.owner
    ad = L.ad_matrices
    E = m.orthonormal_basis()
    EG = E @ m.gram
    out = np.zeros((L.dim, L.dim))
    for a in range(L.dim):
        br = E @ ad[a].T                              # row i: coords of [b_a, e_i]
        ops = np.einsum("ic,cjk->ijk", br, ad)        # ad([b_a, e_i])
        out[a] = 0.25 * np.einsum("ij,ijk->k", EG, ops)
    return out


def ricci(m: BiInvariantMetric, x, y, tol: float = 1e-8) -> float:
    """Ric(X, Y) by the trace definition, cross-checked against -B/4."""
    _require_ricci_kind(m)
    L = m.owner
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    E = m.orthonormal_basis()
    val = sum(m.inner(curvature_tensor(m, x, e, y), e) for e in E)
    ref = -0.25 * float(x @ L.killing @ y)
    scale = 1.0 + abs(ref) + np.linalg.norm(x) * np.linalg.norm(y)
    if abs(val - ref) > tol * scale:
        raise ConsistencyError(f"Ricci trace {val} disagrees with -B/4 = {ref}")
    return float(val)


def einstein_constant(L: LieAlgebra, m: BiInvariantMetric, tol: float = 1e-8) -> float:
    """lambda with Ric = lambda <,>; L must be simple."""
    if L.dim == 0 or not is_semisimple(L) or len(split_simple_ideals(L)) != 1:
        raise PreconditionError(f"{L.name} is not simple")
    E = m.orthonormal_basis()
    ric = E @ ricci_matrix(m) @ E.T
    lam = float(np.mean(np.diag(ric)))
    dev = np.abs(ric - lam * np.eye(L.dim)).max()
    if dev > tol * max(1.0, abs(lam)):
        raise EinsteinError(f"Ricci is not proportional to the metric (deviation {dev:.3e})")
    return lam


@dataclass(frozen=True, eq=False)
class OrbitShape:
    """Shape operator S_N of the orbit Ad(G)Z at Z.  ``values[k]`` acts on the
    plane ``planes[k]`` of the positive root ``roots[k]``."""

    base: np.ndarray
    normal: np.ndarray
    roots: tuple
    values: np.ndarray
    planes: np.ndarray
    metric: BiInvariantMetric = field(repr=False)

    def tangent_basis(self) -> np.ndarray:
        return self.planes.reshape(-1, self.planes.shape[-1])

    def operator(self) -> np.ndarray:
        """S as a d x d matrix on algebra coordinates (zero on t)."""
        G = self.metric.gram
        S = np.zeros((len(G), len(G)))
        for val, plane in zip(self.values, self.planes):
            for e in plane:
                e = e / self.metric.norm(e)
                S += val * np.outer(e, e @ G)
        return S


def orbit_shape_operator(rs: RootSystem, m: BiInvariantMetric, Z, N) -> OrbitShape:
    """Principal curvatures -alpha(N)/alpha(Z), each on the 2-plane V_alpha."""
    Z, N = np.asarray(Z, dtype=float), np.asarray(N, dtype=float)
    if not is_regular(rs, Z):
        vals = rs.evaluate(Z)
        raise RegularityError("Z is not regular",
                              [int(k) for k in np.flatnonzero(np.abs(vals) <= 1e-8 * np.linalg.norm(Z))])
    if rs.positive is None:
        raise PreconditionError("choose positive roots first")
    P = list(rs.positive)
    values = -rs.evaluate(N)[P] / rs.evaluate(Z)[P]
    return OrbitShape(Z, N, tuple(P), values, rs.planes[P], m)


def _ad_group(L, xi, t):
    return Ad_matrix(L, mat_exp(t * L.matrix(xi))).matrix


def finite_difference_shape(rs: RootSystem, m: BiInvariantMetric, Z, N, g=None,
                            step: float = FD_STEP) -> tuple[np.ndarray, np.ndarray]:
    """Shape operator at the orbit point Ad(g)Z by central differences.

    Tangent vectors come from curves t -> Ad(exp t xi) p and the normal field
    from t -> Ad(exp t xi) Ad(g) N, so no root data enters the estimate apart
    from the choice of directions xi.  Returns (S_fd, S_exact) as matrices in an
    orthonormal basis of the tangent space.
    """
    L = rs.algebra
    G = m.gram
    zc = rs.cartan.to_algebra(Z)
    nc = rs.cartan.to_algebra(N)
    Ag = np.eye(L.dim) if g is None else Ad_matrix(L, g).matrix
    p, nu = Ag @ zc, Ag @ nc
    # directions: complement of t, as the Ad(g)-image of the root planes
    xis = (Ag @ rs.planes[list(rs.positive)].reshape(-1, L.dim).T).T
    V, W = [], []
    for xi in xis:
        plus, minus = _ad_group(L, xi, step), _ad_group(L, xi, -step)
        V.append((plus @ p - minus @ p) / (2 * step))
        W.append((plus @ nu - minus @ nu) / (2 * step))
    V, W = np.array(V), np.array(W)
    # orthonormal basis of the tangent space from the numerical tangent vectors
    chol = np.linalg.cholesky(G)
    Q, _ = np.linalg.qr(chol.T @ V.T)
    Tb = np.linalg.solve(chol.T, Q).T              # rows: G-orthonormal tangent basis
    A = V @ G @ Tb.T                               # tangent vectors in basis
    B = -(W @ G @ Tb.T)                            # -tangential part of dN
    S_fd = np.linalg.solve(A, B).T
    shape = orbit_shape_operator(rs, m, Z, N)
    S_ex = Tb @ G @ (Ag @ shape.operator() @ np.linalg.inv(Ag)) @ Tb.T
    return S_fd, S_ex


def _so_angles(M):
    n = M.shape[0]
    T, Q = scipy.linalg.schur(M.real, output="real")
    thetas, k = [], 0
    while k < n:
        if k + 1 < n and abs(T[k + 1, k]) > 1e-12 * (1 + np.abs(T).max()):
            thetas.append(T[k, k + 1])
            k += 2
        else:
            k += 1
    thetas += [0.0] * (n // 2 - len(thetas))
    thetas = np.array(thetas[: n // 2])
    if n % 2 == 0 and np.linalg.det(Q) < 0 and len(thetas):
        thetas[-1] = -thetas[-1]
    return thetas


def _block_canonical(family, n, M):
    """A standard-torus matrix conjugate to the block M."""
    if family in ("su", "u"):
        w = herm_eig(-1j * M).eigenvalues[::-1]
        return 1j * np.diag(w)
    if family == "so":
        out = np.zeros((n, n), dtype=complex)
        for k, th in enumerate(_so_angles(M)):
            out[2 * k, 2 * k + 1] = th
            out[2 * k + 1, 2 * k] = -th
        return out
    if family == "sp":
        w = herm_eig(-1j * M).eigenvalues[::-1][:n]
        return np.diag(np.concatenate([1j * w, -1j * w]))
    raise CanonicalFormError(f"no canonical form for family {family!r}")


def canonical_cartan_element(rs: RootSystem, y) -> np.ndarray:
    """Weyl-canonical Cartan coordinates of the adjoint orbit through y (algebra coords)."""
    L = rs.algebra
    t = standard_cartan(L)
    if t.basis.shape != rs.cartan.basis.shape or not np.allclose(t.basis, rs.cartan.basis, atol=1e-12):
        raise CanonicalFormError("canonical forms need the standard Cartan subalgebra")
    Y = L.matrix(y)
    out = np.zeros_like(Y)
    for family, n, off in L.blocks:
        size = 2 * n if family == "sp" else n
        sl = slice(off, off + size)
        out[sl, sl] = _block_canonical(family, n, Y[sl, sl])
    h = t.from_algebra(L.coords(out, tol=1e-7))
    return to_fundamental_domain(rs, h)[0]


def parallel_orbit_check(rs: RootSystem, W: WeylGroup | None, Z, N, samples: int = 8,
                         seed: int = 0, tol: float = 1e-6) -> dict:
    """Check that Ad(g)Z + Ad(g)N stays on the orbit of Z + N for random g."""
    Z, N = np.asarray(Z, dtype=float), np.asarray(N, dtype=float)
    if not is_regular(rs, Z):
        raise RegularityError("Z is not regular")
    L = rs.algebra
    rng = np.random.default_rng(seed)
    target = to_fundamental_domain(rs, Z + N)[0]
    zc, nc = rs.cartan.to_algebra(Z), rs.cartan.to_algebra(N)
    worst, offending = 0.0, None
    for s in range(samples):
        xi = rng.normal(size=L.dim)
        Ag = Ad_matrix(L, mat_exp(L.matrix(xi))).matrix
        y = Ag @ zc + Ag @ nc
        try:
            can = canonical_cartan_element(rs, y)
        except CanonicalFormError as exc:
            return {"pass": False, "max_deviation": None, "offending_sample": s, "error": str(exc)}
        dev = float(np.abs(can - target).max())
        if dev > worst:
            worst = dev
        if dev > tol and offending is None:
            offending = s
    dim_reg = L.dim - rs.rank
    dim_zn = L.dim - stabilizer_algebra(rs, Z + N)[0]
    return {
        "pass": offending is None,
        "max_deviation": worst,
        "offending_sample": offending,
        "canonical": target,
        "orbit_dim_Z": dim_reg,
        "orbit_dim_Z_plus_N": dim_zn,
        "dimension_drop": dim_reg - dim_zn,
        "weyl_order": None if W is None else W.order,
    }


def orbit_report(rs: RootSystem, Z, N, samples: int = 8, seed: int = 0, W=None) -> dict:
    m = BiInvariantMetric(rs.algebra, invariant_metric(rs.algebra), "trace-form")
    shape = orbit_shape_operator(rs, m, Z, N)
    check = parallel_orbit_check(rs, W, Z, N, samples=samples, seed=seed)
    return {
        "Z": list(map(float, Z)),
        "N": list(map(float, N)),
        "canonical_Z_plus_N": [float(v) for v in check["canonical"]],
        "orbit_dim": check["orbit_dim_Z"],
        "orbit_dim_Z_plus_N": check["orbit_dim_Z_plus_N"],
        "dimension_drop": check["dimension_drop"],
        "parallel_orbit_check": "PASS" if check["pass"] else "FAIL",
        "max_deviation": check["max_deviation"],
        "principal_curvatures": [
            {"root": [float(v) for v in rs.roots[k]], "value": float(val), "multiplicity": 2}
            for k, val in zip(shape.roots, shape.values)
        ],
    }
