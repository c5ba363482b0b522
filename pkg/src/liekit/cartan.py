"""Cartan subalgebras and root-space decompositions of compact Lie algebras."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .algebra import LieAlgebra, null_space, require_compact
from .errors import (
    ConstructionError,
    GenericityError,
    MultiplicityError,
    PreconditionError,
    RegularityError,
    SimpleRootError,
)
from .numlin import herm_eig

__all__ = [
    "CartanSubalgebra",
    "RootSystem",
    "invariant_metric",
    "standard_cartan",
    "centralizer_cartan",
    "root_decomposition",
    "choose_positive",
    "simple_roots",
    "coroot",
    "stabilizer_algebra",
    "is_regular",
    "root_system",
    "root_system_to_json",
]

CLUSTER_TOL = 1e-7
REGULAR_TOL = 1e-8
WALL_TOL = 1e-8


def invariant_metric(L: LieAlgebra) -> np.ndarray:
    """Gram matrix of an ad-invariant inner product on L.

    The trace form is used when it is positive-definite and ad-skew (true for
    compact matrix algebras); otherwise -B.
    """
    G = L.trace_gram
    if L.dim == 0:
        return G
    ok = np.all(np.linalg.eigvalsh(G) > 1e-12 * np.abs(G).max())
    if ok:
        skew = np.einsum("kl,ilj->ikj", G, L.ad_matrices)   # G ad_i
        err = np.abs(skew + np.transpose(skew, (0, 2, 1))).max()
        ok = err <= 1e-9 * (1.0 + np.abs(skew).max())
    return G if ok else -L.killing


def _orthonormalize(vectors, G):
    """Gram-Schmidt (rows) in the inner product G, order preserving."""
    out = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for u in out:
            w = w - (u @ G @ w) * u
        for u in out:
            w = w - (u @ G @ w) * u
        nrm = np.sqrt(w @ G @ w)
        if nrm > 1e-10:
            out.append(w / nrm)
    return np.array(out).reshape(len(out), len(G))


@dataclass(frozen=True, eq=False)
class CartanSubalgebra:
    """Maximal abelian subalgebra; ``basis`` rows are L-coordinates of H_1..H_r,
    orthonormal in the invariant metric.  ``preferred`` is an optional regular
    element (Cartan coordinates) that reproduces the textbook positive roots."""

    owner: LieAlgebra
    basis: np.ndarray
    preferred: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def metric(self) -> np.ndarray:
        return invariant_metric(self.owner)

    def to_algebra(self, h) -> np.ndarray:
        return np.asarray(h, dtype=float) @ self.basis

    def from_algebra(self, x) -> np.ndarray:
        """Orthogonal projection of algebra coordinates onto t, in Cartan coordinates."""
        return self.basis @ self.metric @ np.asarray(x, dtype=float)

    def matrix(self, h) -> np.ndarray:
        return self.owner.matrix(self.to_algebra(h))


def _block_cartan(family, n):
    """Matrices of the textbook Cartan basis and a regular element for one block."""
    if family == "su":
        mats = []
        for k in range(1, n):
            diag = np.zeros(n)
            diag[:k] = 1.0
            diag[k] = -k
            mats.append(1j * np.diag(diag) / np.sqrt(k * (k + 1)))
        theta = (n - 1) / 2.0 - np.arange(n)
        return mats, 1j * np.diag(theta)
    if family == "u":
        mats = [1j * np.diag(np.eye(n)[k]) for k in range(n)]
        return mats, 1j * np.diag(n - np.arange(n, dtype=float))
    if family == "so":
        m = n // 2
        mats = []
        reg = np.zeros((n, n), dtype=complex)
        for k in range(m):
            E = np.zeros((n, n), dtype=complex)
            E[2 * k, 2 * k + 1] = 1.0
            E[2 * k + 1, 2 * k] = -1.0
            mats.append(E)
            reg += (m - k) * E
        return mats, reg
    if family == "sp":
        mats = []
        theta = n - np.arange(n, dtype=float)
        for k in range(n):
            d = np.zeros(2 * n, dtype=complex)
            d[k], d[n + k] = 1j, -1j
            mats.append(np.diag(d))
        d = np.concatenate([1j * theta, -1j * theta])
        return mats, np.diag(d)
    raise ConstructionError(f"no standard Cartan subalgebra for family {family!r}")


def standard_cartan(L: LieAlgebra) -> CartanSubalgebra:
    """Diagonal / 2x2-rotation-block Cartan subalgebra of a classical compact algebra
    (or a direct sum of such)."""
    if not L.blocks:
        raise ConstructionError(f"{L.name} has no classical block structure")
    N = L.ambient_size
    mats, reg = [], np.zeros((N, N), dtype=complex)
    for family, n, off in L.blocks:
        bm, breg = _block_cartan(family, n)
        size = breg.shape[0]
        for M in bm:
            E = np.zeros((N, N), dtype=complex)
            E[off:off + size, off:off + size] = M
            mats.append(E)
        reg[off:off + size, off:off + size] += breg
    G = invariant_metric(L)
    coords = [L.coords(M) for M in mats]
    basis = _orthonormalize(coords, G)
    t = CartanSubalgebra(L, basis)
    preferred = t.from_algebra(L.coords(reg)) if len(basis) else None
    return CartanSubalgebra(L, basis, preferred)


def centralizer_cartan(L: LieAlgebra, x=None, seed: int = 0, tries: int = 8) -> CartanSubalgebra:
    """Cartan subalgebra as the centralizer ker ad(X) of a generic X.

    With ``x`` given a single attempt is made; otherwise up to ``tries`` random
    elements are drawn.
    """
    G = invariant_metric(L)
    if L.dim and np.linalg.eigvalsh(G).min() <= 0:
        G = L.frobenius_gram          # non-compact: only used to normalise the basis
    rng = np.random.default_rng(seed)
    candidates = [np.asarray(x, dtype=float)] if x is not None else (
        rng.normal(size=L.dim) for _ in range(tries))
    worst = None
    for cand in candidates:
        K = null_space(L.ad(cand)).T          # rows: kernel vectors
        if L.dim and not np.any(cand):
            K = np.eye(L.dim)
        worst = 0.0
        for i in range(len(K)):
            for j in range(i + 1, len(K)):
                worst = max(worst, np.linalg.norm(L.bracket(K[i], K[j])))
        if worst <= 1e-9:
            if x is not None and np.any(cand):
                # keep X itself as the first basis direction
                K = np.vstack([cand, K])
            return CartanSubalgebra(L, _orthonormalize(K, G))
    raise GenericityError(f"centralizer is not abelian (bracket norm {worst:.3e})")


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Roots are stored as vectors in Cartan coordinates (alpha(H) = <root, H>).

    ``planes[m]`` holds (e1, e2) in algebra coordinates for root m, with
    [H, e1] = alpha(H) e2 and [H, e2] = -alpha(H) e1.
    """

    cartan: CartanSubalgebra
    roots: np.ndarray
    planes: np.ndarray
    positive: tuple | None = None
    simple: tuple | None = None
    regular_element: np.ndarray | None = None

    @property
    def algebra(self) -> LieAlgebra:
        return self.cartan.owner

    @property
    def rank(self) -> int:
        return self.cartan.rank

    def evaluate(self, X) -> np.ndarray:
        """alpha(X) for every root, X in Cartan coordinates."""
        return self.roots @ np.asarray(X, dtype=float)

    @cached_property
    def pair_representatives(self) -> tuple:
        """One root out of every +/- pair: the positive ones if chosen, else the
        lexicographically positive ones."""
        if self.positive is not None:
            return tuple(self.positive)
        reps = []
        for m, a in enumerate(self.roots):
            nz = np.flatnonzero(np.abs(a) > CLUSTER_TOL)
            if a[nz[0]] > 0:
                reps.append(m)
        return tuple(reps)

    def index_of(self, vec, tol: float = CLUSTER_TOL) -> int | None:
        diff = np.abs(self.roots - np.asarray(vec, dtype=float)).max(axis=1)
        m = int(np.argmin(diff))
        return m if diff[m] < tol else None

    @property
    def coroots(self) -> np.ndarray:
        idx = self.positive if self.positive is not None else range(len(self.roots))
        return np.array([coroot(self, m) for m in idx]).reshape(-1, self.rank)

    @property
    def simple_vectors(self) -> np.ndarray:
        if self.simple is None:
            raise PreconditionError("simple roots not chosen")
        return self.roots[list(self.simple)]


def root_decomposition(L: LieAlgebra, t: CartanSubalgebra, seed: int = 0,
                       cluster_tol: float = CLUSTER_TOL, tries: int = 8) -> RootSystem:
    """Simultaneous eigen-decomposition of ad(t) on the complexification.

    One Hermitian problem for ad of a random element of t gives the weight
    vectors; each weight is read off by Rayleigh quotients against ad(H_k).
    """
    require_compact(L)
    r, d = t.rank, L.dim
    G = t.metric
    chol = np.linalg.cholesky(G)             # G = chol chol^T
    cinvT = np.linalg.inv(chol.T)
    # ad(H_k) in G-orthonormal coordinates: real skew-symmetric
    A = np.array([chol.T @ L.ad(h) @ cinvT for h in t.basis]).reshape(r, d, d)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        c = rng.normal(size=r)
        K = 1j * np.tensordot(c, A, axes=1)
        V = herm_eig(K).eigenvectors
        # weight m, coordinate k: Re v_m^* (-i A_k) v_m
        AV = np.einsum("kij,jm->kim", A, V)
        W = np.real(np.einsum("im,kim->mk", V.conj(), -1j * AV))
        resid = np.abs(AV - 1j * W.T[:, None, :] * V[None, :, :]).max()
        if resid <= 1e-8 * (1.0 + np.abs(A).max()):
            break
    else:
        raise GenericityError(f"random element of t is not generic (residual {resid:.3e})")

    zero = np.abs(W).max(axis=1) < cluster_tol
    if zero.sum() != r:
        raise MultiplicityError(f"zero weight space has dimension {zero.sum()}, rank is {r}")
    nz = np.flatnonzero(~zero)
    Wn = W[nz]
    for a in range(len(nz)):
        close = np.abs(Wn - Wn[a]).max(axis=1) < cluster_tol
        if close.sum() != 1:
            raise MultiplicityError(f"weight {Wn[a]} has multiplicity {close.sum()}")

    roots, planes = [], []
    for m in nz:
        u = cinvT @ V[:, m]
        k = np.flatnonzero(np.abs(u) > 1e-8 * np.abs(u).max())[0]
        u = u * np.conj(u[k]) / np.abs(u[k])
        e2, e1 = u.real, u.imag
        e1 = e1 / np.sqrt(e1 @ G @ e1)
        e2 = e2 / np.sqrt(e2 @ G @ e2)
        roots.append(W[m])
        planes.append([e1, e2])
    roots = np.array(roots).reshape(-1, r)
    if roots.size:
        roots[np.abs(roots) < 1e-13 * np.abs(roots).max()] = 0.0   # rounding noise
    planes = np.array(planes).reshape(-1, 2, d)

    order = sorted(range(len(roots)), key=lambda m: tuple(-np.round(roots[m], 9)))
    roots, planes = roots[order], planes[order]

    for a in roots:
        if np.abs(roots + a).max(axis=1).min() >= cluster_tol:
            raise MultiplicityError(f"root {a} has no negative partner")
    for i, a in enumerate(roots):
        for j, b in enumerate(roots):
            k = (a @ b) / (b @ b)
            if abs(abs(k) - 1) > 1e-6 and np.abs(a - k * b).max() < cluster_tol:
                raise MultiplicityError("a root is a non-trivial multiple of another")
    if d != r + len(roots):
        raise MultiplicityError(f"dim {d} != rank {r} + #roots {len(roots)}")
    return RootSystem(t, roots, planes)


def is_regular(rs: RootSystem, X) -> bool:
    X = np.asarray(X, dtype=float)
    vals = rs.evaluate(X)
    bound = REGULAR_TOL * np.linalg.norm(rs.roots, axis=1) * np.linalg.norm(X)
    return bool(np.all(np.abs(vals) > bound)) and np.any(X)


def _vanishing(rs, X):
    vals = rs.evaluate(X)
    bound = REGULAR_TOL * np.linalg.norm(rs.roots, axis=1) * np.linalg.norm(X)
    return [int(m) for m in np.flatnonzero(np.abs(vals) <= bound)]


def choose_positive(rs: RootSystem, X="auto", seed: int = 0, tries: int = 8) -> RootSystem:
    """Positive roots {alpha : alpha(X) > 0}; simple roots are filled in as well.

    ``"auto"`` uses the Cartan subalgebra's preferred element when it is regular,
    otherwise random elements of t.
    """
    if isinstance(X, str):
        if X != "auto":
            raise ValueError("X must be an element of t or 'auto'")
        candidates = []
        if rs.cartan.preferred is not None:
            candidates.append(rs.cartan.preferred)
        rng = np.random.default_rng(seed)
        candidates += [rng.normal(size=rs.rank) for _ in range(tries)]
        X = next((c for c in candidates if is_regular(rs, c)), None)
        if X is None:
            raise RegularityError("no regular element found")
    X = np.asarray(X, dtype=float)
    if not is_regular(rs, X):
        raise RegularityError("X lies on a wall", _vanishing(rs, X))
    positive = tuple(int(m) for m in np.flatnonzero(rs.evaluate(X) > 0))
    out = replace(rs, positive=positive, simple=None, regular_element=X)
    return replace(out, simple=tuple(simple_roots(out)))


def simple_roots(rs: RootSystem, tol: float = 1e-8) -> list[int]:
    """Positive roots that are not a sum of two positive roots."""
    if rs.positive is None:
        raise PreconditionError("choose positive roots first")
    P = list(rs.positive)
    vecs = rs.roots[P]
    sums = (vecs[:, None, :] + vecs[None, :, :]).reshape(-1, rs.rank)
    simple = []
    for m, a in zip(P, vecs):
        if sums.size == 0 or np.abs(sums - a).max(axis=1).min() >= tol:
            simple.append(m)
    simple.sort(key=lambda m: tuple(-np.round(rs.roots[m], 9)))
    if len(simple) != rs.rank:
        raise SimpleRootError(f"found {len(simple)} simple roots, rank is {rs.rank}")
    S = rs.roots[simple]
    if np.linalg.matrix_rank(S, tol=1e-8) != rs.rank:
        raise SimpleRootError("simple roots are not a basis")
    coeffs = np.linalg.solve(S.T, vecs.T).T
    if (np.abs(coeffs @ S - vecs).max() > 1e-6
            or np.abs(coeffs - np.round(coeffs)).max() > 1e-6
            or coeffs.min() < -1e-6):
        raise SimpleRootError("a positive root is not a non-negative integer combination")
    return simple


def coroot(rs: RootSystem, m: int) -> np.ndarray:
    a = rs.roots[m]
    return 2.0 * a / (a @ a)


def stabilizer_algebra(rs: RootSystem, X) -> tuple[int, np.ndarray]:
    """g_X = t + sum of V_alpha with alpha(X) = 0; returns (dim, basis rows in L-coordinates)."""
    X = np.asarray(X, dtype=float)
    vals = rs.evaluate(X)
    scale = WALL_TOL * max(1.0, np.linalg.norm(X))
    rows = list(rs.cartan.basis)
    for m in rs.pair_representatives:
        if abs(vals[m]) <= scale * np.linalg.norm(rs.roots[m]):
            rows.extend(rs.planes[m])
    basis = np.array(rows).reshape(len(rows), rs.algebra.dim)
    return len(rows), basis


def root_system(L: LieAlgebra, seed: int = 0, cluster_tol: float = CLUSTER_TOL) -> RootSystem:
    """Full pipeline: standard (or centralizer) Cartan, roots, positive and simple roots."""
    require_compact(L)
    try:
        t = standard_cartan(L)
    except ConstructionError:
        t = centralizer_cartan(L, seed=seed)
    rs = root_decomposition(L, t, seed=seed, cluster_tol=cluster_tol)
    return choose_positive(rs, "auto", seed=seed)


def root_system_to_json(rs: RootSystem) -> dict:
    return {
        "rank": rs.rank,
        "metric": "trace",
        "roots": rs.roots.tolist(),
        "positive": list(rs.positive or ()),
        "simple": list(rs.simple or ()),
        "coroots": rs.coroots.tolist(),
        "regular_element": None if rs.regular_element is None else rs.regular_element.tolist(),
    }
