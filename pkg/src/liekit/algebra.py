"""Matrix Lie algebras: classical families, structure constants, Killing form,
semisimplicity tests, centre and the splitting into simple ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import (
    ClosureError,
    CompactTypeError,
    ConstructionError,
    DimensionError,
    MembershipError,
    PreconditionError,
)
from .numlin import herm_eig

__all__ = [
    "FAMILIES",
    "LieAlgebra",
    "BilinearFormMatrix",
    "build_classical",
    "diagonal_algebra",
    "direct_sum",
    "structure_constants",
    "killing_form",
    "is_semisimple",
    "is_compact_type",
    "center",
    "split_simple_ideals",
    "null_space",
    "algebra_to_json",
]

FAMILIES = ("gl_r", "gl_c", "sl_r", "sl_c", "so", "su", "u", "sp")

RANK_TOL = 1e-9

# Trace form is Re tr(XY*) / scale.  For so(n) and sp(n) each Cartan angle shows
# up twice in the defining representation, so scale 2 makes the angle
# coordinates orthonormal.
_TRACE_SCALE = {"so": 2.0, "sp": 2.0}


def null_space(A, rtol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of ker A, rank decided at rtol * sigma_max."""
    A = np.atleast_2d(np.asarray(A))
    ncols = A.shape[1]
    if ncols == 0:
        return np.zeros((0, 0))
    if A.size == 0 or not np.any(A):
        return np.eye(ncols)
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    rank = int(np.sum(s > rtol * s[0]))
    return vh[rank:].conj().T


def _range_basis(A, rtol: float = RANK_TOL) -> np.ndarray:
    if A.size == 0 or not np.any(A):
        return np.zeros((A.shape[0], 0))
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > rtol * s[0]))
    return u[:, :rank]


def _flatten(basis: np.ndarray) -> np.ndarray:
    """Real coordinate rows (d, 2 n^2) for a stack of complex matrices."""
    d = basis.shape[0]
    flat = basis.reshape(d, basis.shape[1] * basis.shape[2])
    return np.concatenate([flat.real, flat.imag], axis=1)


@dataclass(frozen=True)
class BilinearFormMatrix:
    entries: np.ndarray
    signature: tuple[int, int, int]  # (n_pos, n_zero, n_neg)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _signature(S: np.ndarray, rtol: float = RANK_TOL) -> tuple[int, int, int]:
    if S.shape[0] == 0:
        return (0, 0, 0)
    w = np.linalg.eigvalsh(S)
    scale = np.max(np.abs(w))
    if scale == 0:
        return (0, len(w), 0)
    tol = rtol * scale
    return (int(np.sum(w > tol)), int(np.sum(np.abs(w) <= tol)), int(np.sum(w < -tol)))


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """A real Lie algebra spanned by complex matrices under the commutator.

    ``basis`` has shape (d, n, n).  ``structure_constants[i, j, k]`` is the
    coefficient of X_k in [X_i, X_j].  ``trace_gram`` is the Gram matrix of the
    trace form used as the default bi-invariant metric.
    """

    name: str
    basis: np.ndarray
    structure_constants: np.ndarray
    trace_gram: np.ndarray
    family: str | None = None
    n: int | None = None
    blocks: tuple = ()
    parent_coords: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_matrices(cls, name, matrices, *, trace_scale=1.0, trace_gram=None,
                      family=None, n=None, blocks=(), parent_coords=None,
                      ambient_size=None) -> "LieAlgebra":
        if len(matrices) == 0:
            if ambient_size is None:
                raise ConstructionError("ambient size needed for a zero-dimensional algebra")
            basis = np.zeros((0, ambient_size, ambient_size), dtype=complex)
        else:
            basis = np.array(matrices, dtype=complex)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise DimensionError(f"basis must be a stack of square matrices, got {basis.shape}")
        frob = _flatten(basis) @ _flatten(basis).T
        d = basis.shape[0]
        if d:
            s = np.linalg.svd(frob, compute_uv=False)
            if np.sum(s > RANK_TOL * s[0]) < d:
                raise ConstructionError(f"{name}: basis matrices are linearly dependent")
        C = _compute_structure_constants(basis, frob)
        if trace_gram is None:
            trace_gram = frob / trace_scale
        return cls(name, basis, C, np.asarray(trace_gram, dtype=float), family, n,
                   tuple(blocks), parent_coords)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient_size(self) -> int:
        return self.basis.shape[1]

    @cached_property
    def frobenius_gram(self) -> np.ndarray:
        flat = _flatten(self.basis)
        return flat @ flat.T

    @cached_property
    def _frob_cho(self):
        return scipy.linalg.cho_factor(self.frobenius_gram)

    @cached_property
    def ad_matrices(self) -> np.ndarray:
        """ad(X_i) as d x d matrices: ad[i][k, j] = C[i, j, k]."""
        return np.ascontiguousarray(np.transpose(self.structure_constants, (0, 2, 1)))

    @cached_property
    def killing(self) -> np.ndarray:
        C = self.structure_constants
        B = np.einsum("ilk,jkl->ij", C, C)
        return 0.5 * (B + B.T)

    def matrix(self, x) -> np.ndarray:
        """Matrix of the element with coordinates x."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionError(f"expected {self.dim} coordinates, got shape {x.shape}")
        return np.tensordot(x, self.basis, axes=1)

    def coords(self, M, tol: float = 1e-9) -> np.ndarray:
        """Coordinates of a matrix in the basis; MembershipError if it is not in the span."""
        M = np.asarray(M, dtype=complex)
        if M.shape != (self.ambient_size, self.ambient_size):
            raise DimensionError(f"expected {self.ambient_size}x{self.ambient_size} matrix")
        if self.dim == 0:
            x = np.zeros(0)
        else:
            v = np.concatenate([M.real.ravel(), M.imag.ravel()])
            x = scipy.linalg.cho_solve(self._frob_cho, _flatten(self.basis) @ v)
        resid = np.linalg.norm(M - self.matrix(x)) if self.dim else np.linalg.norm(M)
        if resid > tol * (1.0 + np.linalg.norm(M)):
            raise MembershipError(f"matrix is not in {self.name} (residual {resid:.3e})")
        return x

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x, float), np.asarray(y, float),
                         self.structure_constants)

    def ad(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=float), self.ad_matrices, axes=1)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim}, ambient={self.ambient_size})"


def _compute_structure_constants(basis, frob, tol=1e-10):
    d = basis.shape[0]
    C = np.zeros((d, d, d))
    if d == 0:
        return C
    prod = np.matmul(basis[:, None], basis[None, :])
    iu, ju = np.triu_indices(d, k=1)
    if len(iu) == 0:
        return C
    brackets = prod[iu, ju] - prod[ju, iu]
    rhs = _flatten(brackets) @ _flatten(basis).T
    coeffs = scipy.linalg.solve(frob, rhs.T, assume_a="pos").T
    recon = np.tensordot(coeffs, basis, axes=1)
    resid = np.linalg.norm((brackets - recon).reshape(len(iu), -1), axis=1)
    scale = 1.0 + np.linalg.norm(brackets.reshape(len(iu), -1), axis=1)
    worst = int(np.argmax(resid / scale))
    if resid[worst] > tol * scale[worst]:
        pair = (int(iu[worst]), int(ju[worst]))
        raise ClosureError(f"basis not closed under the bracket: worst pair {pair}, "
                           f"residual {resid[worst]:.3e}", pair, float(resid[worst]))
    # tiny coefficients are rounding noise
    coeffs[np.abs(coeffs) < 1e-14] = 0.0
    C[iu, ju] = coeffs
    C[ju, iu] = -coeffs
    return C


def _unit(n, i, j, value=1.0):
    E = np.zeros((n, n), dtype=complex)
    E[i, j] = value
    return E


def _classical_basis(family, n):
    E = lambda i, j: _unit(n, i, j)  # noqa: E731
    off = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if family == "gl_r":
        return [E(i, j) for i in range(n) for j in range(n)]
    if family == "gl_c":
        real = [E(i, j) for i in range(n) for j in range(n)]
        return real + [1j * X for X in real]
    if family in ("sl_r", "sl_c"):
        real = [E(i, j) for i in range(n) for j in range(n) if i != j]
        real += [E(k, k) - E(k + 1, k + 1) for k in range(n - 1)]
        return real if family == "sl_r" else real + [1j * X for X in real]
    if family == "so":
        return [E(i, j) - E(j, i) for i, j in off]
    skew = [E(i, j) - E(j, i) for i, j in off] + [1j * (E(i, j) + E(j, i)) for i, j in off]
    if family == "u":
        return skew + [1j * E(k, k) for k in range(n)]
    if family == "su":
        return skew + [1j * (E(k, k) - E(k + 1, k + 1)) for k in range(n - 1)]
    if family == "sp":
        # quaternionic A + B j  ->  [[A, -conj(B)], [B, conj(A)]],  A in u(n), B = B^T
        out = []
        z = np.zeros((n, n), dtype=complex)
        for A in _classical_basis("u", n):
            out.append(np.block([[A, z], [z, A.conj()]]))
        sym = [E(i, j) + E(j, i) for i, j in off] + [E(k, k) for k in range(n)]
        for S in sym:
            for B in (S, 1j * S):
                out.append(np.block([[z, -B.conj()], [B, z]]))
        return out
    raise ConstructionError(f"unknown family {family!r}")


def build_classical(family: str, n: int) -> LieAlgebra:
    """Standard basis of a classical matrix Lie algebra.

    sp(n) is realised inside 2n x 2n complex matrices as the image of the
    quaternionic skew-Hermitian matrices.
    """
    if family not in FAMILIES:
        raise ConstructionError(f"unsupported family {family!r}")
    n = int(n)
    min_n = 2 if family in ("sl_r", "sl_c", "su") else 1
    if n < min_n:
        raise ConstructionError(f"{family}({n}) needs n >= {min_n}")
    size = 2 * n if family == "sp" else n
    mats = _classical_basis(family, n)
    return LieAlgebra.from_matrices(
        f"{family}({n})", mats, trace_scale=_TRACE_SCALE.get(family, 1.0),
        family=family, n=n, blocks=((family, n, 0),), ambient_size=size)


def diagonal_algebra(n: int, imaginary: bool = True) -> LieAlgebra:
    """Abelian algebra of diagonal n x n matrices (i*real diagonal when imaginary)."""
    mats = [(1j if imaginary else 1.0) * _unit(n, k, k) for k in range(n)]
    return LieAlgebra.from_matrices(f"{'t' if imaginary else 'd'}({n})", mats,
                                    ambient_size=n)


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    """Block-diagonal direct sum; brackets across the two blocks vanish."""
    na, nb = A.ambient_size, B.ambient_size
    n = na + nb
    mats = []
    for X in A.basis:
        M = np.zeros((n, n), dtype=complex)
        M[:na, :na] = X
        mats.append(M)
    for X in B.basis:
        M = np.zeros((n, n), dtype=complex)
        M[na:, na:] = X
        mats.append(M)
    da, db = A.dim, B.dim
    d = da + db
    basis = np.array(mats, dtype=complex).reshape(d, n, n)
    C = np.zeros((d, d, d))
    C[:da, :da, :da] = A.structure_constants
    C[da:, da:, da:] = B.structure_constants
    gram = scipy.linalg.block_diag(A.trace_gram, B.trace_gram).reshape(d, d)
    blocks = tuple(A.blocks) + tuple((f, m, off + na) for f, m, off in B.blocks)
    return LieAlgebra(f"{A.name}+{B.name}", basis, C, gram, None, None, blocks)


def structure_constants(L: LieAlgebra) -> np.ndarray:
    return L.structure_constants


def killing_form(L: LieAlgebra) -> BilinearFormMatrix:
    """B(X_i, X_j) = tr(ad X_i ad X_j), from the structure constants."""
    B = L.killing
    return BilinearFormMatrix(B, _signature(B))


def is_semisimple(L: LieAlgebra) -> bool:
    """Killing form non-degenerate.  The zero algebra counts as semisimple."""
    if L.dim == 0:
        return True
    sig = killing_form(L).signature
    return sig[1] == 0 and (sig[0] + sig[2]) == L.dim


def is_compact_type(L: LieAlgebra) -> bool:
    if not is_semisimple(L):
        raise PreconditionError(f"{L.name} is not semisimple")
    if L.dim == 0:
        return True
    w = np.linalg.eigvalsh(L.killing)
    return bool(np.all(w < -RANK_TOL * np.max(np.abs(w))))


def require_compact(L: LieAlgebra) -> None:
    try:
        ok = is_compact_type(L)
    except PreconditionError as exc:
        raise CompactTypeError(str(exc)) from exc
    if not ok:
        raise CompactTypeError(f"{L.name}: Killing form is not negative-definite")


def center(L: LieAlgebra) -> np.ndarray:
    """Coordinates (rows) of a Frobenius-orthonormal basis of the centre."""
    d = L.dim
    if d == 0:
        return np.zeros((0, 0))
    # [X, X_j] = sum_i x_i C[i, j, :] must vanish for every j
    K = np.transpose(L.structure_constants, (1, 2, 0)).reshape(d * d, d)
    Z = null_space(K)
    if Z.shape[1] == 0:
        return np.zeros((0, d))
    # re-orthonormalise with respect to Re tr(XY*)
    G = Z.T @ L.frobenius_gram @ Z
    w, U = np.linalg.eigh(G)
    return (Z @ U / np.sqrt(w)).T


def _ideal_closure(ad, vectors):
    """Smallest ad-invariant subspace containing the columns of ``vectors``.

    Only the directions added in the previous pass are pushed through ad again.
    """
    d = ad.shape[1]
    Q = _range_basis(vectors)
    frontier = Q
    for _ in range(d + 1):
        if frontier.shape[1] == 0 or Q.shape[1] == d:
            return Q
        images = np.einsum("ikj,jm->kim", ad, frontier).reshape(d, -1)
        scale = np.linalg.norm(images)
        if scale == 0:
            return Q
        R = images - Q @ (Q.T @ images)
        R -= Q @ (Q.T @ R)
        w, U = np.linalg.eigh(R @ R.T)
        # eigenvalues are squared singular values; 1e-12 keeps clear of rounding noise
        new = U[:, w > 1e-12 * scale * scale]
        if new.shape[1]:
            new -= Q @ (Q.T @ new)
            new, _ = np.linalg.qr(new)
            Q = np.hstack([Q, new])
        frontier = new
    raise RuntimeError("ideal closure did not stabilise")


def _is_minimal(ad, Q):
    k = Q.shape[1]
    return all(_ideal_closure(ad, Q[:, [m]]).shape[1] == k for m in range(k))


def split_simple_ideals(L: LieAlgebra, seed: int = 0, max_tries: int = 8) -> list[LieAlgebra]:
    """Split a compact semisimple algebra into its simple ideals.

    A seed vector is taken from a single eigenplane of ad(X)^2 for random X, so
    it lies in one simple ideal; the ideal it generates is then split off and
    the procedure repeats on the Killing-orthogonal complement.
    """
    require_compact(L)
    rng = np.random.default_rng(seed)
    ad = L.ad_matrices
    negB = -L.killing
    chol = np.linalg.cholesky(negB)       # -B = R R^T
    d = L.dim
    remaining = np.eye(d)                  # columns span the unsplit ideal
    ideals = []
    while remaining.shape[1] > 0:
        found = None
        for _ in range(max_tries):
            x = remaining @ rng.normal(size=remaining.shape[1])
            A = L.ad(x)
            # ad(x)^2 in -B orthonormal coordinates is symmetric
            Ahat = chol.T @ A @ np.linalg.inv(chol.T)
            S = Ahat @ Ahat
            S = 0.5 * (S + S.T)
            eig = herm_eig(S)
            v = np.linalg.solve(chol.T, eig.eigenvectors[:, 0].real)
            if np.linalg.norm(v) == 0:
                v = np.linalg.solve(chol.T, eig.eigenvectors[:, 0].imag)
            Q = _ideal_closure(ad, v[:, None])
            if _is_minimal(ad, Q):
                found = Q
                break
        if found is None:
            raise RuntimeError("could not isolate a simple ideal")
        ideals.append(found)
        # Killing-orthogonal complement of the new ideal inside the remainder
        M = found.T @ L.killing @ remaining
        Z = null_space(M)
        remaining = _range_basis(remaining @ Z) if Z.size else np.zeros((d, 0))

    def sort_key(Q):
        lead = np.argmax(np.abs(Q).max(axis=1) > 1e-8)
        return (Q.shape[1], lead)

    ideals.sort(key=sort_key)
    out = []
    for k, Q in enumerate(ideals):
        mats = np.tensordot(Q.T, L.basis, axes=1)
        gram = Q.T @ L.trace_gram @ Q
        out.append(LieAlgebra.from_matrices(f"{L.name}/ideal{k}", list(mats),
                                            trace_gram=gram, parent_coords=Q))
    return out


def _complex_pairs(M):
    return [[float(z.real), float(z.imag)] for z in np.asarray(M).ravel()]


def algebra_to_json(L: LieAlgebra) -> dict:
    C = L.structure_constants
    triplets = [[int(i), int(j), int(k), float(C[i, j, k])]
                for i, j, k in zip(*np.nonzero(C)) if i < j]
    return {
        "name": L.name,
        "ambient_size": L.ambient_size,
        "dim": L.dim,
        "basis": [_complex_pairs(X) for X in L.basis],
        "structure_constants": triplets,
        "killing_signature": list(killing_form(L).signature),
    }
