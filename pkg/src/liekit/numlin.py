"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays (``complex128`` unless a real input is
kept real on purpose).  All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BranchError, DimensionError, SingularityError, SymmetryError

__all__ = [
    "HermitianEigen",
    "as_square",
    "commutator",
    "mat_exp",
    "mat_log_principal",
    "herm_eig",
    "frobenius_real_inner",
]


def as_square(A, name: str = "A") -> np.ndarray:
    """Validate that A is a finite square 2-D array and return it as ndarray."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DimensionError(f"{name} has non-finite entries")
    return A


def _same_size(A, B):
    A = as_square(A, "A")
    B = as_square(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"size mismatch: {A.shape} vs {B.shape}")
    return A, B


def commutator(A, B) -> np.ndarray:
    """Return AB - BA."""
    A, B = _same_size(A, B)
    return A @ B - B @ A


def frobenius_real_inner(A, B) -> float:
    """Re tr(A B*), the real Frobenius inner product."""
    A, B = _same_size(A, B)
    return float(np.real(np.vdot(B, A)))


# Pade coefficients and 1-norm thresholds for scaling and squaring
# (Higham, SIAM J. Matrix Anal. Appl. 26, 2005).
_PADE = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
         960960.0, 16380.0, 182.0, 1.0),
}
_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}


def _pade_uv(A, m):
    b = _PADE[m]
    n = A.shape[0]
    ident = np.eye(n, dtype=A.dtype)
    if m == 13:
        A2 = A @ A
        A4 = A2 @ A2
        A6 = A4 @ A2
        U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
                 + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
        V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
             + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident)
        return U, V
    powers = [ident, A @ A]
    while len(powers) < (m + 1) // 2:
        powers.append(powers[-1] @ powers[1])
    U_inner = sum(b[2 * k + 1] * powers[k] for k in range(len(powers)))
    V = sum(b[2 * k] * powers[k] for k in range(len(powers)))
    return A @ U_inner, V


def mat_exp(A) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a degree <= 13 Pade kernel.

    Real input stays real.  Accuracy target is 1e-12 relative for ||A|| <= 10.
    """
    A = as_square(A)
    if not np.iscomplexobj(A):
        A = A.astype(float)
    else:
        A = A.astype(complex)
    n = A.shape[0]
    if n == 0:
        return A.copy()
    norm1 = np.linalg.norm(A, 1)
    for m in (3, 5, 7, 9):
        if norm1 <= _THETA[m]:
            U, V = _pade_uv(A, m)
            return np.linalg.solve(V - U, V + U)
    s = max(0, int(np.ceil(np.log2(norm1 / _THETA[13]))))
    As = A / (2.0 ** s)
    U, V = _pade_uv(As, 13)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        R = R @ R
    return R


def mat_log_principal(A) -> np.ndarray:
    """Principal matrix logarithm.

    Raises SingularityError for (numerically) singular A and BranchError when
    an eigenvalue sits on the closed negative real axis.
    """
    A = as_square(A).astype(complex)
    n = A.shape[0]
    if n == 0:
        return A.copy()
    scale = max(np.linalg.norm(A, 2), 1e-300)
    eigs = np.linalg.eigvals(A)
    if np.min(np.abs(eigs)) <= 1e-14 * scale:
        raise SingularityError("matrix is singular; logarithm undefined")
    on_cut = (eigs.real < 0) & (np.abs(eigs.imag) <= 1e-12 * np.abs(eigs))
    if np.any(on_cut):
        raise BranchError(f"eigenvalue(s) on the branch cut: {eigs[on_cut]}")
    X = scipy.linalg.logm(A)
    X = np.asarray(X, dtype=complex)
    resid = np.linalg.norm(mat_exp(X) - A) / max(np.linalg.norm(A), 1.0)
    if resid > 1e-10:
        raise BranchError(f"logarithm round trip failed (residual {resid:.3e})")
    return X


@dataclass(frozen=True)
class HermitianEigen:
    eigenvalues: np.ndarray   # ascending, real
    eigenvectors: np.ndarray  # unitary, eigenvectors in columns


def _round_robin(n):
    """Pairings for a parallel Jacobi sweep: n-1 rounds of n/2 disjoint pairs (n even)."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        pairs = [(players[i], players[n - 1 - i]) for i in range(n // 2)]
        rounds.append(pairs)
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def herm_eig(H, max_sweeps: int = 60) -> HermitianEigen:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Rotations within one round act on disjoint index pairs, so each round is
    applied to all pairs at once.
    """
    H = as_square(H, "H").astype(complex)
    n = H.shape[0]
    hnorm = np.linalg.norm(H)
    if np.linalg.norm(H - H.conj().T) > 1e-10 * (1.0 + hnorm):
        raise SymmetryError("matrix is not Hermitian")
    H = 0.5 * (H + H.conj().T)
    V = np.eye(n, dtype=complex)
    if n <= 1:
        return HermitianEigen(np.real(np.diag(H)).copy(), V)

    m = n + (n % 2)
    rounds = []
    for pairs in _round_robin(m):
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            P = np.array([p for p, _ in pairs])
            Q = np.array([q for _, q in pairs])
            rounds.append((P, Q))

    tiny = np.finfo(float).tiny
    prev_off = np.inf
    for _ in range(max_sweeps):
        off = np.linalg.norm(H - np.diag(np.diag(H)))
        # stop at the rounding floor, or when a sweep no longer helps
        if off <= 1e-15 * max(hnorm, tiny) or off >= 0.5 * prev_off and off <= 1e-12 * hnorm:
            break
        prev_off = off
        for P, Q in rounds:
            b = H[P, Q]
            absb = np.abs(b)
            active = absb > 1e-300
            if not np.any(active):
                continue
            a = H[P, P].real
            d = H[Q, Q].real
            phase = np.where(active, b / np.where(active, absb, 1.0), 1.0)
            tau = np.where(active, (d - a) / (2.0 * np.where(active, absb, 1.0)), 0.0)
            sgn = np.where(tau >= 0, 1.0, -1.0)
            t = np.where(active, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # U restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]]
            upp = c
            upq = s
            uqp = -s * np.conj(phase)
            uqq = c * np.conj(phase)

            Hp = H[:, P].copy()
            Hq = H[:, Q].copy()
            H[:, P] = Hp * upp + Hq * uqp
            H[:, Q] = Hp * upq + Hq * uqq
            Hp = H[P, :].copy()
            Hq = H[Q, :].copy()
            H[P, :] = np.conj(upp)[:, None] * Hp + np.conj(uqp)[:, None] * Hq
            H[Q, :] = np.conj(upq)[:, None] * Hp + np.conj(uqq)[:, None] * Hq
            H[P, Q] = 0.0
            H[Q, P] = 0.0

            Vp = V[:, P].copy()
            Vq = V[:, Q].copy()
            V[:, P] = Vp * upp + Vq * uqp
            V[:, Q] = Vp * upq + Vq * uqq
        H = 0.5 * (H + H.conj().T)

    w = np.real(np.diag(H))
    order = np.argsort(w, kind="stable")
    return HermitianEigen(w[order], V[:, order])
