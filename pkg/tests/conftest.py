from __future__ import annotations

import itertools

import numpy as np
import pytest

from liekit.algebra import build_classical
from liekit.cartan import standard_cartan

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def theta_functionals(L, family, n):
    """Rows F[i] with theta_i(H) = F[i] . h for h in standard Cartan coordinates.

    Read straight off the torus matrices, independent of any eigen-solver.
    """
    t = standard_cartan(L)
    mats = [L.matrix(h) for h in t.basis]
    if family in ("su", "u"):
        return np.array([[M[i, i].imag for M in mats] for i in range(n)])
    if family == "so":
        return np.array([[M[2 * i, 2 * i + 1].real for M in mats] for i in range(n // 2)])
    if family == "sp":
        return np.array([[M[i, i].imag for M in mats] for i in range(n)])
    raise ValueError(family)


def analytic_roots_theta(family, n):
    """Textbook root list as integer vectors in theta coordinates."""
    out = []
    if family == "su":
        for i, j in itertools.permutations(range(n), 2):
            v = np.zeros(n)
            v[i], v[j] = 1, -1
            out.append(v)
        return np.array(out)
    k = n // 2 if family == "so" else n
    for i, j in itertools.combinations(range(k), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = np.zeros(k)
            v[i], v[j] = si, sj
            out.append(v)
    for i in range(k):
        for s in (1, -1):
            v = np.zeros(k)
            if family == "so" and n % 2 == 1:
                v[i] = s
                out.append(v)
            elif family == "sp":
                v[i] = 2 * s
                out.append(v)
    return np.array(out)


def analytic_roots(family, n):
    """Analytic roots in standard Cartan coordinates: a with a . h = sum c_i theta_i(h)."""
    L = build_classical(family, n)
    F = theta_functionals(L, family, n)
    return analytic_roots_theta(family, n) @ F


def match_multiset(A, B, tol):
    """True when the rows of A and B agree as multisets within tol (max norm)."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        return False
    used = np.zeros(len(B), dtype=bool)
    for a in A:
        d = np.abs(B - a).max(axis=1)
        d[used] = np.inf
        k = int(np.argmin(d))
        if d[k] >= tol:
            return False
        used[k] = True
    return True


def jacobi_residual(L):
    C = L.structure_constants
    if C.size == 0:
        return 0.0
    J = np.einsum("ijm,mkl->ijkl", C, C)
    J = J + np.einsum("ijkl->jkil", J) + np.einsum("ijkl->kijl", J)
    return float(np.abs(J).max())
