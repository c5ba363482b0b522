"""Weyl group generated by simple reflections, chambers and the fundamental domain."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .cartan import RootSystem, coroot, is_regular
from .errors import GenerationError, PreconditionError, RegularityError

__all__ = [
    "WeylElement",
    "WeylGroup",
    "reflection",
    "generate",
    "chamber_of",
    "to_fundamental_domain",
    "weyl_orbit",
    "weyl_group_to_json",
]

MAX_ORDER = 2_000_000
GRID = 1e-7


@dataclass(frozen=True)
class WeylElement:
    """``word`` (i1, ..., ik) means S_i1 S_i2 ... S_ik in simple-root indices."""

    matrix: np.ndarray
    word: tuple

    def __call__(self, X):
        return self.matrix @ np.asarray(X, dtype=float)


@dataclass(frozen=True)
class WeylGroup:
    generators: tuple          # root-system indices of the simple roots
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)


def reflection(rs: RootSystem, m: int) -> np.ndarray:
    """phi_alpha(Z) = Z - alpha(Z) alpha_check as an r x r matrix."""
    a = rs.roots[m]
    return np.eye(rs.rank) - np.outer(coroot(rs, m), a)


def _key(M):
    return tuple(np.round(M.ravel() / GRID).astype(np.int64))


def generate(rs: RootSystem, max_order: int = MAX_ORDER) -> WeylGroup:
    """Breadth-first closure of the simple reflections; words are shortlex minimal."""
    if rs.simple is None:
        raise PreconditionError("choose positive roots first")
    gens = [reflection(rs, m) for m in rs.simple]
    ident = np.eye(rs.rank)
    seen = {_key(ident)}
    elements = [WeylElement(ident, ())]
    queue = deque(elements)
    while queue:
        w = queue.popleft()
        for g, S in enumerate(gens):
            M = S @ w.matrix
            k = _key(M)
            if k in seen:
                continue
            seen.add(k)
            e = WeylElement(M, (g,) + w.word)
            elements.append(e)
            queue.append(e)
            if len(elements) > max_order:
                raise GenerationError(f"Weyl group exceeds {max_order} elements")
    return WeylGroup(tuple(rs.simple), tuple(elements))


def chamber_of(rs: RootSystem, X) -> tuple:
    """Sign pattern of alpha(X) over the positive roots.  X must be regular."""
    if rs.positive is None:
        raise PreconditionError("choose positive roots first")
    if not is_regular(rs, X):
        raise RegularityError("X lies on a wall")
    vals = rs.evaluate(X)[list(rs.positive)]
    return tuple(int(s) for s in np.sign(vals))


def to_fundamental_domain(rs: RootSystem, X, tol: float = 1e-10) -> tuple[np.ndarray, WeylElement]:
    """Reflect X into the closed fundamental chamber {alpha_i(X) >= 0}.

    Returns (X0, w) with X0 = w(X).  Each step reflects in a simple root that is
    negative on the current point, which strictly decreases the number of
    negative positive roots, so the walk ends after at most |R+| steps.
    """
    if rs.simple is None:
        raise PreconditionError("choose positive roots first")
    X = np.asarray(X, dtype=float).copy()
    M = np.eye(rs.rank)
    word: tuple = ()
    simple = list(rs.simple)
    scale = tol * max(1.0, np.linalg.norm(X))
    for _ in range(len(rs.positive) + 1):
        vals = rs.roots[simple] @ X
        bad = np.flatnonzero(vals < -scale)
        if bad.size == 0:
            return X, WeylElement(M, word)
        g = int(bad[0])
        S = reflection(rs, simple[g])
        X = S @ X
        M = S @ M
        word = (g,) + word
    raise RuntimeError("descent did not terminate")


def weyl_orbit(rs: RootSystem, X, group: WeylGroup | None = None) -> np.ndarray:
    """Distinct points w(X), rows."""
    group = group or generate(rs)
    images = np.array([w(X) for w in group.elements])
    tol = GRID * max(1.0, np.linalg.norm(X))
    keep = []
    for Y in images:
        # tolerance match, not a rounding grid, so near-boundary values do not split
        if not keep or np.abs(np.array(keep) - Y).max(axis=1).min() > tol:
            keep.append(Y)
    return np.array(keep)


def weyl_group_to_json(group: WeylGroup) -> dict:
    return {
        "order": group.order,
        "generators": list(group.generators),
        "elements": [{"matrix": e.matrix.tolist(), "word": list(e.word)} for e in group.elements],
    }
