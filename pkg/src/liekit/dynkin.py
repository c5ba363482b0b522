"""Cartan matrices, Dynkin diagrams, classification and ASCII rendering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cartan import RootSystem
from .errors import CrystallographyError, PreconditionError

__all__ = [
    "Edge",
    "DynkinDiagram",
    "cartan_matrix",
    "build_diagram",
    "classify",
    "render_ascii",
    "dynkin_diagram",
    "diagram_to_json",
]

ROUND_TOL = 1e-6
LENGTH_RTOL = 1e-8
TOKENS = {1: " - ", 2: " => ", 3: " ≡> "}
BACK_TOKENS = {2: " <= ", 3: " <≡ "}


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    multiplicity: int
    arrow_to: int | None


@dataclass(frozen=True)
class DynkinDiagram:
    lengths_sq: tuple
    edges: tuple
    components: tuple = ()     # ((node indices), label)

    @property
    def rank(self) -> int:
        return len(self.lengths_sq)

    def neighbors(self, v):
        out = []
        for e in self.edges:
            if e.i == v:
                out.append(e.j)
            elif e.j == v:
                out.append(e.i)
        return sorted(out)

    def edge(self, a, b) -> Edge | None:
        for e in self.edges:
            if {e.i, e.j} == {a, b}:
                return e
        return None


def cartan_matrix(rs_or_simple) -> np.ndarray:
    """n_ij = 2<a_i, a_j>/<a_j, a_j> as an integer matrix."""
    if isinstance(rs_or_simple, RootSystem):
        S = rs_or_simple.simple_vectors
    else:
        S = np.asarray(rs_or_simple, dtype=float)
    if S.ndim != 2 or len(S) == 0:
        raise PreconditionError("need at least one simple root")
    gram = S @ S.T
    raw = 2.0 * gram / np.diag(gram)[None, :]
    cm = np.round(raw)
    if np.abs(raw - cm).max() > ROUND_TOL:
        raise CrystallographyError("Cartan integers are not integral")
    cm = cm.astype(int)
    off = cm[~np.eye(len(cm), dtype=bool)]
    if np.any(np.diag(cm) != 2) or np.any((off > 0) | (off < -3)):
        raise CrystallographyError(f"invalid Cartan matrix {cm.tolist()}")
    if np.any((cm == 0) != (cm.T == 0)):
        raise CrystallographyError("Cartan matrix zero pattern is not symmetric")
    return cm


def build_diagram(cm, lengths_sq) -> DynkinDiagram:
    cm = np.asarray(cm, dtype=int)
    lengths = tuple(float(x) for x in lengths_sq)
    edges = []
    r = len(cm)
    for i in range(r):
        for j in range(i + 1, r):
            mult = int(cm[i, j] * cm[j, i])
            if mult == 0:
                continue
            if mult > 3:
                raise CrystallographyError(f"edge multiplicity {mult} between {i} and {j}")
            arrow = None
            if mult > 1:
                li, lj = lengths[i], lengths[j]
                if abs(li - lj) <= LENGTH_RTOL * max(li, lj):
                    raise CrystallographyError("multiple edge between roots of equal length")
                arrow = i if li < lj else j
            edges.append(Edge(i, j, mult, arrow))
    dg = DynkinDiagram(lengths, tuple(edges))
    return DynkinDiagram(lengths, tuple(edges), tuple(zip(_components(dg), classify(dg))))


def _components(dg):
    seen, comps = set(), []
    for s in range(dg.rank):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in dg.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def _comp_edges(dg, comp):
    return [e for e in dg.edges if e.i in comp]


def _arms(dg, comp, center):
    """Lengths and node lists of the paths leaving a branch node."""
    arms = []
    for start in dg.neighbors(center):
        path, prev, v = [start], center, start
        while True:
            nxt = [w for w in dg.neighbors(v) if w != prev]
            if len(nxt) != 1:
                break
            prev, v = v, nxt[0]
            path.append(v)
        arms.append(path)
    return arms


def _path_order(dg, comp, start):
    order, prev = [start], None
    while True:
        nxt = [w for w in dg.neighbors(order[-1]) if w != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def _label(dg, comp) -> str:
    k = len(comp)
    edges = _comp_edges(dg, comp)
    degrees = [len(dg.neighbors(v)) for v in comp]
    if k == 1:
        return "A1"
    if len(edges) != k - 1:
        return "unknown"                       # contains a cycle
    mults = sorted(e.multiplicity for e in edges)
    multi = [e for e in edges if e.multiplicity > 1]
    branch = [v for v in comp if len(dg.neighbors(v)) >= 3]
    if branch:
        if len(branch) != 1 or multi or max(degrees) != 3:
            return "unknown"
        arms = sorted(len(a) for a in _arms(dg, comp, branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            return f"D{k}"
        return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(tuple(arms), "unknown")
    if not multi:
        return f"A{k}"
    if len(multi) > 1:
        return "unknown"
    e = multi[0]
    if e.multiplicity == 3:
        return "G2" if k == 2 else "unknown"
    if k == 2:
        return "B2"
    ends = {v for v in comp if len(dg.neighbors(v)) == 1}
    if e.i not in ends and e.j not in ends:
        return "F4" if k == 4 else "unknown"
    return f"B{k}" if e.arrow_to in ends else f"C{k}"


def classify(dg: DynkinDiagram) -> list[str]:
    """One catalog label per connected component (ordered by smallest node)."""
    return [_label(dg, comp) for comp in _components(dg)]


def _chain_line(dg, order):
    parts = ["o"]
    for a, b in zip(order, order[1:]):
        e = dg.edge(a, b)
        if e.multiplicity == 1:
            parts.append(TOKENS[1])
        elif e.arrow_to == b:
            parts.append(TOKENS[e.multiplicity])
        else:
            parts.append(BACK_TOKENS[e.multiplicity])
        parts.append("o")
    return "".join(parts)


def _render_component(dg, comp, label):
    k = len(comp)
    if k == 1:
        return ["o"]
    branch = [v for v in comp if len(dg.neighbors(v)) >= 3]
    if branch and label != "unknown":
        c = branch[0]
        arms = sorted(_arms(dg, comp, c), key=lambda a: (len(a), a))
        hang, left, right = arms[0], arms[1], arms[2]
        order = left[::-1] + [c] + right
        line = _chain_line(dg, order)
        col = 4 * len(left)
        lines = [line]
        for _ in hang:
            lines.append(" " * col + "|")
            lines.append(" " * col + "o")
        return lines
    ends = [v for v in comp if len(dg.neighbors(v)) == 1]
    if len(ends) != 2 or branch:
        return [" ".join("o" for _ in comp)]
    multi = [e for e in _comp_edges(dg, comp) if e.multiplicity > 1]
    start = min(ends)
    if multi:
        e = multi[0]
        if k == 2 or label == "F4":
            # arrow points forward
            other = [v for v in ends if v != start][0]
            order = _path_order(dg, comp, start)
            if order.index(e.arrow_to) < order.index(e.j if e.arrow_to == e.i else e.i):
                start = other
        else:
            far = [v for v in ends if v not in (e.i, e.j)]
            start = far[0] if far else start
    return [_chain_line(dg, _path_order(dg, comp, start))]


def render_ascii(dg: DynkinDiagram) -> str:
    comps = dg.components or tuple(zip(_components(dg), classify(dg)))
    lines = []
    for comp, label in comps:
        lines.extend(_render_component(dg, comp, label))
    return "\n".join(line.rstrip() for line in lines)


def dynkin_diagram(rs: RootSystem) -> DynkinDiagram:
    S = rs.simple_vectors
    return build_diagram(cartan_matrix(S), np.einsum("ij,ij->i", S, S))


def diagram_to_json(dg: DynkinDiagram) -> dict:
    return {
        "nodes": [{"label": f"alpha{i + 1}", "length_sq": float(l)}
                  for i, l in enumerate(dg.lengths_sq)],
        "edges": [{"i": e.i, "j": e.j, "multiplicity": e.multiplicity, "arrow_to": e.arrow_to}
                  for e in dg.edges],
        "components": [{"nodes": list(c), "label": lab} for c, lab in dg.components],
    }
