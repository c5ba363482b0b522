"""The ten acceptance criteria, one test each, at their stated tolerances.

Each test records a PASS/FAIL line that is printed in the pytest summary
(and directly when this file is run as a script).
"""

from __future__ import annotations

import numpy as np

import conftest
from conftest import analytic_roots, jacobi_residual, match_multiset, theta_functionals
from liekit.adjoint import bch_order_estimate, check_ad_exp
from liekit.algebra import FAMILIES, build_classical, center, direct_sum, split_simple_ideals
from liekit.cartan import root_system
from liekit.dynkin import classify, dynkin_diagram, render_ascii
from liekit.geometry import (
    curvature_4,
    einstein_constant,
    finite_difference_shape,
    orbit_shape_operator,
    parallel_orbit_check,
    ricci,
    sectional,
    trace_metric,
)
from liekit.numlin import mat_exp
from liekit.weyl import generate, weyl_orbit

from test_weyl import oracle_matrices


def record(number, title, ok, detail):
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_killing_su():
    rng = np.random.default_rng(1)
    worst = 0.0
    for n in (2, 3, 4):
        L = build_classical("su", n)
        for _ in range(100):
            x, y = rng.normal(size=(2, L.dim))
            X, Y = L.matrix(x), L.matrix(y)
            ref = -2 * n * np.real(np.trace(X @ Y.conj().T))
            worst = max(worst, abs(x @ L.killing @ y - ref) / abs(ref))
    record(1, "Killing form of su(n) = -2n Re tr(XY*)", worst <= 1e-8, f"max rel err {worst:.2e}")


def test_criterion_02_root_lists():
    ok, counts = True, []
    for fam, n, count in (("su", 3, 6), ("so", 7, 18)):
        rs = root_system(build_classical(fam, n))
        counts.append(len(rs.roots))
        ok &= len(rs.roots) == count and match_multiset(rs.roots, analytic_roots(fam, n), 1e-7)
    record(2, "roots of su(3) and so(7) match analytic lists", ok, f"counts {counts}")


def test_criterion_03_so7_simple_roots():
    L = build_classical("so", 7)
    rs = root_system(L)
    F = theta_functionals(L, "so", 7)
    expected = np.array([[1, -1, 0], [0, 1, -1], [0, 0, 1]]) @ F
    S = rs.simple_vectors
    # order the computed simple roots like the expected list
    order = [int(np.argmin(np.abs(S - e).max(axis=1))) for e in expected]
    S = S[order]
    err_vec = np.abs(S - expected).max()
    norms = np.linalg.norm(S, axis=1)
    err_norm = np.abs(norms - [np.sqrt(2), np.sqrt(2), 1]).max()

    def angle(a, b):
        return np.degrees(np.arccos(a @ b / (np.linalg.norm(a) * np.linalg.norm(b))))

    angles = [angle(S[0], S[1]), angle(S[1], S[2])]
    err_ang = np.abs(np.array(angles) - [120, 135]).max()
    ok = sorted(order) == [0, 1, 2] and max(err_vec, err_norm, err_ang) <= 1e-7
    record(3, "so(7) simple roots, norms, angles", ok,
           f"norms {np.round(norms, 9).tolist()}, angles {np.round(angles, 9).tolist()}")


def test_criterion_04_classification():
    table = [("su", k + 1, f"A{k}") for k in range(1, 6)]
    table += [("so", 2 * k + 1, f"B{k}") for k in (2, 3, 4)]
    table += [("sp", 3, "C3"), ("so", 8, "D4")]
    wrong = []
    for fam, n, label in table:
        got = classify(dynkin_diagram(root_system(build_classical(fam, n))))
        if got != [label]:
            wrong.append((fam, n, got))
    dg = dynkin_diagram(root_system(build_classical("so", 7)))
    text = render_ascii(dg)
    doubles = [e for e in dg.edges if e.multiplicity == 2]
    short = int(np.argmin(dg.lengths_sq))
    ascii_ok = (text == "o - o => o" and len(dg.edges) == 2
                and len(doubles) == 1 and doubles[0].arrow_to == short)
    record(4, "Dynkin classification table and so(7) ASCII", not wrong and ascii_ok,
           f"mismatches {wrong}, so7 '{text}'")


def test_criterion_05_weyl():
    expected = [("su", 2, 2), ("su", 3, 6), ("su", 4, 24), ("so", 5, 8), ("so", 7, 48), ("sp", 3, 48)]
    orders, ok = [], True
    rng = np.random.default_rng(5)
    for fam, n, order in expected:
        rs = root_system(build_classical(fam, n))
        W = generate(rs)
        orders.append(W.order)
        ok &= W.order == len(oracle_matrices(fam, n)) == order
        S = rs.simple_vectors
        for _ in range(5):
            X = rng.normal(size=rs.rank)
            orb = weyl_orbit(rs, X, W)
            inside = np.sum(np.all(orb @ S.T >= -1e-8, axis=1))
            ok &= len(orb) == W.order and inside == 1
    record(5, "Weyl orders vs (signed-)permutation oracles, one chamber hit", ok, f"orders {orders}")


def test_criterion_06_ad_exp():
    rng = np.random.default_rng(6)
    worst = 0.0
    for fam, n in (("su", 2), ("su", 3), ("so", 5)):
        L = build_classical(fam, n)
        for _ in range(100):
            x = rng.normal(size=L.dim)
            x /= np.linalg.norm(L.matrix(x))
            worst = max(worst, check_ad_exp(L, x))
    record(6, "Ad(exp X) = exp(ad X)", worst <= 1e-8, f"max residual {worst:.2e}")


def test_criterion_07_bch_order():
    rng = np.random.default_rng(7)
    slopes, ok = [], True
    for fam, n in (("su", 2), ("so", 3)):
        L = build_classical(fam, n)
        for _ in range(10):
            x, y = rng.normal(size=(2, L.dim))
            x /= np.linalg.norm(L.matrix(x))
            y /= np.linalg.norm(L.matrix(y))
            est = bch_order_estimate(L, x, y, order=2)
            slopes.append(est.slope)
            ok &= (not est.exact) and 2.9 <= est.slope <= 3.3
        x = rng.normal(size=L.dim)
        x /= np.linalg.norm(L.matrix(x))
        est = bch_order_estimate(L, x, -0.7 * x, order=2)
        ok &= est.exact and est.errors.max() <= 1e-10
    record(7, "order-2 BCH remainder slope", ok, f"slopes in [{min(slopes):.4f}, {max(slopes):.4f}]")


def test_criterion_08_curvature():
    rng = np.random.default_rng(8)
    ric_err, rxy_err, min_k, ok = 0.0, 0.0, np.inf, True
    for fam, n in (("su", 2), ("su", 3), ("so", 5)):
        L = build_classical(fam, n)
        m = trace_metric(L)
        for _ in range(50):
            x, y = rng.normal(size=(2, L.dim))
            ric_err = max(ric_err, abs(ricci(m, x, y) + 0.25 * x @ L.killing @ y))
            xn, yn = x / m.norm(x), y / m.norm(y)
            b = L.bracket(xn, yn)
            rxy_err = max(rxy_err, abs(curvature_4(m, xn, yn, xn, yn) - 0.25 * m.inner(b, b)))
            min_k = min(min_k, sectional(m, x, y))
    lams = []
    for n in (2, 3, 4):
        L = build_classical("su", n)
        lam = einstein_constant(L, trace_metric(L))
        lams.append(lam)
        ok &= abs(lam - n / 2) <= 1e-8
    ok &= ric_err <= 1e-8 and rxy_err <= 1e-9 and min_k >= -1e-12
    record(8, "Ricci, curvature, sectional, Einstein", ok,
           f"ric {ric_err:.1e}, <R(X,Y)X,Y> {rxy_err:.1e}, min K {min_k:.3f}, "
           f"lambda {np.round(lams, 12).tolist()}")


def test_criterion_09_orbits():
    rng = np.random.default_rng(9)
    fd_err, ok, drops = 0.0, True, []
    for fam, n in (("su", 2), ("su", 3)):
        L = build_classical(fam, n)
        rs = root_system(L)
        m = trace_metric(L)
        W = generate(rs)
        Z = rs.regular_element
        N = rng.normal(size=rs.rank)
        analytic = np.sort(np.repeat(orbit_shape_operator(rs, m, Z, N).values, 2))
        for _ in range(5):
            g = mat_exp(L.matrix(rng.normal(size=L.dim)))
            S_fd, S_ex = finite_difference_shape(rs, m, Z, N, g=g)
            ev = np.sort(np.linalg.eigvals(S_fd).real)
            fd_err = max(fd_err, np.abs(S_fd - S_ex).max(), np.abs(ev - analytic).max())
        a = rs.roots[rs.simple[0]]
        wall = -(a @ Z) / (a @ a) * a
        configs = [np.zeros(rs.rank)] + [rng.normal(size=rs.rank) for _ in range(3)] + [wall]
        for N in configs:
            rep = parallel_orbit_check(rs, W, Z, N, samples=5, seed=int(rng.integers(1 << 30)))
            ok &= rep["pass"]
        vanish = sum(abs(rs.roots[k] @ (Z + wall)) < 1e-9 for k in rs.positive)
        ok &= rep["dimension_drop"] == 2 * vanish > 0
        drops.append(f"{rep['orbit_dim_Z']}->{rep['orbit_dim_Z_plus_N']}")
    ok &= fd_err <= 1e-4
    record(9, "principal curvatures vs finite differences, parallel orbits", ok,
           f"fd err {fd_err:.1e}, wall drops {drops}")


def test_criterion_10_structure():
    algebras = [build_classical(f, n) for f in FAMILIES for n in (2, 3, 4)]
    algebras += [build_classical("so", n) for n in (5, 6, 7, 8)] + [build_classical("sp", 3)]
    algebras.append(direct_sum(build_classical("su", 2), build_classical("su", 3)))
    ideals = split_simple_ideals(build_classical("so", 4))
    algebras += ideals
    jac = max(jacobi_residual(L) for L in algebras)
    split_ok = [I.dim for I in ideals] == [3, 3] and all(
        classify(dynkin_diagram(root_system(I))) == ["A1"] for I in ideals)
    centers = {n: (center(build_classical("u", n)).shape[0], center(build_classical("su", n)).shape[0])
               for n in (2, 3)}
    centre_ok = all(v == (1, 0) for v in centers.values())
    record(10, "Jacobi, so(4) splitting, centres", jac <= 1e-10 and split_ok and centre_ok,
           f"jacobi {jac:.1e} over {len(algebras)} algebras, split {[I.dim for I in ideals]}, "
           f"centres u/su {centers}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
