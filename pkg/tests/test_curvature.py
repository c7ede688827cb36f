"""Curvature engine tests: oracles, identities, spectra, and an independent
symbolic recomputation of the whole operator."""

import math

import numpy as np
import pytest

from pagecert.curvature import (
    PAIRS,
    STRUCTURE_LAMBDA,
    CurvatureOperator,
    DegeneratePlaneError,
    MetricDomainError,
    ProfilePositivityError,
    TwoPlane,
    curvature_at,
    eigvals_sym3,
    plane_from_sd_components,
    riemann_component,
    weyl_minus,
    weyl_plus,
)
from pagecert.metrics import DiagonalMetric, k01_closed_form
from pagecert.profiles import X, const

from conftest import PAGE_EINSTEIN_CONSTANT


def random_plane(rng) -> TwoPlane:
    return TwoPlane.from_span(rng.standard_normal(4), rng.standard_normal(4))


# ---------------------------------------------------------------------------
# Constant-curvature oracle
# ---------------------------------------------------------------------------


def test_round_s4_operator_is_identity(s4):
    rng = np.random.RandomState(11)
    for x in rng.uniform(-0.999, 0.999, 100):
        op = curvature_at(s4, float(x))
        assert np.max(np.abs(op.matrix - np.eye(6))) < 1e-10


def test_round_s4_random_planes_curvature_one(s4):
    rng = np.random.RandomState(12)
    for x in rng.uniform(-0.99, 0.99, 20):
        op = curvature_at(s4, float(x))
        for _ in range(5):
            assert op.sectional(random_plane(rng)) == pytest.approx(1.0, abs=1e-10)


def test_round_s4_ricci_scalar(s4):
    op = curvature_at(s4, 0.0)
    assert np.allclose(op.ricci(), 3.0, atol=1e-12)
    assert op.scalar() == pytest.approx(12.0, abs=1e-11)
    assert weyl_plus(op, op.scalar()).as_tuple() == pytest.approx((0, 0, 0), abs=1e-12)
    assert weyl_minus(op, op.scalar()).as_tuple() == pytest.approx((0, 0, 0), abs=1e-12)


# ---------------------------------------------------------------------------
# Structural identities
# ---------------------------------------------------------------------------


def test_operator_symmetric_and_cross_route_agreement(all_metrics):
    """The matrix is exactly symmetric; the residual between the two
    independent routes to the off-diagonal block stays tiny."""
    rng = np.random.RandomState(21)
    for metric in all_metrics:
        for x in rng.uniform(-0.999, 0.999, 100):
            op = curvature_at(metric, float(x))
            assert np.array_equal(op.matrix, op.matrix.T)
            scale = max(1.0, float(np.max(np.abs(op.matrix))))
            assert op.asym_residual < 1e-10 * scale


def test_first_bianchi_identity(all_metrics):
    rng = np.random.RandomState(22)
    for metric in all_metrics:
        for x in rng.uniform(-0.999, 0.999, 100):
            op = curvature_at(metric, float(x))
            assert abs(op.first_bianchi_residual()) < 1e-10


def test_page_biaxial_symmetry(page):
    rng = np.random.RandomState(23)
    for x in rng.uniform(-0.999, 0.999, 50):
        m = curvature_at(page, float(x)).matrix
        assert abs(m[0, 0] - m[1, 1]) < 1e-12 * max(1.0, abs(m[0, 0]))  # K01 = K02
        assert abs(m[3, 3] - m[4, 4]) < 1e-12 * max(1.0, abs(m[3, 3]))  # K23 = K13


def test_page_einstein_block_pairing(page):
    # Einstein metrics have vanishing R+- block: K(e0,ei) = K(ej,ek) pairwise
    for x in np.linspace(-0.99, 0.99, 21):
        m = curvature_at(page, float(x)).matrix
        for i in range(3):
            assert m[i, i] == pytest.approx(m[3 + i, 3 + i], rel=1e-10, abs=1e-12)


def test_ricci_consistency(all_metrics):
    for metric in all_metrics:
        op = curvature_at(metric, 0.321)
        ric = op.ricci()
        assert op.scalar() == pytest.approx(float(np.sum(ric)), rel=1e-12)


def test_page_ricci_constant(page):
    for x in np.linspace(-0.999, 0.999, 41):
        ric = curvature_at(page, float(x)).ricci()
        assert np.max(np.abs(ric - PAGE_EINSTEIN_CONSTANT)) < 1e-8


# ---------------------------------------------------------------------------
# Sectional curvature of planes
# ---------------------------------------------------------------------------


def test_sectional_basis_planes_match_diagonal(page):
    op = curvature_at(page, 0.4)
    basis = np.eye(4)
    for idx, (a, b) in enumerate(PAIRS):
        plane = TwoPlane(u=basis[a], v=basis[b])
        assert op.sectional(plane) == pytest.approx(op.matrix[idx, idx], rel=1e-14)


def test_sectional_invariances(page):
    op = curvature_at(page, 0.4)
    rng = np.random.RandomState(31)
    plane = random_plane(rng)
    k = op.sectional(plane)
    # swap
    assert op.sectional(TwoPlane(u=plane.v, v=plane.u)) == pytest.approx(k, rel=1e-12)
    # in-plane rotation
    t = 0.77
    u2 = math.cos(t) * plane.u + math.sin(t) * plane.v
    v2 = -math.sin(t) * plane.u + math.cos(t) * plane.v
    assert op.sectional(TwoPlane(u=u2, v=v2)) == pytest.approx(k, rel=1e-12)


def test_degenerate_plane_rejected(page):
    op = curvature_at(page, 0.4)
    with pytest.raises(DegeneratePlaneError):
        TwoPlane.from_span([1.0, 0, 0, 0], [1.0, 1e-12, 0, 0])
    with pytest.raises(ValueError):
        TwoPlane(u=np.array([1.0, 0, 0, 0]), v=np.array([1.0, 0, 0, 0]))
    assert op is not None


def test_plane_from_sd_components_roundtrip(page):
    op = curvature_at(page, 0.25)
    rng = np.random.RandomState(32)
    p = rng.standard_normal(3)
    q = rng.standard_normal(3)
    p /= np.linalg.norm(p)
    q /= np.linalg.norm(q)
    plane = plane_from_sd_components(p, q)
    rpp, rpm, rmm = op.sd_blocks()
    expected = 0.5 * (p @ rpp @ p + 2.0 * (p @ rpm @ q) + q @ rmm @ q)
    assert op.sectional(plane) == pytest.approx(expected, rel=1e-10, abs=1e-12)


# ---------------------------------------------------------------------------
# k01 cross-check against the closed form
# ---------------------------------------------------------------------------


def test_k01_engine_to_closed_form_ratio_constant(params, page):
    xs = np.linspace(-0.999, 0.999, 200)
    ratios = []
    for x in xs:
        x = float(x)
        engine = curvature_at(page, x).matrix[0, 0]
        closed = k01_closed_form(params, x)
        assert engine * closed >= 0.0  # sign agreement everywhere
        if abs(closed) > 1e-12:
            ratios.append(engine / closed)
    ratios = np.asarray(ratios)
    mid = float(np.median(ratios))
    assert np.max(np.abs(ratios - mid)) < 1e-9 * abs(mid)
    assert mid == pytest.approx(0.5, rel=1e-12)


# ---------------------------------------------------------------------------
# Weyl spectra and the closed-form eigensolver
# ---------------------------------------------------------------------------


def test_eigvals_sym3_against_lapack():
    rng = np.random.RandomState(41)
    for _ in range(500):
        m = rng.standard_normal((3, 3))
        m = 0.5 * (m + m.T)
        ours = eigvals_sym3(m)
        ref = np.linalg.eigvalsh(m)
        assert np.allclose(ours, ref, rtol=1e-10, atol=1e-10)


def test_eigvals_sym3_degenerate_cases():
    assert eigvals_sym3(np.eye(3)) == (1.0, 1.0, 1.0)
    assert eigvals_sym3(np.zeros((3, 3))) == (0.0, 0.0, 0.0)
    d = np.diag([2.0, 2.0 + 1e-15, 5.0])
    e = eigvals_sym3(d)
    assert e[0] == e[1]  # snapped to exact degeneracy
    near = np.diag([1.0, 2.0, 3.0]) + 1e-14 * np.ones((3, 3))
    assert np.allclose(eigvals_sym3(near), (1.0, 2.0, 3.0), atol=1e-12)


def test_page_weyl_plus_two_eigenvalues(page):
    for x in np.linspace(-0.99, 0.99, 41):
        op = curvature_at(page, float(x))
        spectrum = op.weyl_plus()
        assert abs(spectrum.trace) < 1e-10
        assert spectrum.has_exactly_two_distinct(1e-8)
        # Kaehler-type spectrum: the simple eigenvalue is -2x the double one
        assert spectrum.mu3 == pytest.approx(-2.0 * spectrum.mu1, rel=1e-9)


def test_fs_weyl_spectra(cp2):
    op = curvature_at(cp2, 0.3)
    s = op.scalar()
    assert s == pytest.approx(24.0, rel=1e-11)
    assert weyl_plus(op, s).as_tuple() == pytest.approx((-2.0, -2.0, 4.0), abs=1e-9)
    assert weyl_minus(op, s).as_tuple() == pytest.approx((0.0, 0.0, 0.0), abs=1e-9)


def test_riemann_component_signs(page):
    op = curvature_at(page, 0.37)
    assert riemann_component(op, 0, 1, 0, 1) == op.matrix[0, 0]
    assert riemann_component(op, 1, 0, 0, 1) == -op.matrix[0, 0]
    assert riemann_component(op, 0, 0, 2, 3) == 0.0


# ---------------------------------------------------------------------------
# Error paths
# ---------------------------------------------------------------------------


def test_domain_and_positivity_errors(page):
    with pytest.raises(MetricDomainError):
        curvature_at(page, 1.5)
    bad = DiagonalMetric(
        name="bad", f=(const(1.0), X, const(1.0), const(1.0)), domain=(-1.0, 1.0)
    )
    with pytest.raises(ProfilePositivityError):
        curvature_at(bad, -0.5)


# ---------------------------------------------------------------------------
# Independent symbolic oracle
# ---------------------------------------------------------------------------


def _sympy_operator(f_sym, lam, x0):
    """Frame-Koszul curvature operator computed symbolically with sympy.

    Independent of the engine's Cartan-derived closed forms: builds the
    Levi-Civita connection from the frame bracket structure functions and
    differentiates symbolically.
    """
    import sympy as sp

    x = sp.Symbol("x")
    c = -lam  # [X_i, X_j] = c eps_ijk X_k
    f = f_sym
    zero = sp.Integer(0)
    C = [[[zero] * 4 for _ in range(4)] for _ in range(4)]
    for i in (1, 2, 3):
        coef = -sp.diff(f[i], x) / (f[0] * f[i])
        C[0][i][i] = coef
        C[i][0][i] = -coef
    eps = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
           (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}
    for (i, j, k), sgn in eps.items():
        C[i][j][k] = c * sgn * f[k] / (f[i] * f[j])

    # Koszul: 2 <grad_a E_b, E_c> = C_abc - C_bca + C_cab
    G = [
        [
            [sp.simplify((C[a][b][cc] - C[b][cc][a] + C[cc][a][b]) / 2) for cc in range(4)]
            for b in range(4)
        ]
        for a in range(4)
    ]

    def frame_derivative(a, h):
        return sp.diff(h, x) / f[0] if a == 0 else zero

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def curv_vector(a, b, cc):
        out = [zero] * 4
        for d in range(4):
            out[d] += frame_derivative(a, G[b][cc][d]) - frame_derivative(b, G[a][cc][d])
            for e in range(4):
                out[e] += G[b][cc][d] * G[a][d][e] - G[a][cc][d] * G[b][d][e]
        for k in range(4):
            if C[a][b][k] != 0:
                for e in range(4):
                    out[e] -= C[a][b][k] * G[k][cc][e]
        return tuple(out)

    m = np.zeros((6, 6))
    for col, (aj, bj) in enumerate(PAIRS):
        for row, (ai, bi) in enumerate(PAIRS):
            val = curv_vector(aj, bj, bi)[ai]
            m[row, col] = float(sp.nsimplify(val).subs(x, sp.Rational(x0)))
    return m


def test_engine_matches_symbolic_koszul_oracle():
    """Full 6x6 agreement with an independent symbolic derivation on a
    generic (non-Einstein, tri-axial) polynomial metric."""
    sp = pytest.importorskip("sympy")
    x = sp.Symbol("x")
    f_sym = [
        1 + x**2 / 8,
        sp.Rational(3, 2) + x / 4,
        2 - x**3 / 8,
        1 + x / 2 + x**4 / 16,
    ]
    metric = DiagonalMetric(
        name="generic",
        f=(
            1.0 + X * X * const(0.125),
            const(1.5) + X * const(0.25),
            2.0 - (X**3) * const(0.125),
            1.0 + X * const(0.5) + (X**4) * const(0.0625),
        ),
        domain=(-1.0, 1.0),
    )
    for x0 in (sp.Rational(5, 16), sp.Rational(-7, 16), sp.Rational(0)):
        oracle = _sympy_operator(f_sym, STRUCTURE_LAMBDA, x0)
        engine = curvature_at(metric, float(x0)).matrix
        assert np.max(np.abs(oracle - engine)) < 1e-10


def test_curvature_operator_wrapper():
    m = np.diag([1.0, 2, 3, 1, 2, 3])
    op = CurvatureOperator(matrix=m, x=0.0)
    assert op.scalar() == pytest.approx(24.0)
