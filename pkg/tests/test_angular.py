import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_gegenbauer

from calogero.angular import (
    AngularLevel,
    ConnectionMatrix,
    Coupling,
    ExplicitCase,
    MuValue,
    Series,
    angular_spectrum,
    explicit_spectrum,
    permissibility,
    separating_spectrum,
    solve_type1,
    solve_type2,
)
from calogero.angular import equations as eq
from calogero.angular.eigenfunctions import (
    boundary_residual,
    build_eigenfunction,
    free_type2_closed_form,
    oscillator_plane_wave,
    symmetry_label,
    v_functions,
)
from calogero.angular.solvers import (
    certify_imag_cutoff,
    imag_tail_estimates,
    type1_imag_root,
    type2_imag_roots,
)
from calogero.angular.transport import projector, projector_closed_form, sixth_power_defect, tau_for, transport_matrix
from calogero.angular.types import AngularError, SeparatingInputError
from calogero.symmetry import RepLabel
from calogero.validation import det_defect, wronskian_defects

SIGMA1 = ConnectionMatrix.sigma1()
FIG3 = (21 / 20, 11 * math.pi / 20, math.pi / 10)


# ------------------------------------------------------------ types


def test_coupling_range():
    for bad in (0.5, 0.4, 1.5, 1.0, float("nan")):
        with pytest.raises(AngularError):
            Coupling(bad)
    assert Coupling(1.0, allow_oscillator_limit=True).is_oscillator
    assert Coupling(0.8).g == pytest.approx(2 * 0.8 * (0.8 - 1))


def test_connection_matrix_is_unitary_and_sigma1_symmetric():
    sx = np.array([[0, 1], [1, 0]])
    for a, b in ((0.3, 1.0), (-2.0, 0.6), (math.pi, 0.0)):
        U = ConnectionMatrix(a, b).matrix()
        assert np.allclose(U @ U.conj().T, np.eye(2), atol=1e-14)
        assert np.allclose(sx @ U @ sx, U, atol=1e-14)
    assert np.allclose(SIGMA1.matrix(), sx, atol=1e-15)
    assert np.allclose(ConnectionMatrix.minus_sigma1().matrix(), -sx, atol=1e-15)


def test_connection_matrix_canonical_angles():
    U = ConnectionMatrix(0.4 + 2 * math.pi, 0.9 - 2 * math.pi)
    assert U.alpha == pytest.approx(0.4) and U.beta == pytest.approx(0.9)
    # diagonal with cos beta < 0 is the same matrix as (alpha + pi, 0)
    assert ConnectionMatrix(0.0, math.pi) == ConnectionMatrix(math.pi, 0.0)
    assert ConnectionMatrix(0.2, 1e-13).separating


def test_mu_value_lambda():
    assert MuValue.real(0.5).lam == pytest.approx(2.25)
    assert MuValue.imag(0.5).lam == pytest.approx(-2.25)
    with pytest.raises(AngularError):
        MuValue.imag(0.0)


# ------------------------------------------------------------ coefficients


def test_wronskian_difference_example():
    a1, a2, b1, b2 = eq.ab_coeffs(Coupling(2 / 3), MuValue(0.37))
    assert abs(a1 * b2 - b1 * a2 + 1.0) < 1e-11


def test_wronskian_sum_example():
    nu, mu = 0.8, 0.25
    a1, a2, b1, b2 = eq.ab_coeffs(Coupling(nu), MuValue(mu))
    expected = (3 - 6 * nu) * math.cos(math.pi * mu) / math.cos(math.pi * nu)
    assert abs(a1 * b2 + b1 * a2 - expected) < 1e-11


def test_oscillator_coefficients():
    mu = 0.6
    got = eq.ab_coeffs(Coupling(1.0, allow_oscillator_limit=True), MuValue(mu))
    h = math.pi * mu / 2
    want = (math.sin(h) / mu, math.cos(h), 3 * math.cos(h), -3 * mu * math.sin(h))
    assert np.allclose(got, want, atol=1e-13)


def _v_mp(nu, mu, phi):
    s = mpmath.sin(3 * phi)
    v1 = s**nu * mpmath.hyp2f1((nu - mu) / 2, (nu + mu) / 2, nu + 0.5, s * s)
    v2 = s ** (1 - nu) * mpmath.hyp2f1((1 - nu - mu) / 2, (1 - nu + mu) / 2, 1.5 - nu, s * s)
    return v1, v2


@pytest.mark.parametrize("nu,mu", [(0.7, 0.45), (1.3, 2.2), (0.6, 5.1)])
def test_coefficients_are_sector_midpoint_values(nu, mu):
    # oracle: v1, v2 and their derivatives at pi/6 evaluated with mpmath
    mpmath.mp.dps = 30
    mid = mpmath.pi / 6
    a1, a2, b1, b2 = eq.ab_coeffs(Coupling(nu), MuValue(mu))
    v1, v2 = _v_mp(nu, mu, mid)
    d1 = mpmath.diff(lambda p: _v_mp(nu, mu, p)[0], mid)
    d2 = mpmath.diff(lambda p: _v_mp(nu, mu, p)[1], mid)
    assert np.allclose([a1, a2], [float(v1), float(v2)], rtol=1e-11, atol=1e-12)
    assert np.allclose([b1, b2], [float(d1), float(d2)], rtol=1e-10, atol=1e-11)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.51, 1.49).filter(lambda v: abs(v - 1) > 1e-3), st.floats(0.0, 12.0), st.booleans())
def test_wronskian_identities_property(nu, mu, imaginary):
    if imaginary and mu < 1e-6:
        return
    m = MuValue(mu, imaginary)
    try:
        d1, d2 = wronskian_defects(Coupling(nu), m)
    except ArithmeticError:  # Gamma pole of the coefficient formulas
        return
    assert d1 < 1e-11 and d2 < 1e-11


# ------------------------------------------------------------ type-1 functions


def test_fa_zero_at_two_minus_nu():
    assert abs(eq.f_type1("A", Coupling(0.8), MuValue(1.2))) < 1e-10


def test_fb_pole_at_nu():
    c = Coupling(0.8)
    below = eq.f_type1("B", c, MuValue(0.8 - 1e-6))
    above = eq.f_type1("B", c, MuValue(0.8 + 1e-6))
    assert min(abs(below), abs(above)) > 1e4
    assert below * above < 0


def test_fa_imaginary_growth_law():
    x, nu = 80.0, 0.7
    val = eq.f_type1("A", Coupling(nu), MuValue.imag(x))
    assert abs(val / (x / 2) ** (2 * nu - 1) - 1) < 0.03


def test_poles_and_zeros_interlace():
    for nu in (0.6, 1.3):
        c = Coupling(nu)
        for letter in "AB":
            poles, zeros = eq.type1_poles(letter, c, 8), eq.type1_zeros(letter, c, 8)
            merged = sorted([(p, "p") for p in poles] + [(z, "z") for z in zeros])
            kinds = [k for _, k in merged]
            assert all(kinds[i] != kinds[i + 1] for i in range(len(kinds) - 1))


def test_rhs_examples():
    c = Coupling(0.8)
    assert eq.rhs_type1(c, ConnectionMatrix(0.0, 0.0), 1).value == 0.0
    assert eq.rhs_type1(c, ConnectionMatrix(math.pi, 0.0), 1).divergent
    r = eq.rhs_type1(c, ConnectionMatrix(math.pi / 3, math.pi / 6), 1)
    assert abs(r.value - math.gamma(1.3) / math.gamma(0.7)) < 1e-13


# ------------------------------------------------------------ F2


def test_f2_free_case():
    c = Coupling(0.8)
    assert abs(eq.f2(c, SIGMA1, MuValue(0.5))) < 1e-15
    for mu in np.linspace(0.0, 9.0, 181):
        assert abs(eq.f2(c, SIGMA1, MuValue(float(mu))) + math.cos(math.pi * mu) / math.cos(math.pi * 0.8)) < 1e-12


def test_f2_positivity_bound():
    nu, beta = 0.9, math.pi / 3
    val = eq.f2(Coupling(nu), ConnectionMatrix(-math.pi / 2, beta), MuValue.imag(0.4))
    assert val >= 1 / (math.sin(beta) * abs(math.cos(math.pi * nu)))


def test_f2_decomposition_cross_check():
    c, U, x = Coupling(0.7), ConnectionMatrix(0.4, 0.9), 1.2
    dec = eq.f2_decomposition(c, U)
    direct = eq.f2(c, U, MuValue.imag(x))
    assert abs(direct - math.exp(math.pi * x) * dec.scaled_value(0.7, x)) < 1e-8


def test_f2_rejects_separating():
    with pytest.raises(SeparatingInputError):
        eq.f2(Coupling(0.8), ConnectionMatrix(0.3, 0.0), MuValue(1.0))


# ------------------------------------------------------------ separating / type 1


@pytest.mark.parametrize("nu", [0.8, 1.2])
def test_separating_dirichlet_and_neumann(nu):
    c = Coupling(nu)
    for alpha, ladder_a, ladder_b in (
        (math.pi, lambda n: 2 * n + 1 + nu, lambda n: 2 * n + nu),
        (0.0, lambda n: 2 * n + 1 + (1 - nu), lambda n: abs(2 * n + (1 - nu))),
    ):
        levels = separating_spectrum(c, alpha, n_levels=5)
        a = sorted(lv.mu.value for lv in levels if lv.series is Series.SEP_A)
        b = sorted(lv.mu.value for lv in levels if lv.series is Series.SEP_B)
        assert np.allclose(a[:5], sorted(ladder_a(n) for n in range(5)), atol=1e-12)
        assert np.allclose(b[:5], sorted(ladder_b(n) for n in range(5)), atol=1e-12)
        assert all(lv.multiplicity == 6 for lv in levels)


def test_separating_generic_against_scan():
    # a1 / a2 = cot(alpha / 2) = 1 at alpha = pi / 2; the scan oracle uses a1 - a2, which has no poles
    c = Coupling(0.8)
    levels = separating_spectrum(c, math.pi / 2, mu_max=6.0)
    got = sorted(lv.mu.value for lv in levels if lv.series is Series.SEP_A and not lv.mu.imaginary)
    grid = np.arange(0.0, 6.0, 1e-3)
    vals = [eq.ab_coeffs(c, MuValue(float(m)))[0] - eq.ab_coeffs(c, MuValue(float(m)))[1] for m in grid]
    scan = [grid[i] for i in range(len(grid) - 1) if vals[i] * vals[i + 1] < 0]
    assert len(got) == len(scan)
    assert all(abs(g - s) < 2e-3 for g, s in zip(got, scan))
    for mu in got:
        a1, a2, _, _ = eq.ab_coeffs(c, MuValue(mu))
        assert abs(a1 / a2 - 1.0) < 1e-9


def test_type1_negative_level_exists_when_rhs_exceeds_f0():
    c, U = Coupling(0.8), ConnectionMatrix(1.2, 1.2)
    rhs = eq.rhs_type1(c, U, 1).value
    assert rhs > eq.f_type1_at_zero("A", c)
    imag = [lv for lv in solve_type1(c, U, "A", 1, n_levels=4) if lv.mu.imaginary]
    assert len(imag) == 1
    # scan oracle on the increasing F_A(ix) - rhs
    xs = np.arange(1e-3, 20.0, 1e-3)
    vals = [eq.f_type1("A", c, MuValue.imag(float(x))) - rhs for x in xs]
    crossings = [xs[i] for i in range(len(xs) - 1) if vals[i] * vals[i + 1] < 0]
    assert len(crossings) == 1
    assert abs(imag[0].mu.value - crossings[0]) < 2e-3


def test_type1_one_root_per_pole_interval():
    c, U = Coupling(1.3), ConnectionMatrix(0.7, 1.1)
    for letter in "AB":
        for sign in (1, -1):
            levels = [lv.mu.value for lv in solve_type1(c, U, letter, sign, n_levels=8) if not lv.mu.imaginary]
            poles = eq.type1_poles(letter, c, 10)
            for lo, hi in zip(poles, poles[1:]):
                if hi > max(levels):
                    break
                assert sum(lo < m < hi for m in levels) == 1


def test_type1_levels_have_multiplicity_one():
    for lv in solve_type1(Coupling(0.7), ConnectionMatrix(0.3, 1.0), "B", -1, n_levels=3):
        assert lv.multiplicity == 1 and lv.reps == frozenset({RepLabel.PM})


# ------------------------------------------------------------ type 2


@pytest.mark.parametrize("nu", [0.6, 1.4])
def test_free_type2_delta_ladders(nu):
    d = eq.delta_offset(nu)
    assert 0.5 < d < 2 / 3 and d < nu
    c = Coupling(nu)
    plus = [lv.mu.value for lv in solve_type2(c, SIGMA1, 0.5, n_levels=6)]
    minus = [lv.mu.value for lv in solve_type2(c, SIGMA1, -0.5, n_levels=6)]
    want_plus = sorted([2 * n + 1 + d for n in range(4)] + [2 * n + (1 - d) for n in range(4)])[:6]
    want_minus = sorted([2 * n + d for n in range(4)] + [2 * n + 1 + (1 - d) for n in range(4)])[:6]
    assert np.allclose(plus, want_plus, atol=1e-9)
    assert np.allclose(minus, want_minus, atol=1e-9)


def test_figure3_imaginary_count():
    c, U = Coupling(FIG3[0]), ConnectionMatrix(*FIG3[1:])
    assert len(type2_imag_roots(c, U, 0.5)) + len(type2_imag_roots(c, U, -0.5)) == 4


def test_positivity_example_has_no_type2_imaginary_roots():
    c, U = Coupling(0.9), ConnectionMatrix(-math.pi / 2, math.pi / 3)
    assert type2_imag_roots(c, U, 0.5) == [] and type2_imag_roots(c, U, -0.5) == []


def test_type2_levels_carry_pairs():
    for lv in solve_type2(Coupling(0.8), SIGMA1, -0.5, n_levels=3):
        assert lv.multiplicity == 2 and lv.reps == frozenset({RepLabel.TWO_TILDE})


def test_far_imaginary_root_beyond_old_cap():
    # a small dominant coefficient of opposite sign to kappa0 puts the crossing near x ~ 2e5
    c, U = Coupling(0.7), ConnectionMatrix(-3.0, 0.15789473684210525)
    cut = certify_imag_cutoff(c, U)
    assert cut.certified and cut.x_max > 1e5
    roots = type2_imag_roots(c, U, 0.5, cut)
    assert len(roots) == 1 and roots[0] > 1e5
    assert abs(eq.f2_decomposition(c, U).scaled_value(0.7, roots[0])) < 1e-10
    # the type-1 imaginary roots sit at the same place, found by an independent bracket search
    x1 = type1_imag_root(c, "A", eq.type1_angle(U, -1))
    assert x1 == pytest.approx(roots[0], rel=1e-8)


def test_tail_estimates_solve_the_power_law_quadratic():
    c, U = Coupling(0.7), ConnectionMatrix(-3.0, 0.15789473684210525)
    dec = eq.f2_decomposition(c, U)
    (x,) = imag_tail_estimates(c, U, 10.0)
    t = x ** (2 * 0.7 - 1)
    assert abs(dec.kappa0 + dec.kappa_minus / t + dec.kappa_plus * t) < 1e-9
    assert imag_tail_estimates(c, U, 1e7) == []


def test_certified_cutoff_for_nearly_free_coupling():
    c, U = Coupling(1.001), ConnectionMatrix(3 * math.pi / 10, 715 * math.pi / 1000)
    assert certify_imag_cutoff(c, U).certified


# ------------------------------------------------------------ explicit cases


def test_free_case_type1_ladders_and_ground_level():
    nu = 0.8
    levels = explicit_spectrum(ExplicitCase.FREE, Coupling(nu), mu_max=6.0)
    type1 = {round(lv.mu.value, 12) for lv in levels if not lv.series.is_type2}
    want = set()
    for n in range(4):
        for v in (2 * n + 1 + nu, abs(2 * n + (1 - nu)), 2 * n + nu, 2 * n + 1 + (1 - nu)):
            if v <= 6.0:
                want.add(round(v, 12))
    assert type1 == want
    ground = min(levels, key=AngularLevel.sort_key)
    assert ground.series is Series.B_PLUS and ground.mu.value == pytest.approx(abs(1 - nu))


def test_minus_sigma1_swaps_labels():
    c = Coupling(0.8)
    free = explicit_spectrum(ExplicitCase.FREE, c, mu_max=7.0)
    minus = explicit_spectrum(ExplicitCase.MINUS_SIGMA1, c, mu_max=7.0)
    assert sorted(lv.mu.value for lv in free) == sorted(lv.mu.value for lv in minus)
    swap = {"A+": "A-", "A-": "A+", "B+": "B-", "B-": "B+", "Type2(+1/2)": "Type2(-1/2)", "Type2(-1/2)": "Type2(+1/2)"}
    key = lambda lv: round(lv.mu.value, 10)
    by_mu = {key(lv): lv.series.value for lv in minus}
    assert all(by_mu[key(lv)] == swap[lv.series.value] for lv in free)


@pytest.mark.parametrize("case", list(ExplicitCase))
def test_explicit_matches_generic_solver(case):
    c = Coupling(0.8)
    closed = explicit_spectrum(case, c, mu_max=6.0)
    generic = angular_spectrum(c, case.connection, 6.0)
    assert len(closed) == len(generic)
    for a, b in zip(closed, generic):
        assert a.series is b.series and abs(a.mu.value - b.mu.value) < 1e-9


def test_spectrum_depends_only_on_u():
    c = Coupling(0.7)
    a = angular_spectrum(c, ConnectionMatrix(0.3, 1.0), 4.0)
    b = angular_spectrum(c, ConnectionMatrix(0.3 + 2 * math.pi, 1.0 - 2 * math.pi), 4.0)
    assert [lv.series for lv in a] == [lv.series for lv in b]
    assert np.allclose([lv.mu.value for lv in a], [lv.mu.value for lv in b], rtol=1e-12, atol=1e-13)


# ------------------------------------------------------------ transport matrix


def test_det_t_example():
    tm = transport_matrix(Coupling(0.7), ConnectionMatrix(0.3, 1.0), MuValue(0.45))
    assert abs(tm.det - 1) < 1e-10


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.55, 1.45).filter(lambda v: abs(v - 1) > 1e-3),
    st.floats(-3.1, 3.1),
    st.floats(0.05, 3.1),
    st.floats(0.0, 6.0),
)
def test_det_t_property(nu, alpha, beta, mu):
    try:
        tm = transport_matrix(Coupling(nu), ConnectionMatrix(alpha, beta), MuValue(mu))
    except ArithmeticError:
        return
    assert det_defect(tm) < 1e-10


def test_type1_root_makes_t_triangular():
    c, U = Coupling(0.7), ConnectionMatrix(0.3, 1.0)
    for sign, diag in ((1, -1.0), (-1, 1.0)):
        series = Series.A_PLUS if sign == 1 else Series.A_MINUS
        lv = [lv for lv in solve_type1(c, U, "A", sign, n_levels=2) if lv.series is series][0]
        tm = transport_matrix(c, U, lv.mu)
        scale = abs(tm.det_np)
        assert abs(tm.y) < 1e-9 * scale
        assert np.allclose(np.diag(tm.matrix), [diag, diag], atol=1e-9)


def test_half_trace_is_re_tau_at_solved_levels():
    c, U = Coupling(0.7), ConnectionMatrix(0.3, 1.0)
    for lv in angular_spectrum(c, U, 3.0):
        if lv.mu.imaginary or lv.series in (Series.SEP_A, Series.SEP_B):
            continue
        assert abs(transport_matrix(c, U, lv.mu).half_trace - lv.re_tau) < 1e-9


def test_projectors_at_free_type2_level():
    c = Coupling(0.8)
    lv = solve_type2(c, SIGMA1, 0.5, n_levels=1)[0]
    tm = transport_matrix(c, SIGMA1, lv.mu)
    assert sixth_power_defect(tm) < 1e-8
    tau = tau_for(0.5, 1)
    p, pbar = projector(tau, tm), projector(tau.conjugate(), tm)
    assert np.abs(p + pbar - np.eye(2)).max() < 1e-9
    assert abs(np.trace(p) - 1) < 1e-12
    assert np.abs(p - projector_closed_form(tau, tm)).max() < 1e-9


def test_projector_rejects_non_eigenvalue():
    tm = transport_matrix(Coupling(0.8), SIGMA1, MuValue(0.1234))
    with pytest.raises(ArithmeticError):
        projector(tau_for(0.5, 1), tm)


# ------------------------------------------------------------ eigenfunctions


PHIS = [0.05 + k * 0.37 for k in range(17)]


def _is_constant_ratio(f, g, phis, tol):
    ratios = [f(p) / g(p) for p in phis]
    return max(abs(r - ratios[0]) for r in ratios) < tol * abs(ratios[0])


def _gegenbauer_state(nu, degree, phi):
    # oracle: |sin 3phi|^nu C_l^nu(cos 3phi)
    return abs(math.sin(3 * phi)) ** nu * eval_gegenbauer(degree, nu, math.cos(3 * phi))


@pytest.mark.parametrize("series,parity", [(Series.SEP_B, 0), (Series.SEP_A, 1)])
def test_dirichlet_sector_states_are_gegenbauer(series, parity):
    nu = 0.8
    c = Coupling(nu)
    lv = [lv for lv in explicit_spectrum(ExplicitCase.DIRICHLET, c, n_levels=2) if lv.series is series][0]
    degree = round(lv.mu.value - nu)
    assert degree % 2 == parity
    for k in range(6):
        psi = build_eigenfunction(lv, c, ExplicitCase.DIRICHLET.connection, k)
        inside = [k * math.pi / 3 + t for t in np.linspace(0.03, math.pi / 3 - 0.03, 8)]
        assert _is_constant_ratio(psi, lambda p: _gegenbauer_state(nu, degree, p), inside, 1e-10)
        assert psi(inside[0] + math.pi / 3) == 0


def test_oscillator_type2_is_plane_wave():
    c = Coupling(1.0, allow_oscillator_limit=True)
    lv = [lv for lv in explicit_spectrum(ExplicitCase.FREE, c, n_levels=3) if lv.series.is_type2][1]
    for which, sign in ((0, 1), (1, -1)):
        psi = build_eigenfunction(lv, c, SIGMA1, which)
        wave = lambda p: oscillator_plane_wave(lv.mu.value, sign, p)
        if not _is_constant_ratio(psi, wave, PHIS, 1e-8):
            wave = lambda p: oscillator_plane_wave(lv.mu.value, -sign, p)
        assert _is_constant_ratio(psi, wave, PHIS, 1e-8)


def test_free_type2_matches_closed_form_on_first_half_sector():
    c = Coupling(0.8)
    lv = solve_type2(c, SIGMA1, -0.5, n_levels=2)[1]
    tau = tau_for(-0.5, 1)
    psi = build_eigenfunction(lv, c, SIGMA1, 0)
    phis = np.linspace(0.02, math.pi / 6, 9)
    assert _is_constant_ratio(psi, lambda p: free_type2_closed_form(c, lv.mu.value, tau, p), phis, 1e-8) or (
        _is_constant_ratio(psi, lambda p: free_type2_closed_form(c, lv.mu.value, tau.conjugate(), p), phis, 1e-8)
    )


@pytest.mark.parametrize("nu,alpha,beta", [(0.7, 0.3, 1.0), (1.3, -1.2, 0.6), (0.95, 2.0, 1.2)])
def test_boundary_residual_and_labels(nu, alpha, beta):
    c, U = Coupling(nu), ConnectionMatrix(alpha, beta)
    for lv in angular_spectrum(c, U, 3.0):
        if lv.mu.imaginary and lv.mu.value > 10:
            continue
        which = range(6) if lv.series in (Series.SEP_A, Series.SEP_B) else range(2 if lv.series.is_type2 else 1)
        for w in which:
            psi = build_eigenfunction(lv, c, U, w)
            assert boundary_residual(psi, U) < 1e-8
            label = symmetry_label(psi)
            if label is not None:
                assert label in lv.reps


def test_dirichlet_state_violates_neumann_condition():
    c = Coupling(0.8)
    lv = explicit_spectrum(ExplicitCase.DIRICHLET, c, n_levels=1)[0]
    psi = build_eigenfunction(lv, c, ExplicitCase.DIRICHLET.connection, 0).normalized()
    assert boundary_residual(psi, ConnectionMatrix.identity()) > 0.1


def test_residual_grows_linearly_off_root():
    c, U = Coupling(0.7), ConnectionMatrix(0.3, 1.0)
    lv = solve_type1(c, U, "B", 1, n_levels=2)[-1]
    res = []
    for d in (1e-3, 2e-3, 4e-3):
        off = AngularLevel(lv.mu.shifted(d), lv.series)
        res.append(boundary_residual(build_eigenfunction(off, c, U, 0), U))
    assert res[0] > 1e-6
    assert 1.7 < res[1] / res[0] < 2.3 and 1.7 < res[2] / res[1] < 2.3


# ------------------------------------------------------------ permissibility


def test_permissibility_examples():
    assert permissibility(Coupling(0.8), ConnectionMatrix(-math.pi / 2, math.pi / 4)).permissible
    rep = permissibility(Coupling(FIG3[0]), ConnectionMatrix(*FIG3[1:]))
    assert not rep.permissible and rep.type2_negative_count == 4
    assert all(lv.lam < 0 for lv in rep.negative_levels)
    for nu in (0.8, 1.2):
        for case in ExplicitCase:
            assert permissibility(Coupling(nu), case.connection).permissible


def test_separating_permissibility_uses_alpha_only():
    # Dirichlet/Neumann neighbours: a separating U with large cot(alpha/2) admits a negative level
    rep = permissibility(Coupling(0.8), ConnectionMatrix(0.2, 0.0))
    assert all(lv.series in (Series.SEP_A, Series.SEP_B) for lv in rep.negative_levels)
    assert rep.permissible == (not rep.negative_levels)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.55, 1.45).filter(lambda v: abs(v - 1) > 1e-2), st.floats(0.05, math.pi / 2 - 0.05))
def test_positivity_region_property(nu, beta):
    assert permissibility(Coupling(nu), ConnectionMatrix(-math.pi / 2, beta)).permissible
