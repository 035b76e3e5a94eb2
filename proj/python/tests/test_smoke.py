import math
import os
import subprocess
import sys

import pytest

import _hslab as hs


def test_surface_tension_constant():
    prof = hs.asymptotics.solve_profile_ode(30.0, 1024)
    sigma = hs.asymptotics.surface_tension_integral(prof)
    assert abs(sigma - 2.0 / 3.0) <= 1e-8


def test_profile_is_odd_and_tanh_shaped():
    prof = hs.asymptotics.solve_profile_ode(20.0, 512)
    assert prof.eval(0.0) == pytest.approx(0.0, abs=1e-14)
    for r in (0.5, 1.0, 3.0, 7.0):
        assert prof.eval(r) == pytest.approx(-prof.eval(-r), abs=1e-12)
        assert prof.eval(r) == pytest.approx(math.tanh(r / 2.0), abs=1e-6)


def test_dispersion_rate_signs():
    k = 2.0 * math.pi
    assert hs.asymptotics.dispersion_rate(k, 0.001, 1.0) > 0.0
    assert hs.asymptotics.dispersion_rate(k, 1.0, 0.0) < 0.0
    oracle = hs.asymptotics.linear_growth_oracle(k, 0.0, 0.01, 1.0)
    exact = hs.asymptotics.dispersion_rate(k, 0.01, 1.0)
    assert oracle == pytest.approx(exact, rel=0.05)


def test_uniform_phase_field_is_a_fixed_point():
    u = hs.ScalarField2D(32, 32, 1.0, 1.0)
    phi = hs.ScalarField2D(32, 32, 1.0, 1.0)
    phi.fill(lambda x, y: 1.0)
    state = hs.phase_field.make_phase_field_state(u, phi, 0.05, 1.0)
    params = hs.PhysicalParams()
    dt = hs.phase_field.stable_dt(state, params)
    q0 = hs.phase_field.conserved_quantity(state)
    for _ in range(5):
        state = hs.phase_field.step_phase_field(state, dt, params)
    assert max(abs(v - 1.0) for v in state.phi.values()) <= 1e-13
    assert hs.phase_field.conserved_quantity(state) == pytest.approx(q0, abs=1e-12)
    assert state.t == pytest.approx(5 * dt)


def test_interface_extraction_finds_the_front():
    phi = hs.ScalarField2D(64, 64, 1.0, 1.0)
    hs.phase_field.fill_tanh_graph(phi, 0.5, 0.0, 1, 0.05)
    curve = hs.phase_field.extract_interface(phi)
    assert curve.topology == hs.Topology.PeriodicX
    assert all(abs(m.y - 0.5) <= 1e-10 for m in curve.markers)


def test_flat_undriven_sheet_is_stationary():
    flat = hs.make_periodic_graph(1.0, 32, lambda x: 0.25)
    state = hs.vortex_sheet.make_sheet_state(flat, 0.4, 0.05, 0.0)
    dt = hs.vortex_sheet.suggested_dt(state)
    before = [(m.x, m.y) for m in state.curve.markers]
    for _ in range(20):
        state = hs.vortex_sheet.advance_interface(state, dt)
    after = [(m.x, m.y) for m in state.curve.markers]
    drift = max(math.hypot(a[0] - b[0], a[1] - b[1]) for a, b in zip(after, before))
    assert drift <= 1e-12


def test_bubble_area_is_conserved():
    circle = hs.make_circle(hs.Vec2(0.5, 0.5), 0.25, 64)
    state = hs.vortex_sheet.make_sheet_state(circle, 0.0, 0.01, 1.0)
    area0 = state.curve.enclosed_area()
    for _ in range(50):
        state = hs.vortex_sheet.advance_interface(state, 1e-4)
    assert state.curve.enclosed_area() == pytest.approx(area0, rel=1e-3)


def test_nondimensional_groups():
    p = hs.PhysicalParams()
    p.mu2 = 3.0
    p.U_inf = 2.0
    p.a = 8.0
    assert hs.compute_atwood(p) == pytest.approx(0.5)
    assert hs.compute_B(p) == pytest.approx(1.0 / 3.0)
    assert hs.matching_constant(p) == pytest.approx(p.ell / p.K)
    assert hs.time_scale(p) == pytest.approx(p.W / hs.characteristic_speed(p))


def test_invalid_state_raises():
    u = hs.ScalarField2D(16, 16, 1.0, 1.0)
    phi = hs.ScalarField2D(32, 32, 1.0, 1.0)
    with pytest.raises(RuntimeError):
        hs.phase_field.make_phase_field_state(u, phi, 0.05, 1.0)


# --- command-line interface -------------------------------------------------

CLI = os.environ.get("HSLAB_CLI")
needs_cli = pytest.mark.skipif(CLI is None, reason="HSLAB_CLI not set")


@needs_cli
def test_cli_verify_passes(tmp_path):
    out = tmp_path / "verify"
    r = subprocess.run(
        [CLI, "verify", "--out", str(out), "--quiet"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0, r.stderr
    assert (out / "verify.txt").exists()
    assert (out / "manifest.txt").exists()


@needs_cli
def test_cli_run_produces_artifacts(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "schema = 1\n"
        "method = phase-field\n"
        "[numerics]\n"
        "nx = 32\n"
        "ny = 32\n"
        "eps = 0.08\n"
        "t_end = 0.001\n"
    )
    out = tmp_path / "run"
    r = subprocess.run(
        [CLI, "run", "--config", str(cfg), "--out", str(out), "--quiet"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0, r.stderr
    assert (out / "run.txt").exists()
    assert (out / "interface_final.csv").exists()
    assert (out / "manifest.txt").exists()


@needs_cli
def test_cli_rejects_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("schema = 1\nmethod = phase-field\n[numerics]\neps = -1\n")
    r = subprocess.run(
        [CLI, "run", "--config", str(cfg), "--out", str(tmp_path / "x")],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 2
    assert not (tmp_path / "x").exists()
