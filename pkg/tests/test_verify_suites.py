"""Verification checks not already exercised elsewhere in the test
suite, so a green pytest run implies `bikegeo verify --suite all`
exits 0."""

import pytest

from bikegeo import verify


@pytest.mark.parametrize("check", [
    verify.check_flip_residual_slack,
    verify.check_act_composition,
    verify.check_st_roundtrip,
    verify.check_momenta_constant,
    verify.check_unit_speed_constraint,
    verify.check_reduced_full_agreement,
    verify.check_rk4_order,
    verify.check_curvature_extremes,
    verify.check_classify_grid,
    verify.check_width_is_strip_infimum,
    verify.check_flip_identity_exact,
    verify.check_closed_form_widths,
    verify.check_soliton_arclength_and_profile,
    verify.check_line_lift_theta_ode,
    verify.check_soliton_geodesic_matches_closed_form,
    verify.check_transport_monotone,
    verify.check_transport_composition_reparam,
    verify.check_correspondent_involution,
    verify.check_correspondent_of_line,
    verify.check_threshold_arithmetic,
    verify.check_shortcut_grid,
    verify.check_metric_line_candidates,
    verify.check_csv_roundtrip,
    verify.check_svg_presets,
], ids=lambda fn: fn.__name__)
def test_verify_check(check):
    ok, detail = check()
    assert ok, detail
