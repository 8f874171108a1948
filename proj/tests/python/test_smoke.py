import math

import pytest

import kontact


def test_s3_suite_passes():
    reports = kontact.run_suite("s3", samples=50, seed=7)
    assert reports, "suite returned no reports"
    failing = [r.check_name for r in reports if not r.passed]
    assert failing == []


def test_describe_s3_blocks():
    d = kontact.describe("s3")
    assert d["J1_blocks"] == [1, 1]
    assert d["J2_blocks"] == [-1, 1]


def test_describe_s5_offset():
    assert kontact.describe("s5")["golden_constants"]["expected_c0"] == -4


def test_unknown_manifold_is_a_value_error():
    with pytest.raises(ValueError):
        kontact.describe("s9")


def test_report_schema():
    doc = kontact.report("s3", samples=20)
    assert set(doc) >= {"config", "convention_ledger", "reports"}
    assert doc["config"]["samples"] == 20


def test_reeb_energy_matches_closed_form():
    e = kontact.energy("s3", samples=2000)
    assert math.isclose(e["value"], 5 * math.pi**2, rel_tol=1e-12)
    assert math.isclose(kontact.reeb_energy_closed_form(3), 5 * math.pi**2, rel_tol=1e-15)


def test_angle_function_laplacian_on_s3():
    p = [0.6, 0.0, 0.0, 0.8]
    f = kontact.angle_function("s3", p)
    assert abs(f - (0.8**2 - 0.6**2)) < 1e-14
    assert abs(kontact.laplacian_of_angle_function("s3", p) - 8 * f) < 1e-12


def test_point_off_the_sphere_is_rejected():
    with pytest.raises(kontact.KontactError):
        kontact.angle_function("s3", [1.0, 1.0, 0.0, 0.0])
