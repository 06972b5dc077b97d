import pytest

import vfa


def test_partition_dimensions():
    assert vfa.weight_dimensions(["x"], max_weight=8) == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_relation_kills_mixed_products():
    dims = vfa.weight_dimensions(["x", "y"], ["x*y"], max_weight=3)
    assert dims[:2] == [1, 2]
    assert dims[2] < vfa.weight_dimensions(["x", "y"], max_weight=3)[2]


def test_modes_match_reconstruction():
    assert vfa.mode("x0", "x0", -2) == "x1*x0"
    for n in range(-4, 2):
        assert vfa.mode("x0 + x1", "x0^2", n, max_weight=5) == vfa.reconstructed_mode(
            "x0 + x1", "x0^2", n, max_weight=5
        )


def test_run_command_reports():
    report = vfa.run_command("vertex check", samples=10, max_weight=4, seed=3)
    assert set(report) == {"command", "params", "checks", "timing_ms", "result"}
    assert vfa.passed(report)
    coeq = vfa.run_command("fact coeq", radii="1,2,3", max_weight=3)
    assert vfa.passed(coeq)


def test_negative_control_fails():
    report = vfa.run_command("num swap", samples=1, max_weight=3, max_n=0, perturb=True)
    assert not vfa.passed(report)


def test_errors_raise():
    with pytest.raises(ValueError):
        vfa.mode("x0", "z9", -1)
    with pytest.raises(ValueError):
        vfa.run_command("no such command")
    assert "jet-xy" in vfa.presets()
