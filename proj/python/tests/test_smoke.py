import math

import pytest

import semisym


def test_corpus_is_exposed():
    names = semisym.corpus_names()
    assert "nariai" in names and "schwarzschild" in names
    f = semisym.load_metric_file("corpus:nariai")
    assert f.coordinates == ["t", "x", "theta", "phi"]
    assert len(f.points) == 5
    assert f.declared_static


def test_analyze_matches_golden_branches():
    for name in semisym.corpus_names():
        f = semisym.load_metric_file("corpus:" + name)
        report = semisym.analyze(f, seed=7)
        assert {p["classification"]["branch"] for p in report} == {f.expect["branch"]}


def test_analyze_accepts_a_path_and_a_point():
    report = semisym.analyze("corpus:schwarzschild", point="p1")
    assert len(report) == 1
    assert report[0]["residuals"]["semi"]["verdict"] == "fails"


def test_np_scalars_of_schwarzschild():
    f = semisym.load_metric_file("corpus:schwarzschild")
    np = semisym.np_scalars(f, "p1")
    assert np["psi"][2] == pytest.approx(-1 / 27, abs=1e-14)
    assert abs(np["R"]) < 1e-13


def test_petrov_and_rotations():
    psi = [0, 0, 1, 0, 0]
    moved = semisym.null_rotate(semisym.null_rotate(psi, 0.3 + 0.1j, "k"), -0.2j, "l")
    assert semisym.petrov_type(moved) == "D"
    assert semisym.petrov_type_by_roots(moved) == "D"
    assert semisym.pnd_multiplicities([0, 0, 0, 1, 0]) == [3, 1]
    with pytest.raises(ValueError):
        semisym.null_rotate(psi, 1.0, "x")


def test_condition_checks():
    for branch in ("N", "D"):
        d = semisym.condition_data(branch, 2.0)
        assert semisym.weyl_condition_1(d["psi"], d["R"]) < 1e-13
        assert semisym.contracted_condition(d["psi"], d["R"]) < 1e-13
        assert semisym.weyl_condition_2(d["psi"], d["phi"]) < 1e-13
        assert semisym.ricci_commutator(d["psi"], d["phi"], d["R"]) < 1e-13
    assert semisym.contracted_condition([0, 0, 0, 1, 0], 0.0) > 1e-3


def test_errors_map_to_python_exceptions():
    with pytest.raises(semisym.MetricFileError):
        semisym.load_metric_file("corpus:nope")
    with pytest.raises(ValueError):
        semisym.parse_metric_file("[chart]\ncoords = t, x\n")
    assert math.isfinite(semisym.analyze("corpus:minkowski")[0]["tolerances"]["tol"])
