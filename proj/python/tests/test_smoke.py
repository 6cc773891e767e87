import os

import pytest

import spinor_forge as sf


def test_version_and_schema():
    assert sf.__version__
    assert sf.SCHEMA_VERSION == 1


def test_product_in_spacetime_algebra():
    m0 = sf.sta_element("m", 0)
    m1 = sf.sta_element("m", 1)
    assert sf.geometric_product(1, 3, m0, m0)[0] == 1.0
    assert sf.geometric_product(1, 3, m1, m1)[0] == -1.0
    i = sf.sta_element("pseudoscalar")
    assert sf.geometric_product(1, 3, i, i)[0] == -1.0


def test_rep_of_pauli_generator():
    sigma3 = sf.sta_element("sigma_up", 3)
    assert sf.rep(sigma3) == [[1, 0], [0, -1]]
    assert sf.rep(sf.sta_element("e_plus")) == [[0, 0], [0, 1]]
    assert sf.quaternion_orientation_sign() == -1


def test_expressions():
    assert sf.eval_expression("1 - 2/r", [0, 10, 0, 0]) == pytest.approx(0.8)
    assert sf.print_expression("-r^2") == "(-(x1 ^ 2))"
    with pytest.raises(sf.ParseError):
        sf.eval_expression("1 +", [0, 0, 0, 0])
    with pytest.raises(sf.DomainError):
        sf.eval_expression("1/r", [0, 0, 0, 0])


def test_selftest():
    doc, code = sf.selftest(seed=3)
    assert code == 0
    assert doc["verdict"] == "PASS"
    _, bad = sf.selftest(inject_fault=True)
    assert bad == 1


@pytest.mark.parametrize("spacetime,tetrad,expected", [
    ("minkowski", "inertial", "TELEPARALLEL"),
    ("schwarzschild", "static", "NONE"),
    ("eds", "comoving", "GEODESIC_FERMI"),
])
def test_classification(spacetime, tetrad, expected):
    doc, code = sf.report(spacetime=spacetime, tetrad=tetrad, points=8)
    assert doc["classification"] == expected
    assert code == 0
    assert doc["conventions"]["rep_e_projector"] == "diag(0,1)"


def test_report_is_deterministic():
    assert sf.report_text(spacetime="eds", points=8) == sf.report_text(spacetime="eds", points=8)


def test_custom_config():
    path = os.path.join(os.environ["SPINOR_FORGE_TEST_DATA"], "schwarzschild.cfg")
    doc, _ = sf.report(config=path, points=8)
    assert doc["classification"] == "NONE"
    bad = os.path.join(os.environ["SPINOR_FORGE_TEST_DATA"], "wrong_signature.cfg")
    with pytest.raises(sf.ConfigError):
        sf.report(config=bad)


def test_unknown_spacetime():
    with pytest.raises(ValueError):
        sf.report(spacetime="kerr")
