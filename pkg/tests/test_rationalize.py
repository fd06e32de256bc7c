import json

import pytest

from heisrat.intlattice import Lattice, kernel_of_congruence, lattice_equal
from heisrat.laurent import LaurentPolynomial, order_of, pullback
from heisrat.rationalize import (
    CITE_CHU_KANG_LINEARIZE,
    CITE_CHU_KANG_REDUCTION,
    CITE_FISCHER,
    CITE_TRIVIAL,
    build_certificate,
    fischer_step,
    lambda_step,
    linearize_step,
    projective_tower,
    tail_reduction,
    tower_data,
    w_step,
    xi_step,
)


def mono(e, names=None):
    return LaurentPolynomial.monomial(e, 1, names)


def test_lambda_step_n3():
    step = lambda_step(3)
    assert step.status == "Verified"
    expected = kernel_of_congruence([[1, 1, 1]], [3])
    assert [list(r) for r in expected.basis] == step.witness["candidate_hnf"]
    assert step.witness["index"] == 3


def test_lambda_step_n2():
    step = lambda_step(2)
    assert step.passed and step.witness["index"] == 2


def test_residual_eta_on_y():
    n = 5
    t = tower_data(n)
    y = [LaurentPolynomial.variable(n, i) for i in range(n)]
    assert pullback(y[n - 1], t.eta_y) == (y[1] * y[2] * y[3] * y[4]) ** -1
    assert pullback(y[0], t.eta_y) == y[0] * y[1] ** n


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_tail_reduction(n):
    step = tail_reduction(n)
    assert step.status == "Cited" and step.citation == CITE_CHU_KANG_REDUCTION
    assert all(step.witness["y0_exponent_free"].values())
    assert step.checks["eta_y0_involves_y0"]


def test_xi_step_n3():
    t = tower_data(3)
    z1, z2 = mono((1, 0)), mono((0, 1))
    assert pullback(z1, t.eta_z) == z1 * z2 ** 3
    assert pullback(z2, t.eta_z) == z1 ** -1 * z2 ** -2
    step = xi_step(3)
    assert step.status == "Verified" and step.witness["index"] == 3


def test_w_step_n3():
    step = w_step(3)
    assert step.status == "Verified"
    assert step.witness["w_rows_over_z"] == [[0, 1], [-1, -2]] and step.witness["det"] == 1
    t = tower_data(3)
    w1, w2 = mono((1, 0)), mono((0, 1))
    assert pullback(w2, t.eta_w) == (w1 * w2) ** -1
    with pytest.raises(ValueError):
        w_step(2)


def test_w_cycle_n4():
    t = tower_data(4)
    w = [LaurentPolynomial.variable(3, i) for i in range(3)]
    assert pullback(w[0], t.eta_w) == w[1]
    assert pullback(w[1], t.eta_w) == w[2]
    assert pullback(w[2], t.eta_w) == (w[0] * w[1] * w[2]) ** -1


def test_linearize_n3():
    step = linearize_step(3)
    assert step.citation == CITE_CHU_KANG_LINEARIZE and step.passed
    assert step.witness["eta_W_last"] == "eta(W3) = u = W1"
    assert step.witness["diagonal_characters"] == [0, 2, 1]


@pytest.mark.parametrize("n", [2, 3, 5])
def test_fischer_step(n):
    step = fischer_step(n)
    assert step.citation == CITE_FISCHER and step.passed
    assert step.witness["index"] == step.witness["character_image_order"] == n


@pytest.mark.parametrize("n", range(3, 9))
def test_certificate_shape(n):
    cert = build_certificate(n)
    assert cert.verdict == "AllVerifiedOrCited"
    assert cert.citations == [CITE_CHU_KANG_REDUCTION, CITE_CHU_KANG_LINEARIZE, CITE_FISCHER]
    assert len(cert.steps) == 6
    assert any("omega" in d for d in cert.discrepancies)


def test_certificate_n2_is_trivial_case():
    cert = build_certificate(2)
    assert cert.steps[0].citation == CITE_TRIVIAL
    assert cert.verdict == "AllVerifiedOrCited"
    assert [s.name for s in cert.steps] == ["trivial_case", "lambda_step", "tail_reduction", "xi_step"]
    with pytest.raises(ValueError):
        build_certificate(1)


def test_certificate_n3_mentions_trivial_case():
    cert = build_certificate(3)
    assert any(CITE_TRIVIAL in note for note in cert.notes)


def test_serialization_deterministic():
    a = build_certificate(5).to_json()
    b = build_certificate(5).to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["version"] == 1 and doc["n"] == 5 and doc["verdict"] == "AllVerifiedOrCited"
    assert [s["status"] for s in doc["steps"]] == ["Verified", "Cited", "Verified", "Verified", "Cited", "Cited"]


@pytest.mark.parametrize("n", range(3, 9))
def test_eta_order_preserved(n):
    t = tower_data(n)
    for m in (t.eta_y, t.eta_tail, t.eta_z, t.eta_w, t.eta_ext):
        assert order_of(m, 10 * n) == n


@pytest.mark.parametrize("n", range(2, 9))
def test_projective_tower(n):
    rep = projective_tower(n)
    assert rep.passed


def test_projective_tower_n3_characters():
    rep = projective_tower(3)
    assert rep.witness["xi_characters"] == [2, 1]
    assert rep.witness["index"] == 3 and rep.witness["eta_order"] == 3


def test_z_lattice_equality_by_hnf():
    # independent recomputation: xi-invariants of the tail are {e : k * sum(e) = 0 mod n}
    for n in range(3, 7):
        t = tower_data(n)
        k = int(t.xi_tail.phases[0] * n)
        inv = kernel_of_congruence([[k] * (n - 1)], [n])
        assert lattice_equal(Lattice.from_rows(t.z_rows, n - 1), inv)
