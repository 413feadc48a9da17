"""Lie closure, classification, certificates, and the bracket table."""

import numpy as np
import pytest

from _oracles import matrix_lie_dim, random_psd, two_level_system
from lindbladctl import (ACCESSIBLE_LABELS, AffineGenerator, ControlSystem,
                        GksMatrix, accessibility, adjoint_generator,
                        assemble_dissipator, bracket, classify, closure,
                        gellmann_basis, hamiltonian_controllability,
                        m_matrix, noncontrollability_certificates, preset,
                        verify_structure_constants)
from lindbladctl.cli import TAXONOMY_CASES, _two_level_system


def test_closure_of_rotations_alone():
    c = closure([m_matrix(1), m_matrix(2)])
    assert c.dim == 3 and c.converged
    assert c.classification == "ad_su"
    assert c.generations == 1


def test_closure_phase_flip_saturates_at_dim_nine():
    c = closure([m_matrix(1), m_matrix(2), m_matrix(3), m_matrix(12)])
    assert c.dim == 9
    assert c.generations == 2
    assert c.converged
    assert c.classification == "gl(n)"
    # closure stays linear: no translation ever appears
    for g in c.basis:
        assert np.max(np.abs(g.translation)) < 1e-12


def test_closure_reaches_full_affine_algebra():
    sys_ad = preset("amplitude_damping", gamma=1.0)
    c = closure([sys_ad.drift, *sys_ad.controls])
    assert c.dim == 12
    assert c.classification == "gl(n) x R^n"
    # orthonormal basis in the flattened inner product
    flat = np.array([g.homogeneous.ravel() for g in c.basis])
    np.testing.assert_allclose(flat @ flat.T, np.eye(12), atol=1e-9)


def test_closure_generation_budget():
    sys_ad = preset("amplitude_damping", gamma=1.0)
    c = closure([sys_ad.drift, *sys_ad.controls], max_generations=1)
    assert not c.converged
    assert c.classification is None
    with pytest.raises(ValueError):
        classify(c)


def test_closure_input_validation():
    with pytest.raises(ValueError):
        closure([])
    with pytest.raises(ValueError):
        closure([AffineGenerator.zero(3)])


def test_classify_translation_only_subspaces():
    # rotations plus one translation direction: brackets generate all
    # translations, giving the semidirect extension of the rotation algebra
    gens = [m_matrix(1), m_matrix(2), m_matrix(3), m_matrix(9)]
    c = closure(gens)
    assert c.dim == 6
    assert c.classification == "(ad_su) x R^n"


def test_classify_isotropic_damping():
    c = closure([m_matrix(1), m_matrix(2), m_matrix(3),
                 m_matrix(10) + m_matrix(11) + m_matrix(12)])
    assert c.dim == 4
    assert c.classification == "ad_su + span(I)"


def test_taxonomy_cases():
    """Seven coefficient families, frozen closure dimensions and labels."""
    expected_dims = [case[2] for case in TAXONOMY_CASES]
    assert expected_dims == [8, 9, 6, 11, 12, 4, 7]
    for name, params, dim, label in TAXONOMY_CASES:
        acc = accessibility(_two_level_system(params))
        assert acc.closure_dim == dim, name
        assert acc.classification == label, name
        assert acc.accessible == (label in ACCESSIBLE_LABELS), name


def test_accessibility_verdicts_for_presets():
    assert not accessibility(preset("depolarizing")).accessible
    assert accessibility(preset("phase_flip")).accessible
    assert accessibility(preset("bit_flip")).accessible
    assert accessibility(preset("bit_phase_flip")).accessible
    acc = accessibility(preset("amplitude_damping"))
    assert acc.accessible and acc.closure_dim == 12
    assert acc.features == {"linear_dim": 9, "translation_dim": 3,
                            "has_trace": True}


def test_control_system_validation():
    basis = gellmann_basis(2)
    diss = assemble_dissipator(np.diag([0.0, 0.0, 1.0]).astype(complex),
                               basis)
    with pytest.raises(ValueError):
        # a dissipative generator is not a valid control
        ControlSystem(N=2, hamiltonian=AffineGenerator.zero(3),
                      controls=(diss,), dissipator=diss)
    with pytest.raises(ValueError):
        ControlSystem(N=2, hamiltonian=AffineGenerator.zero(8),
                      controls=(), dissipator=diss)
    system = ControlSystem(N=2, hamiltonian=AffineGenerator.zero(3),
                           controls=(), dissipator=diss)
    np.testing.assert_allclose(system.drift.homogeneous, diss.homogeneous)


def test_certificates_unital_channel():
    report = noncontrollability_certificates(preset("depolarizing", gamma=0.5))
    assert report.active_names == ("trace", "unital", "finite_time")
    trace_cert = report.certificates[0]
    assert trace_cert.value == pytest.approx(-6.0 * 0.5)
    assert report.note is None


def test_certificates_phase_flip_trace_value():
    report = noncontrollability_certificates(preset("phase_flip", gamma=0.7))
    assert "trace" in report.active_names and "unital" in report.active_names
    assert report.certificates[0].value == pytest.approx(-2.0 * 0.7)


def test_certificates_amplitude_damping():
    report = noncontrollability_certificates(
        preset("amplitude_damping", gamma=0.7))
    assert report.active_names == ("trace", "finite_time")
    assert report.certificates[0].value == pytest.approx(-2.0 * 0.7)
    assert not report.certificates[1].active
    assert report.note is not None and "full ball" in report.note


def test_certificates_vanish_without_dissipation():
    system = ControlSystem(N=2, hamiltonian=1.0 * m_matrix(3),
                           controls=(m_matrix(1),),
                           dissipator=AffineGenerator.zero(3))
    report = noncontrollability_certificates(system)
    assert report.active_names == ()


def test_hamiltonian_controllability_two_level():
    basis = gellmann_basis(2)
    ez = np.eye(3)[2]
    ex = np.eye(3)[0]
    r = hamiltonian_controllability(basis, ez, [ex])
    assert r.controllable and r.dim == 3
    r = hamiltonian_controllability(basis, ez, [ez])
    assert not r.controllable and r.dim == 1
    r = hamiltonian_controllability(basis, None, [ex, ez])
    assert r.controllable
    with pytest.raises(ValueError):
        hamiltonian_controllability(basis, ez, [])


@pytest.mark.parametrize("N", [2, 3])
def test_hamiltonian_controllability_matches_matrix_oracle(N):
    basis = gellmann_basis(N)
    rng = np.random.default_rng(200 + N)
    for _ in range(5):
        h0 = rng.normal(size=basis.n)
        hks = [rng.normal(size=basis.n)]
        r = hamiltonian_controllability(basis, h0, hks)
        assert r.dim == matrix_lie_dim([h0, *hks], basis)
    # single repeated direction: always dimension 1
    h = rng.normal(size=basis.n)
    r = hamiltonian_controllability(basis, h, [h])
    assert r.dim == matrix_lie_dim([h, h], basis) == 1


def test_bracket_table_spot_checks():
    # a few brackets that hold entrywise
    np.testing.assert_allclose(
        bracket(m_matrix(1), m_matrix(12)).homogeneous,
        (-1.0 * m_matrix(8)).homogeneous, atol=1e-12)
    np.testing.assert_allclose(
        bracket(m_matrix(2), m_matrix(12)).homogeneous,
        m_matrix(6).homogeneous, atol=1e-12)
    np.testing.assert_allclose(
        bracket(m_matrix(1), m_matrix(6)).homogeneous,
        (-1.0 * m_matrix(4)).homogeneous, atol=1e-12)
    np.testing.assert_allclose(
        bracket(m_matrix(5), m_matrix(10)).homogeneous,
        m_matrix(5).homogeneous, atol=1e-12)


def test_structure_constant_report_inventory():
    """The recomputation disagrees with the coefficient table in exactly
    eight slots; the deviations are frozen here so any change is loud."""
    report = verify_structure_constants()
    assert report.pairs_checked == 66
    assert report.coefficients_checked == 792
    assert report.max_expansion_residual < 1e-12
    observed = {(j, k, l): (expected, round(computed, 9))
                for j, k, l, expected, computed in report.mismatches}
    assert observed == {
        (1, 8, 11): (-1.0, -2.0),
        (1, 8, 12): (1.0, 2.0),
        (2, 5, 9): (-1.0, 1.0),
        (2, 6, 10): (1.0, 2.0),
        (2, 6, 11): (-1.0, 0.0),
        (2, 6, 12): (0.0, -2.0),
        (3, 4, 10): (-1.0, -2.0),
        (3, 4, 11): (1.0, 2.0),
    }
    assert not report.ok


def test_random_psd_never_hits_traceless_labels():
    rng = np.random.default_rng(77)
    forbidden = {"sl(n)", "(ad_su) x R^n", "sl(n) x R^n"}
    for _ in range(25):
        system = two_level_system(random_psd(rng, 3))
        acc = accessibility(system)
        assert acc.classification not in forbidden
        assert np.trace(system.dissipator.linear) < -1e-10
