import cmath
import math

import pytest

import qfourier as qf

SQRT2 = math.sqrt(2.0)


def test_q_exp_matches_exp_in_classical_limit():
    assert qf.q_exp(0.3 - 0.2j, 1.0) == pytest.approx(cmath.exp(0.3 - 0.2j), rel=1e-15)
    assert abs(qf.q_exp(1.0, 1.0 + 1e-8) - math.e) < 1e-6


def test_q_exp_branch_cut_raises():
    with pytest.raises(qf.BranchCutError):
        qf.q_exp(4.0, 1.5)


def test_gauss_2f1_log_identity():
    assert qf.gauss_2f1(1, 1, 2, 0.5) == pytest.approx(2 * math.log(2), rel=1e-14)


def test_hilhorst_lambda_and_inverse():
    assert qf.hilhorst_lambda(1, 2, 1.5) == pytest.approx(SQRT2, rel=1e-15)
    assert qf.solve_b_for_lambda(1.5, SQRT2, 1.5) == pytest.approx(6.0, rel=1e-12)
    with pytest.raises(qf.UnachievableTargetError) as info:
        qf.solve_b_for_lambda(1.0, 0.5, 1.5)
    assert info.value.infimum == pytest.approx(1.0)


def test_bad_arguments_raise_value_error():
    with pytest.raises(ValueError):
        qf.hilhorst_lambda(2, 1, 1.5)
    with pytest.raises(qf.DomainError):
        qf.DensitySpec.parse("cauchy:s=1")


def test_density_normalization():
    fam = qf.HilhorstFamily(0.5, 4.0, 1.3)
    assert qf.verify_normalization(fam) == pytest.approx(1.0, abs=1e-9)
    g = qf.QGaussianDensity(1.5, 1.0)
    assert 1.0 / g.normalization == pytest.approx(math.pi / SQRT2, rel=1e-9)


def test_diagonal_transform_matches_closed_form():
    d = qf.DensitySpec.parse("hilhorst:a=1,b=2,q=1.5")
    sample = qf.qft_real(d, 1.0, 1.5)
    expected = 1 / (0.5 - SQRT2 * 1j)
    assert abs(sample.value - expected) < 1e-10
    assert abs(qf.hilhorst_uts_closed(SQRT2, 1.5, 1.0) - expected) < 1e-15


def test_full_closed_form_matches_quadrature():
    fam = qf.HilhorstFamily(1, 2, 1.5)
    for qp in (1.3, 1.7):
        quad = qf.qft_complex(fam, 2j, qp).value
        closed = qf.hilhorst_full_closed(fam, 2j, qp)
        assert abs(closed - quad) <= 1e-8 * abs(quad)


def test_batch_preserves_order():
    ks = [complex(k, 0.0) for k in qf.linear_grid(-5, 5, 21)]
    samples = qf.qft_batch(qf.HilhorstFamily(1, 2, 1.5), ks, 1.3, workers=2)
    assert [s.k for s in samples] == ks


def test_collapse_and_separation():
    probe = qf.build_class(1.5, SQRT2, [1.0, 1.5])
    assert [m.b for m in probe.members] == pytest.approx([2.0, 6.0])
    collapse = qf.verify_collapse(probe, qf.linear_grid(-5, 5, 21))
    assert collapse.collapse_ok
    other = qf.build_class(1.5, 2.0, [0.5, 0.6])
    sep = qf.verify_separation(probe, other, qf.linear_grid(0.1, 5, 50))
    assert sep.separation_ok


def test_roundtrip_flags_jump():
    cfg = qf.InverseConfig(k_max=100, n_k=2048, x_points=[1.5, 2.0])
    report = qf.roundtrip(qf.HilhorstFamily(1, 2, 1.5), cfg)
    mid, jump = report.points
    assert not mid.flagged and jump.flagged
    assert mid.f_recovered == pytest.approx(8 / 9, abs=2e-2)
    assert report.l1_error == pytest.approx(mid.abs_err)


def test_criterion_names():
    assert len(qf.criterion_names()) == 8
