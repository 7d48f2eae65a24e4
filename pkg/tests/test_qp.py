import numpy as np
import pytest

from taperopt.errors import InfeasibleError, SolverError
from taperopt.numerics import eig_sym
from taperopt.polytope import validate_window, window_from_mixture
from taperopt.qp import (
    ReducedQP,
    SolverOptions,
    build_qp,
    equality_minimizer,
    equality_minimizer_tilde,
    equality_multiplier,
    in_simplex,
    solve,
    unconstrained_minimizer,
)
from taperopt.signal import loss_direct

from conftest import random_simplex, random_suite

Y5 = [1, 2, 3, 4, 5]


def synthetic_qp(Q, b, r0=0.0):
    """QP with hand-picked Q, b; the other fields are unused by the closed forms."""
    Q = np.asarray(Q, float)
    return ReducedQP(Q=Q, b=np.asarray(b, float), Q_tilde=Q, r0=r0, vm=None, stats=None)


class TestBuild:
    def test_worked_instance(self):
        qp = build_qp(Y5, 2)
        np.testing.assert_allclose(qp.Q, [[47.5, 45], [45, 45.625]], atol=1e-12)
        np.testing.assert_allclose(qp.b, [45, 42.5], atol=1e-12)
        np.testing.assert_allclose(qp.Q_tilde, [[12.5, 12.5], [12.5, 15.625]], atol=1e-12)
        assert qp.r0 == 55

    def test_constant_signal(self):
        qp = build_qp([1] * 5, 2)
        assert np.abs(qp.Q_tilde).max() <= 1e-12

    def test_identity_between_forms(self):
        for y in random_suite(21, 30, [5, 7, 9, 11]):
            qp = build_qp(y)
            e = np.ones(qp.k_eff)
            expect = qp.r0 * np.outer(e, e) - np.outer(e, qp.b) - np.outer(qp.b, e) + qp.Q
            assert np.abs(qp.Q_tilde - expect).max() <= 1e-9 * qp.scale

    def test_psd(self):
        for y in random_suite(22, 30, [5, 9, 13]):
            qp = build_qp(y)
            for M in (qp.Q, qp.Q_tilde):
                assert eig_sym(M)[0][-1] >= -1e-8 * max(np.trace(M), 1.0)

    @pytest.mark.parametrize("k", [0, 3])
    def test_k_range(self, k):
        with pytest.raises(ValueError):
            build_qp(Y5, k)

    def test_reduced_width_embeds(self):
        qp = build_qp(list(range(1, 10)), 2)
        assert qp.Q.shape == (2, 2) and qp.vm.V.shape == (9, 2)


def test_objective_equivalence(rng):
    for y in random_suite(23, 20, [5, 7, 9, 11]):
        qp = build_qp(y)
        for p in random_simplex(rng, qp.k_eff, size=100):
            w = window_from_mixture(p, qp.vm)
            assert abs(qp.tilde_objective(p) - loss_direct(y, w)) <= 1e-8 * qp.scale
            shift = qp.tilde_objective(p) - (p @ qp.Q @ p - 2 * qp.b @ p)
            assert abs(shift - qp.r0) <= 1e-8 * qp.scale


class TestClosedForms:
    def test_unconstrained_worked(self):
        p = unconstrained_minimizer(build_qp(Y5, 2))
        np.testing.assert_allclose(p, [90 / 91, -4 / 91], atol=1e-12)
        assert not in_simplex(p)

    def test_unconstrained_scalar(self):
        qp = build_qp(Y5, 1)
        assert unconstrained_minimizer(qp)[0] == pytest.approx(qp.b[0] / qp.Q[0, 0])

    def test_unconstrained_identity(self):
        np.testing.assert_allclose(unconstrained_minimizer(synthetic_qp(np.eye(4), np.full(4, 0.25))), 0.25)

    def test_equality_worked(self):
        qp = build_qp(Y5, 2)
        np.testing.assert_allclose(equality_minimizer(qp), [1, 0], atol=1e-12)
        assert equality_multiplier(qp) == pytest.approx(2.5, abs=1e-10)

    def test_equality_single_vertex(self):
        np.testing.assert_allclose(equality_minimizer(build_qp(Y5, 1)), [1.0], atol=1e-12)

    def test_equality_symmetric(self):
        np.testing.assert_allclose(equality_minimizer(synthetic_qp(np.eye(3), np.zeros(3))), 1 / 3)

    def test_equality_sums_to_one(self):
        for y in random_suite(24, 30, [5, 7, 9, 11]):
            p = equality_minimizer(build_qp(y))
            assert abs(p.sum() - 1) <= 1e-10

    def test_routes_agree(self):
        for y in random_suite(25, 40, [5, 7, 9, 11]):
            qp = build_qp(y)
            if np.linalg.matrix_rank(qp.Q_tilde) < qp.k_eff:
                continue
            np.testing.assert_allclose(equality_minimizer(qp), equality_minimizer_tilde(qp), atol=1e-8)


@pytest.mark.parametrize(
    "p, expected",
    [([0.5, 0.5], True), ([0.989011, -0.043956], False), ([1, 0], True), ([0.5, 0.6], False)],
)
def test_in_simplex(p, expected):
    assert in_simplex(p, 1e-9) is expected


class TestSolve:
    def test_worked(self):
        rep = solve(Y5, 2)
        assert rep.stage == "equality" and not rep.degenerate
        np.testing.assert_allclose(rep.mixture, [1, 0], atol=1e-12)
        np.testing.assert_allclose(rep.window, [0, 0.5, 0, 0.5, 0], atol=1e-12)
        assert rep.loss == pytest.approx(12.5, abs=1e-10)

    def test_constant(self):
        rep = solve([1] * 5, 2)
        assert rep.degenerate and rep.loss == 0
        np.testing.assert_array_equal(rep.mixture, [0.5, 0.5])

    def test_forced_projection(self):
        rep = solve(Y5, 2, SolverOptions(method="project"))
        assert rep.stage == "projection"
        assert abs(rep.loss - 12.5) <= 1e-6
        np.testing.assert_allclose(rep.mixture, [1, 0], atol=1e-4)

    def test_closed_raises_when_infeasible(self):
        for y in random_suite(26, 40, [9, 11]):
            if solve(y).stage == "projection":
                with pytest.raises(InfeasibleError):
                    solve(y, opts=SolverOptions(method="closed"))
                return
        pytest.fail("suite produced no projection-stage instance")

    def test_solver_failure_has_report(self):
        for y in random_suite(27, 40, [11, 13]):
            if solve(y).stage == "projection" and solve(y).iterations > 1:
                with pytest.raises(SolverError) as info:
                    solve(y, opts=SolverOptions(method="project", max_iter=1))
                assert info.value.report.converged is False
                return
        pytest.fail("no multi-iteration instance found")

    def test_bad_method(self):
        with pytest.raises(ValueError):
            SolverOptions(method="newton")

    def test_stages_all_exercised(self):
        stages = {solve(y).stage for y in random_suite(28, 60, [5, 7, 9, 11])}
        assert {"equality", "projection"} <= stages

    def test_report_invariants(self, solver_suite):
        for y, k in solver_suite:
            rep = solve(y, k)
            qp = build_qp(y, k)
            assert rep.loss >= 0
            assert abs(rep.loss - loss_direct(y, rep.window)) <= 1e-8 * qp.scale
            np.testing.assert_allclose(rep.window, window_from_mixture(rep.mixture, qp.vm))
            assert validate_window(rep.window, 1e-9)
            # first-order optimality over the simplex
            g = qp.Q_tilde @ rep.mixture
            assert g.min() >= rep.mixture @ g - 1e-6 * qp.scale
            # no worse than any vertex or the uniform mixture
            for i in range(k):
                assert rep.loss <= qp.Q_tilde[i, i] + 1e-8 * qp.scale
            u = np.full(k, 1 / k)
            assert rep.loss <= qp.tilde_objective(u) + 1e-8 * qp.scale

    def test_reversal(self, solver_suite):
        for y, k in solver_suite:
            a, b = solve(y, k), solve(y[::-1].copy(), k)
            assert abs(a.loss - b.loss) <= 1e-8 * build_qp(y, k).scale

    def test_projection_matches_cascade(self, solver_suite):
        for y, k in solver_suite:
            a = solve(y, k)
            b = solve(y, k, SolverOptions(method="project"))
            assert abs(a.loss - b.loss) <= 1e-6 * build_qp(y, k).scale

    def test_deterministic(self):
        y = random_suite(29, 1, [11])[0]
        a, b = solve(y), solve(y.copy())
        assert np.array_equal(a.mixture, b.mixture) and a.iterations == b.iterations
