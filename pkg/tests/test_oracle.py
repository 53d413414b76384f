import dataclasses

import pytest

from twinvest.dynamics import AgentKind, EffortLevel
from twinvest.fixtures import f1, f2, f3, f4, f5
from twinvest.oracle import (
    brute_force_contract,
    brute_force_effort,
    brute_force_investment,
    brute_force_two_period,
    certify_contract,
    certify_continuous,
    certify_investment,
    certify_regimes,
    certify_two_period,
    run_certification,
)
from twinvest.sampling import random_continuous_models, random_models


class TestBruteForceInvestment:
    def test_f1_full_training(self):
        v, rent = brute_force_investment(f1(), step=1e-4)
        assert v == 1.0
        assert rent == pytest.approx(1.0 / 6.0, abs=1e-6)

    def test_f3_interior(self):
        v, rent = brute_force_investment(f3(), step=1e-4)
        assert v == pytest.approx(0.1223, abs=1e-3)
        assert rent == pytest.approx(0.06743057, abs=1e-7)

    def test_f2_stops_at_last_feasible_point(self):
        v, _ = brute_force_investment(f2(), step=1e-4)
        assert v == pytest.approx(0.9034, abs=2e-4)

    def test_unconstrained_variant(self):
        v, _ = brute_force_investment(f2(), step=1e-3, enforce_deterrent=False)
        assert v == 1.0

    def test_empty_feasible_set(self):
        model = dataclasses.replace(f1(), s_high=0.2)
        assert brute_force_investment(model, step=1e-3) is None

    def test_ties_toward_smaller_v(self):
        # constant primitives: rent is flat, enumeration must return 0
        from twinvest.families import ParametricFamily as F
        from twinvest.model import ModelPrimitives

        model = ModelPrimitives(F.constant(0.2), F.constant(0.7), F.constant(0.1),
                                1.0, 2.0, 0.0)
        v, _ = brute_force_investment(model, step=1e-3)
        assert v == 0.0


class TestBruteForceContract:
    def test_f1_at_zero(self):
        c = brute_force_contract(f1(), 0.0)
        assert c.t_high == pytest.approx(0.4, abs=1e-3)
        assert c.t_low == 0.0

    def test_f1_at_one(self):
        c = brute_force_contract(f1(), 1.0)
        assert c.t_high == pytest.approx(1.0 / 3.0, abs=1e-3)
        assert c.t_low == 0.0

    def test_vanishing_cost(self):
        from twinvest.families import ParametricFamily as F

        cheap = dataclasses.replace(f1(), cost=F.constant(1e-13))
        c = brute_force_contract(cheap, 0.5)
        assert c.t_high == 0.0
        assert c.t_low == 0.0

    def test_infeasible_when_wage_exceeds_grid(self):
        model = dataclasses.replace(f1(), s_high=0.3)
        # wage at v=0 is 0.4 > 0.3, so no effort-inducing pair on [0, 0.3]^2
        assert brute_force_contract(model, 0.0) is None


class TestBruteForceEffort:
    def test_f5(self):
        e, surplus = brute_force_effort(f5())
        assert e == 1.0
        assert surplus == pytest.approx(1.5, abs=1e-9)

    def test_f5_low_stakes(self):
        e, surplus = brute_force_effort(dataclasses.replace(f5(), s_high=0.4))
        assert e == pytest.approx(0.16, abs=1e-4)
        assert surplus == pytest.approx(0.08, abs=1e-8)


class TestBruteForceTwoPeriod:
    def test_f2_myopic_displaced(self):
        trace = brute_force_two_period(f2(), AgentKind.MYOPIC)
        assert trace.displacement_period == 2
        assert trace.records[0].effort is EffortLevel.LOW

    def test_f1_myopic_retained(self):
        trace = brute_force_two_period(f1(), AgentKind.MYOPIC)
        assert trace.displacement_period is None
        assert all(r.effort is EffortLevel.HIGH for r in trace.records)

    def test_f2_strategic_near_threshold(self):
        trace = brute_force_two_period(f2(), AgentKind.STRATEGIC)
        assert trace.displacement_period is None
        assert trace.records[0].investment == pytest.approx(0.9034, abs=1e-3)


class TestCertification:
    def test_contract_on_fixtures(self):
        cases = [
            (name, model, v)
            for name, model in [("f1", f1()), ("f2", f2()), ("f3", f3()), ("f4", f4())]
            for v in (0.0, 0.5, 1.0)
        ]
        report = certify_contract(cases)
        assert report.passed
        assert report.checks == 12

    def test_investment_on_fixtures_and_random(self):
        cases = [("f1", f1()), ("f2", f2()), ("f3", f3()), ("f4", f4())]
        cases += [(f"r{i}", m) for i, m in enumerate(random_models(20, 21))]
        report = certify_investment(cases)
        assert report.passed
        assert report.max_v_error <= 1e-3

    def test_regimes_on_random(self):
        cases = [(f"r{i}", m) for i, m in enumerate(random_models(20, 22))]
        assert certify_regimes(cases).passed

    def test_two_period_on_fixtures(self):
        report = certify_two_period([("f1", f1()), ("f2", f2())])
        assert report.passed
        assert report.checks == 4

    def test_continuous_on_fixture_and_random(self):
        cases = [("f5", f5())]
        cases += [(f"rc{i}", m) for i, m in enumerate(random_continuous_models(10, 23))]
        assert certify_continuous(cases).passed

    def test_corrupted_solver_detected(self, monkeypatch):
        # fault injection: a solver that reports the wrong optimum must
        # surface as a disagreement, not pass silently
        import twinvest.oracle as oracle_module
        from twinvest.investment import optimal_investment as real_solver

        def corrupted(model, *args, **kwargs):
            sol = real_solver(model, *args, **kwargs)
            return dataclasses.replace(sol, v_opt=0.5 * sol.v_opt, u_at_opt=0.0)

        monkeypatch.setattr(oracle_module, "optimal_investment", corrupted)
        report = certify_investment([("f1", f1())])
        assert not report.passed
        assert report.disagreements

    def test_report_serialization(self):
        report = certify_contract([("f1", f1(), 0.0)])
        payload = report.to_dict()
        assert payload["target_op"] == "optimal_contract"
        assert payload["disagreements"] == []
        assert "PASS" in report.describe()


def test_run_certification_fixtures_only():
    reports = run_certification(seed=5, n_models=0)
    assert len(reports) == 5
    assert all(r.passed for r in reports)
