import dataclasses

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from twinvest.continuous import (
    ContinuousEffortModel,
    agent_expected_utility,
    contract_for_effort,
    foc_residual,
    limited_liability_binding,
    principal_optimal_effort,
    two_outcome_wage_comparison,
    validate_continuous,
)
from twinvest.contracts import Contract
from twinvest.families import ParametricFamily as F
from twinvest.fixtures import f5
from twinvest.model import DomainError
from twinvest.sampling import random_continuous_models


@st.composite
def sqrt_like_models(draw):
    # concave power success curves bounded inside (0, 1]
    a = draw(st.floats(0.0, 0.2))
    gamma = draw(st.floats(0.3, 1.0))
    e_max = draw(st.floats(0.5, 1.5))
    b = draw(st.floats(0.05, (0.95 - a) / e_max**gamma))
    return ContinuousEffortModel(
        p=F.power(a, b, gamma),
        c0=draw(st.floats(0.05, 0.5)),
        e_min=draw(st.floats(0.02, 0.2)),
        e_max=e_max,
        s_high=draw(st.floats(0.5, 3.0)),
        s_low=0.0,
    )


class TestContractForEffort:
    def test_f5_quarter_effort(self):
        # p' = 1 at e = 0.25: floor binds, spread is the full wage
        c = contract_for_effort(f5(), 0.25)
        assert c == Contract(0.25, 0.0)
        assert limited_liability_binding(f5(), 0.25)

    def test_f5_full_effort(self):
        # p' = 0.5 at e = 1
        c = contract_for_effort(f5(), 1.0)
        assert c.t_high == pytest.approx(0.5)
        assert c.t_low == 0.0

    def test_vanishing_cost_limit(self):
        cheap = dataclasses.replace(f5(), c0=1e-14)
        c = contract_for_effort(cheap, 0.5)
        assert c.t_high == pytest.approx(0.0, abs=1e-12)
        assert c.t_low == 0.0

    def test_slack_liability_branch(self):
        # negative intercept makes p/p' fall below e, so participation binds
        model = ContinuousEffortModel(F.affine(-0.1, 0.9), 0.3, 0.2, 1.0, 2.0, 0.0)
        assert validate_continuous(model).passed
        e = 0.8
        assert not limited_liability_binding(model, e)
        c = contract_for_effort(model, e)
        p = float(model.p.value(e))
        slope = float(model.p.derivative(e))
        assert c.t_low == pytest.approx(0.3 * e - p / slope * 0.3)
        # participation holds with equality when the floor is slack
        assert agent_expected_utility(model, e, c) == pytest.approx(0.0, abs=1e-12)
        # general form equals the max of the two closed-form branches
        assert c.t_high == pytest.approx(
            max(0.3 / slope, 0.3 * e + (1.0 - p) / slope * 0.3)
        )

    def test_out_of_range_effort(self):
        with pytest.raises(DomainError):
            contract_for_effort(f5(), 0.01)


class TestFocResidual:
    def test_induced_contract_is_stationary(self):
        assert foc_residual(f5(), 0.25, Contract(0.25, 0.0)) == pytest.approx(0.0, abs=1e-12)

    def test_overpaying_contract(self):
        assert foc_residual(f5(), 0.25, Contract(0.5, 0.0)) == pytest.approx(0.25)

    def test_flat_contract(self):
        assert foc_residual(f5(), 0.25, Contract(0.3, 0.3)) == pytest.approx(-0.25)

    @given(model=sqrt_like_models(), t=st.floats(0.0, 1.0))
    @settings(max_examples=100, deadline=None)
    def test_residual_vanishes_for_induced_contracts(self, model, t):
        e = model.e_min + t * (model.e_max - model.e_min)
        contract = contract_for_effort(model, e)
        assert abs(foc_residual(model, e, contract)) <= 1e-10

    @given(model=sqrt_like_models(), t=st.floats(0.0, 1.0))
    @settings(max_examples=100, deadline=None)
    def test_participation_holds_everywhere(self, model, t):
        e = model.e_min + t * (model.e_max - model.e_min)
        contract = contract_for_effort(model, e)
        assert agent_expected_utility(model, e, contract) >= -1e-12


class TestPrincipalOptimalEffort:
    def test_f5_boundary_optimum(self):
        # surplus 2*sqrt(e) - e/2 increases on the whole interval
        sol = principal_optimal_effort(f5())
        assert sol.e_opt == 1.0
        assert sol.principal_surplus == pytest.approx(1.5, abs=1e-12)
        assert sol.contract.t_high == pytest.approx(0.5)
        assert sol.liability_binding

    def test_f5_low_stakes_interior(self):
        # 0.2/sqrt(e) = 0.5 at e = 0.16
        sol = principal_optimal_effort(dataclasses.replace(f5(), s_high=0.4))
        assert sol.e_opt == pytest.approx(0.16, abs=1e-6)
        assert sol.principal_surplus == pytest.approx(0.08, abs=1e-9)

    def test_worthless_outcomes_pin_minimum_effort(self):
        sol = principal_optimal_effort(dataclasses.replace(f5(), s_high=0.0, s_low=0.0))
        assert sol.e_opt == f5().e_min


class TestValidateContinuous:
    def test_f5_passes_including_certain_success_at_top(self):
        assert validate_continuous(f5()).passed

    def test_convex_success_curve_rejected(self):
        model = dataclasses.replace(f5(), p=F.power(0.1, 0.5, 2.0))
        report = validate_continuous(model)
        assert not report.passed
        assert report.violation.condition == "p-concave"

    def test_decreasing_success_curve_rejected(self):
        model = dataclasses.replace(f5(), p=F.exponential_decay(0.5, 1.0))
        report = validate_continuous(model)
        assert not report.passed
        assert report.violation.condition in ("p-increasing", "p-concave")

    def test_probability_above_one_rejected(self):
        model = dataclasses.replace(f5(), p=F.affine(0.5, 0.8))
        report = validate_continuous(model)
        assert not report.passed
        assert report.violation.condition == "p-in-unit-interval"

    def test_effort_bounds(self):
        with pytest.raises(ValueError, match="e_min"):
            ContinuousEffortModel(F.power(0.0, 1.0, 0.5), 0.25, 0.0, 1.0, 2.0, 0.0)


class TestTwoOutcomeComparison:
    def test_same_order_of_magnitude(self):
        for model in random_continuous_models(20, 5):
            span = model.e_max - model.e_min
            cmp = two_outcome_wage_comparison(
                model, model.e_min + 0.25 * span, model.e_min + 0.75 * span
            )
            assert 0.1 < cmp.ratio < 10.0

    def test_converges_as_points_merge(self):
        ratios = []
        for delta in (0.5, 0.1, 0.01, 0.001):
            cmp = two_outcome_wage_comparison(f5(), 1.0 - delta, 1.0)
            ratios.append(abs(cmp.ratio - 1.0))
        assert ratios == sorted(ratios, reverse=True)
        assert ratios[-1] < 1e-3

    def test_requires_ordered_points(self):
        with pytest.raises(ValueError, match="e_low < e_high"):
            two_outcome_wage_comparison(f5(), 0.5, 0.5)
