import numpy as np
import pytest

from indexlab import (
    OLS,
    CountryRecord,
    Dataset,
    DefinitionError,
    InsufficientDataError,
    NotFittedError,
    SingularDesignError,
    StepwiseOLS,
    ValidationError,
    anova,
    casewise_diagnostics,
    collinearity,
    durbin_watson,
    fit_ols,
    null_model,
    predict,
    stepwise_fit,
)
from indexlab.dataset import DIMENSIONS, IDESI, SII

IDT = "Integration of digital technology"


@pytest.fixture(scope="module")
def simple_fit(sorted_dataset):
    return fit_ols(sorted_dataset, SII, [IDESI])


@pytest.fixture(scope="module")
def five_fit(sorted_dataset):
    return fit_ols(sorted_dataset, SII, DIMENSIONS)


def test_simple_fit_frozen(simple_fit):
    fit = simple_fit
    assert fit.response == SII
    assert fit.predictors == (IDESI,)
    assert fit.n == 29
    assert fit.df_residual == 27
    np.testing.assert_allclose(
        fit.coefficients, (15.408148049231045, 0.8579099063007722), rtol=1e-12)
    np.testing.assert_allclose(
        fit.standard_errors, (7.53851192435457, 0.15023037912621104), rtol=1e-12)
    np.testing.assert_allclose(
        fit.t_values, (2.043924345261317, 5.710628644423695), rtol=1e-12)
    assert abs(fit.p_values[0].value - 0.05082799054285842) < 1e-12
    assert abs(fit.p_values[1].value - 4.550161577616684e-06) < 1e-16
    assert fit.standardized_betas[0] is None
    assert abs(fit.standardized_betas[1] - 0.7396388208037808) < 1e-12
    assert abs(fit.r - 0.7396388208037808) < 1e-12
    assert abs(fit.r_squared - 0.5470655852400075) < 1e-12
    assert abs(fit.adjusted_r_squared - 0.5302902365451929) < 1e-12
    assert abs(fit.rmse - 8.362705526769451) < 1e-12
    assert fit.intercept == fit.coefficients[0]
    assert fit.slope(IDESI) == fit.coefficients[1]


def test_simple_fit_anova(simple_fit):
    block = anova(simple_fit)
    assert block.df == 1
    assert abs(block.ss_regression - 2280.6647365999524) < 1e-9
    assert block.mean_square == block.ss_regression
    assert abs(block.f - 32.6112795145124) < 1e-10
    assert abs(block.p.value - 4.550161577616684e-06) < 1e-16


def test_null_model_frozen(sorted_dataset):
    fit = null_model(sorted_dataset, SII)
    assert fit.predictors == ()
    assert abs(fit.intercept - 57.53448275862069) < 1e-12
    assert abs(fit.standard_errors[0] - 2.265859681252317) < 1e-12
    assert abs(fit.t_values[0] - 25.391900140445582) < 1e-12
    assert fit.r == 0.0 and fit.r_squared == 0.0
    assert abs(fit.rmse - 12.202027813384984) < 1e-12
    assert fit.anova is None
    with pytest.raises(DefinitionError):
        anova(fit)


def test_durbin_watson_frozen(sorted_dataset, simple_fit):
    dw = durbin_watson(simple_fit, replicates=50, seed=42)
    assert abs(dw.d - 2.350860711828942) < 1e-12
    assert abs(dw.autocorrelation - (-0.23325347882818578)) < 1e-12
    h0 = durbin_watson(null_model(sorted_dataset, SII), replicates=50, seed=42)
    assert abs(h0.d - 2.2139623845702983) < 1e-12
    assert abs(h0.autocorrelation - (-0.16544956464020752)) < 1e-12


def test_durbin_watson_bootstrap_behavior(simple_fit):
    one = durbin_watson(simple_fit, replicates=2000, seed=42)
    two = durbin_watson(simple_fit, replicates=2000, seed=42)
    assert one.p.value == two.p.value
    # around the published 0.338; 2000 replicates keep sampling noise small
    assert 0.25 < one.p.value < 0.45
    other_seed = durbin_watson(simple_fit, replicates=2000, seed=7)
    assert abs(other_seed.p.value - one.p.value) < 0.1


def test_durbin_watson_on_raw_residuals():
    dw = durbin_watson([1.0, -1.0, 1.0, -1.0], replicates=20, seed=1)
    assert dw.d == 3.0
    assert dw.autocorrelation == -0.75
    assert 0.0 <= dw.p.value <= 1.0


def test_five_predictor_fit_published(five_fit):
    fit = five_fit
    published_coefficients = (12.662, 0.332, -0.145, 0.211, 0.295, 0.144)
    published_se = (10.712, 0.264, 0.221, 0.209, 0.257, 0.139)
    published_betas = (0.257, -0.137, 0.248, 0.301, 0.190)
    np.testing.assert_allclose(fit.coefficients, published_coefficients, atol=0.005)
    np.testing.assert_allclose(fit.standard_errors, published_se, atol=0.005)
    np.testing.assert_allclose(fit.standardized_betas[1:], published_betas, atol=0.005)
    np.testing.assert_allclose(
        fit.t_values, (1.182, 1.259, -0.654, 1.009, 1.148, 1.036), atol=0.01)
    assert abs(fit.r_squared - 0.547) < 0.05


def test_collinearity_published(sorted_dataset):
    report = collinearity(sorted_dataset, DIMENSIONS)
    assert report.predictors == DIMENSIONS
    np.testing.assert_allclose(
        report.tolerance, (0.429, 0.404, 0.296, 0.260, 0.532), atol=0.005)
    np.testing.assert_allclose(
        report.vif, (2.331, 2.476, 3.376, 3.844, 1.880), atol=0.005)
    for tol, vif in zip(report.tolerance, report.vif):
        assert abs(vif * tol - 1.0) < 1e-9


def test_collinearity_needs_two_predictors(sorted_dataset):
    with pytest.raises(ValidationError, match="at least 2"):
        collinearity(sorted_dataset, [IDESI])


def test_casewise_frozen(five_fit):
    cw = casewise_diagnostics(five_fit)
    assert len(cw.cooks_distance) == 29
    assert len(cw.standardized_residuals) == 29
    assert cw.flagged == ()
    assert abs(max(abs(v) for v in cw.standardized_residuals)
               - 2.0972527477980534) < 1e-9
    assert abs(max(cw.cooks_distance) - 0.22876645434398526) < 1e-9


def test_casewise_flags_planted_outlier():
    rng = np.random.default_rng(5)
    x = rng.uniform(20.0, 80.0, size=20)
    y = 0.8 * x + rng.normal(0.0, 1.0, size=20)
    y[7] += 40.0
    records = tuple(
        CountryRecord(f"C{i:02d}", {"x": float(x[i]), "y": float(min(y[i], 100.0))})
        for i in range(20)
    )
    ds = Dataset(("x", "y"), records)
    cw = casewise_diagnostics(fit_ols(ds, "y", ["x"]))
    assert 7 in cw.flagged


def test_stepwise_published(sorted_dataset):
    fit, trace = stepwise_fit(sorted_dataset, SII, DIMENSIONS)
    assert fit.predictors == (IDT,)
    assert [step.action for step in trace] == ["add"]
    assert trace[0].predictor == IDT
    assert abs(trace[0].p - 2.40059e-05) < 1e-9
    np.testing.assert_allclose(
        fit.coefficients, (27.09758952839635, 0.685835200991846), rtol=1e-12)
    np.testing.assert_allclose(
        fit.standard_errors, (6.204440200369964, 0.13477923609778364), rtol=1e-12)
    np.testing.assert_allclose(
        fit.t_values, (4.367451156476704, 5.088582046082128), rtol=1e-12)
    assert abs(fit.r_squared - 0.4895419166601095) < 1e-12
    assert abs(fit.adjusted_r_squared - 0.470636061721595) < 1e-12
    assert abs(fit.rmse - 8.877878291649314) < 1e-12
    assert abs(fit.standardized_betas[1] - 0.699672721106168) < 1e-12
    block = anova(fit)
    assert abs(block.ss_regression - 2040.853997285251) < 1e-9
    assert abs(block.f - 25.893667239709373) < 1e-10
    dw = durbin_watson(fit, replicates=50, seed=42)
    assert abs(dw.d - 1.9881279485685412) < 1e-12
    assert abs(dw.autocorrelation - (-0.07137731301032754)) < 1e-12


def test_stepwise_requires_candidates(sorted_dataset):
    with pytest.raises(ValidationError):
        stepwise_fit(sorted_dataset, SII, [])


def test_predict_mapping(simple_fit, sorted_dataset):
    assert abs(predict(simple_fit, {IDESI: 42.0}) - 51.44036411386348) < 1e-12
    step_fit, _ = stepwise_fit(sorted_dataset, SII, DIMENSIONS)
    assert abs(predict(step_fit, {IDT: 19.0}) - 40.128) < 0.3
    with pytest.raises(ValidationError, match="unknown"):
        predict(simple_fit, {IDESI: 42.0, "bogus": 1.0})
    with pytest.raises(ValidationError, match="missing"):
        predict(simple_fit, {})


def test_fit_errors(sorted_dataset):
    with pytest.raises(ValidationError, match="own predictor"):
        fit_ols(sorted_dataset, SII, [SII])
    records = tuple(
        CountryRecord(f"C{i}", {"y": float(10 + i), "a": float(20 + i), "b": float(25 + i)})
        for i in range(10)
    )
    ds = Dataset(("y", "a", "b"), records)
    with pytest.raises(SingularDesignError):
        fit_ols(ds, "y", ["a", "b"])
    tiny = Dataset(("y", "a", "b"),
                   (CountryRecord("A", {"y": 1.0, "a": 2.0, "b": 5.0}),
                    CountryRecord("B", {"y": 2.0, "a": 3.0, "b": 7.0}),
                    CountryRecord("C", {"y": 3.0, "a": 5.0, "b": 8.0})))
    with pytest.raises(InsufficientDataError):
        fit_ols(tiny, "y", ["a", "b"])


def test_ols_estimator_api():
    rng = np.random.default_rng(11)
    x = rng.normal(0.0, 1.0, size=(25, 2))
    y = 1.5 + x @ np.array([2.0, -1.0]) + rng.normal(0.0, 0.1, size=25)
    est = OLS().fit(x, y)
    assert est.n_features_in_ == 2
    np.testing.assert_allclose(est.coef_, [2.0, -1.0], atol=0.1)
    assert abs(est.intercept_ - 1.5) < 0.1
    predictions = est.predict(x)
    assert predictions.shape == (25,)
    np.testing.assert_allclose(predictions, y, atol=0.5)
    assert est.stats_.n == 25
    assert est.get_params() == {}
    with pytest.raises(ValidationError):
        est.predict(x[:, :1])


def test_ols_requires_fit_before_predict():
    with pytest.raises(NotFittedError):
        OLS().predict(np.zeros((3, 1)))


def test_stepwise_estimator_api():
    rng = np.random.default_rng(12)
    x = rng.normal(0.0, 1.0, size=(40, 3))
    y = 3.0 * x[:, 1] + rng.normal(0.0, 0.5, size=40)
    est = StepwiseOLS()
    assert est.get_params() == {"p_enter": 0.05, "p_remove": 0.10}
    est.set_params(p_enter=0.01)
    assert est.get_params()["p_enter"] == 0.01
    est.fit(x, y)
    assert 1 in est.selected_
    assert est.trace_[0].action == "add"
    assert est.predict(x).shape == (40,)
    with pytest.raises(ValidationError):
        StepwiseOLS(p_enter=0.2, p_remove=0.1).fit(x, y)
