import json

from ramsey3.experiments import random_classification_experiment, run_paper_suite

from conftest import validate


def test_example_suite_report():
    report = run_paper_suite()
    assert all(c.validated for c in report.cases)
    names = [c.name for c in report.cases]
    assert names == sorted(names)
    # the one expectation the classifier contradicts, see test_acceptance
    assert [c.name for c in report.cases if not c.passed] == ["level g_chain(2)"]
    validate(report.to_json(include_runtimes=True), "suite")


def test_example_suite_deterministic():
    a = json.dumps(run_paper_suite().to_json(), sort_keys=True)
    b = json.dumps(run_paper_suite().to_json(), sort_keys=True)
    assert a == b


def test_random_edgeless():
    report = random_classification_experiment(8, 0, 5, seed=3)
    assert report.summary["fraction_outside_U"] == 0.0
    assert report.summary["levels"] == {"0": 5}


def test_random_complete():
    report = random_classification_experiment(4, 16, 1, seed=0)
    assert report.summary["fraction_outside_U"] == 1.0
    assert report.all_pass


def test_random_deterministic_and_thread_independent():
    a = random_classification_experiment(9, 20, 12, seed=5)
    b = random_classification_experiment(9, 20, 12, seed=5, threads=2)
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())
    assert a.summary["certificates_valid"] == 12
    validate(a.to_json(include_runtimes=True), "suite")


def test_random_budget_failures_are_recorded():
    report = random_classification_experiment(10, 60, 3, seed=2, budget=1)
    assert len(report.cases) == 3
    assert all(c.observed.startswith("budget") and not c.validated for c in report.cases)


def test_random_regression_n14():
    # pinned after first computation: every sample at C = 20 falls outside U
    report = random_classification_experiment(14, 20, 100, seed=1)
    print(f"fraction_outside_U={report.summary['fraction_outside_U']}")
    assert report.summary["certificates_valid"] == 100
    assert report.summary["fraction_outside_U"] == 1.0
