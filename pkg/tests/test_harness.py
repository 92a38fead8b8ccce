import csv

import pytest

from arbormatch import (
    ConfigError,
    ExperimentConfig,
    TrialRecord,
    build_graph,
    check_lemmas,
    emit_csv,
    generate_random_tree,
    generate_union_of_forests,
    parse_config,
    run_experiment,
    summarize_ratios,
)
from arbormatch.harness import (
    alpha_good_checks,
    degree_threshold_checks,
    forest_window_checks,
    lemma_alpha_threshold,
    triple_alpha_checks,
    validate_config,
)


# ---------------------------------------------------------------------------
# config parsing and validation
# ---------------------------------------------------------------------------

GOOD_CONFIG = """
# small smoke experiment
generator = union-of-forests
n = 60
c = 2
ordering = uniform-random
estimator = alg2
mu = 5
epsilon = 0.5
trials = 5
seed0 = 3
"""


def test_parse_config_round_trip():
    config = parse_config(GOOD_CONFIG)
    assert config.generator == "union-of-forests"
    assert config.trials == 5
    assert config.mu == 5


def test_parse_config_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("generator = union-of-forests\nbogus = 1\n")
    with pytest.raises(ConfigError, match="bad value"):
        parse_config("trials = many\n")


def test_validate_rejects_mu_at_twice_c():
    config = parse_config(GOOD_CONFIG)
    config.mu = 4  # equals 2c
    with pytest.raises(ConfigError, match="mu"):
        validate_config(config)


def test_validate_rejects_incomplete_estimators():
    with pytest.raises(ConfigError, match="needs mu"):
        validate_config(ExperimentConfig(estimator="alg2"))
    with pytest.raises(ConfigError, match="p in"):
        validate_config(ExperimentConfig(estimator="alg1", mu=3))
    with pytest.raises(ConfigError, match="alpha"):
        validate_config(ExperimentConfig(estimator="alg4"))
    with pytest.raises(ConfigError, match="delete-fraction"):
        validate_config(
            ExperimentConfig(estimator="alg2", mu=3, delete_fraction=0.5)
        )


# ---------------------------------------------------------------------------
# experiments and CSV
# ---------------------------------------------------------------------------


def test_run_experiment_smoke():
    config = parse_config(GOOD_CONFIG)
    records = run_experiment(config)
    assert len(records) == 5
    for i, rec in enumerate(records):
        assert rec.seed == 3 + i
        assert not rec.failed
        assert rec.m_star > 0
        assert rec.ratio == pytest.approx(rec.value / rec.m_star)
        assert rec.space_peak > 0


def test_run_experiment_is_deterministic_modulo_walltime(tmp_path):
    config = parse_config(GOOD_CONFIG)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run_experiment(config, csv_path=str(p1))
    run_experiment(config, csv_path=str(p2))

    def strip_ms(path):
        return [line.rsplit(",", 1)[0] for line in path.read_text().splitlines()]

    assert strip_ms(p1) == strip_ms(p2)


def test_run_experiment_fixed_graph_reuses_m_star():
    config = parse_config(GOOD_CONFIG)
    config.graph_seed = 17
    records = run_experiment(config)
    assert len({rec.m_star for rec in records}) == 1


def test_emit_csv_row_format(tmp_path):
    rec = TrialRecord(seed=1, value=3, m_star=1, ratio=3.0, space_peak=7, failed=False, ms=0.5)
    path = tmp_path / "one.csv"
    emit_csv([rec], str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "seed,value,m_star,ratio,space_peak,fail,ms"
    assert lines[1] == "1,3,1,3.0,7,0,0.500"


def test_emit_csv_absent_ratio_and_value(tmp_path):
    recs = [
        TrialRecord(seed=0, value=0, m_star=0, ratio=None, space_peak=1, failed=False, ms=1.0),
        TrialRecord(seed=1, value=None, m_star=4, ratio=None, space_peak=9, failed=True, ms=1.0),
    ]
    path = tmp_path / "two.csv"
    emit_csv(recs, str(path))
    rows = list(csv.reader(path.read_text().splitlines()))
    assert rows[1][3] == "" and rows[1][1] == "0"
    assert rows[2][1] == "" and rows[2][5] == "1"


def test_emit_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv([], str(path))
    assert path.read_text().splitlines() == ["seed,value,m_star,ratio,space_peak,fail,ms"]


def test_emit_csv_numeric_round_trip(tmp_path):
    config = parse_config(GOOD_CONFIG)
    records = run_experiment(config)
    path = tmp_path / "rt.csv"
    emit_csv(records, str(path))
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    for rec, row in zip(records, rows):
        assert int(row["seed"]) == rec.seed
        assert float(row["value"]) == pytest.approx(float(rec.value))
        assert int(row["m_star"]) == rec.m_star
        assert float(row["ratio"]) == pytest.approx(rec.ratio)
        assert int(row["space_peak"]) == rec.space_peak


def test_summarize_ratios_windows():
    recs = [
        TrialRecord(seed=i, value=v, m_star=1, ratio=float(v), space_peak=1, failed=False, ms=0)
        for i, v in enumerate([1, 2, 3, 40])
    ]
    summary = summarize_ratios(recs, lower=1.0, upper=10.0)
    assert summary["ratio_min"] == 1 and summary["ratio_max"] == 40
    assert summary["success_fraction"] == 0.75


def test_logspace_experiment_on_star_forest():
    # every record's ratio sits inside the guaranteed window; the graph is
    # pinned so the exact matching is computed once
    config = ExperimentConfig(
        generator="star-forest", k=1000, s=5, graph_seed=0, estimator="logspace",
        epsilon=0.1, trials=20, seed0=0, ordering="uniform-random",
    )
    records = run_experiment(config)
    assert all(rec.m_star == 1000 for rec in records)
    summary = summarize_ratios(records, lower=1.0, upper=28.5 * 1.3)
    assert summary["fails"] == 0
    assert summary["success_fraction"] >= 0.9


def test_dynamic_experiment_smoke():
    config = ExperimentConfig(
        generator="union-of-forests", n=40, c=1, estimator="dynamic",
        mu=3, epsilon=0.5, delete_fraction=0.4, trials=3, seed0=0,
    )
    records = run_experiment(config)
    assert all(not rec.failed for rec in records)
    assert all(rec.value >= rec.m_star for rec in records)


# ---------------------------------------------------------------------------
# inequality checks
# ---------------------------------------------------------------------------


def test_check_lemmas_on_random_tree():
    g = generate_random_tree(50, seed=5)
    report = check_lemmas(g, orderings=20, mu=3, seed=1)
    assert report.passed, report.format()
    names = [c.name for c in report.checks]
    assert any(n.startswith("forest-window") for n in names)


def test_check_lemmas_on_forest_union():
    g = generate_union_of_forests(100, 3, seed=2)
    report = check_lemmas(g, orderings=10, mu=7, seed=0)
    assert report.passed, report.format()
    assert report.mu == 7
    # non-forest inputs skip the forest window
    if any(c.name.startswith("forest-window") for c in report.checks):
        from arbormatch import degeneracy

        assert degeneracy(g) <= 1


def test_check_lemmas_on_star():
    g = build_graph(6, [(0, i) for i in range(1, 6)], c_declared=1)
    report = check_lemmas(g, orderings=8, mu=3, seed=4)
    assert report.passed, report.format()
    assert report.alpha == lemma_alpha_threshold(1, 3) == 8.0


def test_check_lemmas_requires_declared_bound():
    g = build_graph(3, [(0, 1)])
    with pytest.raises(ConfigError):
        check_lemmas(g, orderings=1, mu=3, seed=0)
    g2 = build_graph(3, [(0, 1)], c_declared=1)
    with pytest.raises(ConfigError):
        check_lemmas(g2, orderings=1, mu=2, seed=0)


def test_violations_are_reported_with_witnesses():
    # fabricated numbers: a high-degree count far above what any graph allows
    checks = degree_threshold_checks(c=1, mu=3, m_star=1, h_mu=50, m_mu=0)
    assert not checks[0].holds
    assert "h_mu=50" in checks[0].witness
    checks = alpha_good_checks(
        c=1, mu=3, alpha=8.0, m_star=100, h_mu=0, s_mu=0, e_alpha=1, label="fab"
    )
    assert not checks[0].holds  # lower window broken
    checks = triple_alpha_checks(c=1, m_star=10, e_6c=1, label="fab")
    assert not checks[0].holds
    checks = forest_window_checks(m_star=5, e_1=100, label="fab")
    assert not checks[1].holds


def test_report_formatting_flags_violations():
    from arbormatch import LemmaCheck, LemmaReport

    report = LemmaReport(
        graph_label="fabricated",
        mu=3,
        alpha=8.0,
        checks=(
            LemmaCheck(name="ok-check", holds=True, witness="1 <= 2"),
            LemmaCheck(name="broken-check", holds=False, witness="3 <= 2"),
        ),
    )
    assert not report.passed
    assert report.first_violation.name == "broken-check"
    text = report.format()
    assert "VIOLATION broken-check" in text and "violations found" in text
