import math

import pytest

from qtransmute.channel import (DepolarizingChannel, ExplicitChannel,
                                exact_class_distribution, run_trials,
                                total_variation, uniform_single_error_channel)
from qtransmute.pauli import errors_up_to_weight, identity, parse_pauli
from qtransmute.qet import AdmissibleSet, build_recovery, check_general_qet
from qtransmute.stabilizer import logical_class

PHASE1 = AdmissibleSet.group_generated(2, ["ZI"])
BOTH_PHASES = AdmissibleSet.from_strings(2, ["ZI", "IZ"])


def recovery_for(code, adm, max_weight=1, **kwargs):
    verdict = check_general_qet(code, adm, errors_up_to_weight(code.n, max_weight))
    assert verdict.passed
    return build_recovery(code, adm, verdict, **kwargs)


def test_uniform_single_error_channel_shape():
    ch = uniform_single_error_channel(7)
    assert len(ch.errors) == 21
    assert ch.identity_probability == pytest.approx(0.0)


def test_explicit_channel_validation():
    with pytest.raises(ValueError):
        ExplicitChannel(2, ((identity(2), 1.5),))
    with pytest.raises(ValueError):
        ExplicitChannel(2, ((identity(3), 0.1),))


def test_exact_admissibility_table1(table1):
    table = recovery_for(table1, PHASE1)
    rep = run_trials(table1, PHASE1, table, uniform_single_error_channel(7),
                     trials=20_000, seed=42)
    assert rep.trials == 20_000
    assert rep.uncovered == 0
    assert rep.admissible_rate(PHASE1) == 1.0


def test_identity_channel_all_trivial(table1):
    # under the point-mass mixture, no-error trials come back untouched
    table = recovery_for(table1, PHASE1, default_mixture="first")
    ch = ExplicitChannel(7, ())
    rep = run_trials(table1, PHASE1, table, ch, trials=1000, seed=1)
    assert rep.class_counts == {0: 1000}


def test_identity_channel_uniform_mixture_stays_admissible(table1):
    # the default mixture may deliberately apply admissible logicals
    table = recovery_for(table1, PHASE1)
    ch = ExplicitChannel(7, ())
    rep = run_trials(table1, PHASE1, table, ch, trials=1000, seed=1)
    assert rep.admissible_rate(PHASE1) == 1.0
    assert set(rep.class_counts) <= PHASE1.classes


def test_table2_residual_classes(table2):
    table = recovery_for(table2, BOTH_PHASES)
    rep = run_trials(table2, BOTH_PHASES, table, uniform_single_error_channel(6),
                     trials=50_000, seed=9)
    z1 = logical_class(table2, table2.logical_z[0]).bits
    z2 = logical_class(table2, table2.logical_z[1]).bits
    assert set(rep.class_counts) <= {0, z1, z2}
    assert z1 ^ z2 not in rep.class_counts  # the excluded product class never appears


def test_empirical_matches_exact_distribution(table1):
    table = recovery_for(table1, PHASE1)
    model = uniform_single_error_channel(7)
    rep = run_trials(table1, PHASE1, table, model, trials=100_000, seed=31337)
    exact, uncovered = exact_class_distribution(table1, table, model)
    assert uncovered == 0.0
    assert total_variation(rep.class_distribution(), exact) < 0.01


def test_depolarizing_uncovered_fraction(table1):
    table = recovery_for(table1, PHASE1)
    p, n, trials = 0.02, 7, 60_000
    model = DepolarizingChannel(n, p)
    rep = run_trials(table1, PHASE1, table, model, trials=trials, seed=7)
    expected = 1 - (1 - p) ** n - n * p * (1 - p) ** (n - 1)
    sigma = math.sqrt(expected * (1 - expected) / trials)
    assert abs(rep.uncovered / trials - expected) < 3 * sigma


def test_merge_independent_of_worker_count(table1):
    table = recovery_for(table1, PHASE1)
    model = uniform_single_error_channel(7)
    serial = run_trials(table1, PHASE1, table, model, trials=45_000, seed=5, threads=1)
    parallel = run_trials(table1, PHASE1, table, model, trials=45_000, seed=5, threads=2)
    assert serial.class_counts == parallel.class_counts
    assert serial.syndrome_counts == parallel.syndrome_counts
    assert serial.uncovered == parallel.uncovered


def test_uncovered_never_admissible(table1):
    # weight-2 errors are outside the verified support of a weight-1 table
    table = recovery_for(table1, PHASE1)
    two = parse_pauli("XXIIIII")
    ch = ExplicitChannel(7, ((two, 1.0),))
    rep = run_trials(table1, PHASE1, table, ch, trials=500, seed=3)
    assert rep.uncovered == 500
    assert rep.admissible_rate(PHASE1) == 0.0


def test_counts_sum_to_trials(table1):
    table = recovery_for(table1, PHASE1)
    rep = run_trials(table1, PHASE1, table, DepolarizingChannel(7, 0.05),
                     trials=5000, seed=13)
    assert sum(rep.class_counts.values()) + rep.uncovered == rep.trials
    assert sum(rep.syndrome_counts.values()) == rep.trials


def test_report_render_has_seed(table1):
    table = recovery_for(table1, PHASE1)
    rep = run_trials(table1, PHASE1, table, uniform_single_error_channel(7),
                     trials=100, seed=77)
    text = rep.render(table1.k)
    assert "seed = 77" in text
    assert "trials = 100" in text
