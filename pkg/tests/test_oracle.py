from itertools import combinations, product

import pytest

from sawalk.engine import SearchConfig, run_search
from sawalk.hpfold import make_problem, objective_value, target_energy
from sawalk.mixedradix import SpaceTooLargeError
from sawalk.oracle import (
    OracleReport,
    count_at_or_below,
    domain_size,
    enumerate_optimum,
    merge_reports,
    parse_report,
    report_text,
)


@pytest.fixture(scope="module")
def plan_c_small():
    problem = make_problem("C", n=7, weight_target=3, energy_target=-2)
    return problem, enumerate_optimum(problem)


class TestDomainSize:
    def test_plan_c(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4)
        assert domain_size(p) == 210 * 3**9 == 4_133_430

    def test_plan_a(self):
        p = make_problem("A", coord_b="1001001001", energy_target=-4)
        assert domain_size(p) == 3**9

    def test_plan_b(self):
        p = make_problem("B", coord_t="211011011", weight_target=4, energy_target=-4)
        assert domain_size(p) == 210

    def test_cap_refusal_reports_size(self):
        p = make_problem("C", n=20, weight_target=10, energy_target=-9)
        with pytest.raises(SpaceTooLargeError) as err:
            enumerate_optimum(p, domain_cap=10**6)
        assert err.value.size == domain_size(p)


class TestKnownOptima:
    def test_plan_a_two_conformations(self):
        p = make_problem("A", coord_b="1001001001", energy_target=-4)
        report = enumerate_optimum(p)
        assert report.min_value == -4
        assert report.evaluations == 3**9
        assert report.argmin == (
            ("1001001001", "200100100"),
            ("1001001001", "211011011"),
        )

    def test_plan_b_unique_binary(self):
        p = make_problem("B", coord_t="211011011", weight_target=4, energy_target=-4)
        report = enumerate_optimum(p)
        assert report.min_value == -4
        assert report.evaluations == 210
        assert report.argmin == (("1001001001", "211011011"),)

    def test_no_h_beads_make_every_feasible_fold_optimal(self):
        p = make_problem("C", n=4, weight_target=0, energy_target=0)
        report = enumerate_optimum(p)
        # a 4-bead chain cannot collide: all 27 folds feasible at value 0
        assert report.min_value == 0
        assert report.histogram == {0: 27}
        assert len(report.argmin) == 9  # 27 folds / 3 rotations each

    @pytest.mark.parametrize("n", range(4, 9))
    def test_all_h_minimum_matches_closed_form(self, n):
        p = make_problem("C", n=n, weight_target=n, energy_target=-1)
        assert enumerate_optimum(p).min_value == target_energy(n)


class TestScanAgainstDirectEvaluation:
    def test_histogram_matches_brute_force(self, plan_c_small):
        problem, report = plan_c_small
        brute: dict[int, int] = {}
        for ones in combinations(range(7), 3):
            bits = tuple(1 if i in set(ones) else 0 for i in range(7))
            for turns in product((0, 1, 2), repeat=6):
                v = objective_value(bits, turns)
                brute[v] = brute.get(v, 0) + 1
        assert report.histogram == brute
        assert report.evaluations == domain_size(problem)

    def test_argmin_members_reach_the_minimum(self, plan_c_small):
        problem, report = plan_c_small
        for colors, turns in report.argmin:
            assert objective_value(colors, turns) == report.min_value

    def test_histogram_total_is_domain_size(self, plan_c_small):
        problem, report = plan_c_small
        assert sum(report.histogram.values()) == domain_size(problem)

    def test_values_split_feasible_and_penalty(self, plan_c_small):
        _, report = plan_c_small
        assert all(v <= 0 or v >= 1 for v in report.histogram)


class TestCountAtOrBelow:
    def test_threshold_infinity_is_domain_size(self, plan_c_small):
        problem, report = plan_c_small
        assert count_at_or_below(problem, float("inf"), report=report) == domain_size(problem)

    def test_minimum_counts_rotation_closure_of_argmin(self, plan_c_small):
        problem, report = plan_c_small
        raw = count_at_or_below(problem, report.min_value, report=report)
        assert raw == 3 * len(report.argmin)

    def test_monotone_in_threshold(self, plan_c_small):
        problem, report = plan_c_small
        counts = [count_at_or_below(problem, t, report=report) for t in range(-3, 3)]
        assert counts == sorted(counts)


class TestShardingAndCheckpoints:
    def test_contiguous_slices_merge_to_whole(self, plan_c_small):
        problem, whole = plan_c_small
        size = domain_size(problem)
        step = size // 4 + 1
        parts = [
            enumerate_optimum(problem, start=lo, count=step)
            for lo in range(0, size, step)
        ]
        assert merge_reports(parts) == whole

    def test_merge_is_order_independent(self, plan_c_small):
        problem, whole = plan_c_small
        size = domain_size(problem)
        step = size // 3 + 1
        parts = [
            enumerate_optimum(problem, start=lo, count=step)
            for lo in range(0, size, step)
        ]
        assert merge_reports(parts[::-1]) == whole

    def test_parallel_workers_match_serial(self):
        problem = make_problem("C", n=6, weight_target=3, energy_target=-1)
        assert enumerate_optimum(problem, workers=2) == enumerate_optimum(problem)

    def test_empty_slice(self):
        problem = make_problem("C", n=6, weight_target=3, energy_target=-1)
        report = enumerate_optimum(problem, start=5, count=0)
        assert report.evaluations == 0 and report.argmin == ()


class TestSolverConsistency:
    def test_oracle_minimum_bounds_solver_results(self):
        problem = make_problem("C", n=8, weight_target=4, energy_target=-3)
        floor = enumerate_optimum(problem).min_value
        for seed in range(15):
            res = run_search(SearchConfig(seed=seed), problem)
            if not res.is_censored:
                assert res.value >= floor

    def test_solver_solutions_appear_in_argmin(self):
        problem = make_problem("A", coord_b="1001001001", energy_target=-4)
        report = enumerate_optimum(problem)
        for seed in range(10):
            res = run_search(SearchConfig(seed=seed), problem)
            assert not res.is_censored
            assert problem.solution_key(res.coordinate) in report.argmin


class TestReportSerialization:
    def test_round_trip(self, plan_c_small):
        _, report = plan_c_small
        assert parse_report(report_text(report)) == report

    def test_text_shape(self):
        report = OracleReport(-2, (("110", "22"),), 54, {-2: 1, 0: 40, 3: 13})
        text = report_text(report)
        assert "min-value = -2" in text
        assert "count[-2] = 1" in text
        assert "argmin = 110 22" in text

    def test_parse_ignores_comments(self):
        text = "# note\nevaluations = 3\nmin-value = 0\ncount[0] = 3\n"
        report = parse_report(text)
        assert report.evaluations == 3 and report.histogram == {0: 3}

    def test_parse_rejects_unknown_keys(self):
        with pytest.raises(ValueError):
            parse_report("bogus = 1\n")
