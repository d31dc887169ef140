import random
from itertools import product

import pytest

from sawalk.hpfold import (
    contact_pairs,
    contacts,
    decode_fold,
    default_penalty,
    make_problem,
    objective_value,
    spiral_instance,
    target_energy,
    weight,
)
from sawalk.hpfold import _fold_points
from sawalk.mixedradix import rank_distance


class TestWeight:
    def test_examples(self):
        assert weight("1001001001") == 4
        assert weight("0000000000") == 0
        assert weight("1111111111") == 10

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            weight("102")


class TestDecodeFold:
    def test_straight_line(self):
        out = decode_fold("22")
        assert out.positions == ((0, 0), (0, 1), (0, 2))
        assert out.feasible
        assert out.collision_count == 0
        assert out.first_collision_index is None

    def test_four_left_turns_close_a_square(self):
        out = decode_fold("0000")
        assert out.positions == ((0, 0), (-1, 0), (-1, -1), (0, -1), (0, 0))
        assert not out.feasible
        assert out.first_collision_index == 4
        assert out.collision_count == 1

    def test_known_optimal_fold_is_feasible(self):
        out = decode_fold("211011011")
        assert out.feasible
        assert len(out.positions) == 10
        assert len(set(out.positions)) == 10

    def test_steps_are_unit_moves(self):
        out = decode_fold("0120211")
        for (x0, y0), (x1, y1) in zip(out.positions, out.positions[1:]):
            assert abs(x1 - x0) + abs(y1 - y0) == 1

    def test_collision_count_is_total(self):
        # seven left turns circle the unit square, overlapping from bead 4 on
        out = decode_fold("0000000")
        assert out.first_collision_index == 4
        assert out.collision_count == 4
        assert not out.feasible

    def test_rejects_bad_digits(self):
        with pytest.raises(ValueError):
            decode_fold("2031")


class TestContacts:
    def test_all_polar_chain(self):
        out = decode_fold("21101101")
        assert contacts(out, "000000000") == 0

    def test_straight_all_h(self):
        assert contacts(decode_fold("2222"), "11111") == 0

    def test_paper_pair(self):
        assert contacts(decode_fold("200100100"), "1001001001") == 4

    def test_requires_feasible(self):
        with pytest.raises(ValueError):
            contacts(decode_fold("0000"), "11111")

    def test_segment_length_check(self):
        with pytest.raises(ValueError):
            contacts(decode_fold("22"), "11")

    def test_contact_pairs_skip_consecutive(self):
        pairs = contact_pairs(decode_fold("200100100"))
        assert all(j > i + 1 for i, j in pairs)
        assert (0, 3) in pairs and (0, 9) in pairs


class TestObjective:
    def test_known_solutions(self):
        assert objective_value("1001001001", "211011011") == -4
        assert objective_value("1001001001", "200100100") == -4

    def test_feasible_no_contacts(self):
        assert objective_value("0110", "222") == 0

    def test_penalty_for_closed_square(self):
        assert objective_value("10101", "0000") == 1

    def test_penalty_is_positive(self):
        rng = random.Random(2)
        for _ in range(500):
            turns = [rng.randrange(3) for _ in range(9)]
            out = decode_fold(turns)
            if not out.feasible:
                v = objective_value([rng.randrange(2) for _ in range(10)], turns)
                assert v >= 1

    def test_custom_penalty_is_injectable(self):
        flat = lambda n, first, count: 99
        assert objective_value("10101", "0000", penalty=flat) == 99

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            objective_value("101", "222")

    def test_default_penalty_grading(self):
        # earlier first collision and extra collisions both score worse
        assert default_penalty(10, 4, 1) > default_penalty(10, 9, 1)
        assert default_penalty(10, 4, 3) > default_penalty(10, 4, 1)


class TestTargetEnergy:
    @pytest.mark.parametrize(
        "n,expected", [(4, -1), (10, -4), (16, -9), (25, -16)]
    )
    def test_known_values(self, n, expected):
        assert target_energy(n) == expected

    def test_monotone_nonincreasing(self):
        values = [target_energy(n) for n in range(3, 40)]
        assert all(b <= a for a, b in zip(values, values[1:]))


class TestMakeProblem:
    def test_plan_a(self):
        p = make_problem("A", coord_b="1001001001", energy_target=-4)
        assert p.n == 10 and p.weight_target == 4 and p.weight_cap == 5
        assert p.spec.size == 2**10 * 3**9

    def test_plan_a_weight_mismatch(self):
        with pytest.raises(ValueError):
            make_problem("A", coord_b="1001001001", weight_target=5, energy_target=-4)

    def test_plan_b(self):
        p = make_problem("B", coord_t="211011011", weight_target=4, energy_target=-4)
        assert p.n == 10 and p.fixed_ternary == (2, 1, 1, 0, 1, 1, 0, 1, 1)

    def test_plan_b_needs_ternary(self):
        with pytest.raises(ValueError):
            make_problem("B", n=10, weight_target=4, energy_target=-4)

    def test_plan_c(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4)
        assert p.fixed_binary is None and p.fixed_ternary is None

    def test_plan_c_rejects_fixed_segments(self):
        with pytest.raises(ValueError):
            make_problem("C", n=10, weight_target=4, energy_target=-4, coord_b="1111000000")

    def test_bad_plan(self):
        with pytest.raises(ValueError):
            make_problem("D", n=10, weight_target=4, energy_target=-4)

    def test_positive_target_rejected(self):
        with pytest.raises(ValueError):
            make_problem("C", n=10, weight_target=4, energy_target=1)

    def test_weight_cap_override(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4, weight_cap=6)
        assert p.weight_cap == 6


class TestPlanMoves:
    def _weights(self, problem, coords):
        return [sum(c.digits[: problem.n]) for c in coords]

    def test_plan_a_moves_only_turns(self):
        p = make_problem("A", coord_b="1001001001", energy_target=-4)
        c = p.coordinate("1001001001", "211011011")
        moves = p.admissible_neighbors(c)
        assert all(m.digits[:10] == c.digits[:10] for m in moves)
        assert all(rank_distance(c, m) == 1 for m in moves)

    def test_plan_b_moves_only_colors_capped(self):
        p = make_problem("B", coord_t="211011011", weight_target=4, energy_target=-4)
        c = p.coordinate("1111100000", "211011011")  # weight 5 == cap
        moves = p.admissible_neighbors(c)
        assert all(m.digits[10:] == c.digits[10:] for m in moves)
        # at the cap no 0->1 flip is admissible
        assert set(self._weights(p, moves)) == {4}
        assert len(moves) == 5

    def test_plan_c_moves_both(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4)
        c = p.coordinate("1001001001", "211011011")
        moves = p.admissible_neighbors(c)
        binary_moves = [m for m in moves if m.digits[:10] != c.digits[:10]]
        ternary_moves = [m for m in moves if m.digits[10:] != c.digits[10:]]
        assert len(binary_moves) + len(ternary_moves) == len(moves)
        assert len(binary_moves) == 10  # weight 4 < cap: every flip admissible
        assert max(self._weights(p, binary_moves)) <= p.weight_cap

    def test_downward_weight_moves_always_allowed(self):
        p = make_problem("C", n=4, weight_target=2, energy_target=0, weight_cap=2)
        c = p.coordinate("1100", "222")
        moves = p.admissible_neighbors(c)
        weights = self._weights(p, [m for m in moves if m.digits[:4] != c.digits[:4]])
        assert weights and all(w == 1 for w in weights)


class TestSolutionTest:
    def test_plan_a_ignores_weight(self):
        p = make_problem("A", coord_b="1001001001", energy_target=-4)
        c = p.coordinate("1001001001", "211011011")
        assert p.is_solution(c, -4)
        assert not p.is_solution(c, -3)

    def test_exact_weight_required(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4)
        good = p.coordinate("1001001001", "211011011")
        heavy = p.coordinate("1101001001", "211011011")
        assert p.is_solution(good, -4)
        assert not p.is_solution(heavy, -4)

    def test_beyond_target_counts_as_solution(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-3)
        c = p.coordinate("1001001001", "211011011")
        assert p.is_solution(c, -4)

    def test_target_override(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4)
        c = p.coordinate("1001001001", "211011011")
        assert not p.is_solution(c, -4, target=-5)
        assert p.is_solution(c, -4, target=0)


class TestRandomDraws:
    def test_plan_a_keeps_binary_fixed(self):
        p = make_problem("A", coord_b="1001001001", energy_target=-4)
        rng = random.Random(6)
        for _ in range(30):
            c = p.random_coordinate(rng)
            assert c.digits[:10] == (1, 0, 0, 1, 0, 0, 1, 0, 0, 1)

    def test_plan_b_keeps_ternary_fixed_and_weight_exact(self):
        p = make_problem("B", coord_t="211011011", weight_target=4, energy_target=-4)
        rng = random.Random(6)
        for _ in range(30):
            c = p.random_coordinate(rng)
            assert c.digits[10:] == (2, 1, 1, 0, 1, 1, 0, 1, 1)
            assert sum(c.digits[:10]) == 4

    def test_plan_c_weight_exact(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4)
        rng = random.Random(6)
        for _ in range(30):
            assert sum(p.random_coordinate(rng).digits[:10]) == 4

    def test_objective_matches_module_function(self):
        p = make_problem("C", n=10, weight_target=4, energy_target=-4)
        rng = random.Random(10)
        for _ in range(100):
            c = p.random_coordinate(rng)
            assert p.objective(c) == objective_value(c.digits[:10], c.digits[10:])


class TestSpiralInstance:
    def test_known_targets(self):
        assert spiral_instance(10).energy_target == -4
        assert spiral_instance(16).energy_target == -9
        assert spiral_instance(25).energy_target == -16

    def test_all_h(self):
        p = spiral_instance(12)
        assert p.plan == "A"
        assert p.fixed_binary == (1,) * 12
        assert p.weight_target == 12

    @pytest.mark.parametrize("length", [8, 37])
    def test_range(self, length):
        with pytest.raises(ValueError):
            spiral_instance(length)


class TestFoldSymmetries:
    def test_rotation_invariance(self):
        # re-derive every energy with the heading along +x instead of +y
        rng = random.Random(8)
        for _ in range(1000):
            bits = tuple(rng.randrange(2) for _ in range(8))
            turns = tuple(rng.randrange(3) for _ in range(7))
            base = objective_value(bits, turns)
            points, first, collisions = _fold_points(turns, dx=1, dy=0)
            if collisions:
                rotated = default_penalty(8, first, collisions)
            else:
                from sawalk.hpfold import _contact_count

                rotated = -_contact_count(points, bits)
            assert rotated == base

    def test_mirror_symmetry(self):
        # swapping left and right turns reflects the fold: same objective
        swap = {0: 1, 1: 0, 2: 2}
        rng = random.Random(9)
        for _ in range(1000):
            bits = tuple(rng.randrange(2) for _ in range(9))
            turns = tuple(rng.randrange(3) for _ in range(8))
            mirrored = tuple(swap[t] for t in turns)
            assert objective_value(bits, turns) == objective_value(bits, mirrored)

    def test_mirror_links_the_two_known_solutions(self):
        swap = {0: 1, 1: 0, 2: 2}
        mirrored = "".join(str(swap[int(ch)]) for ch in "200100100")
        assert mirrored == "211011011"

    def test_chain_reversal_preserves_energy_multiset(self):
        for bits in ["100110", "111111", "010010"]:
            forward = sorted(
                objective_value(bits, turns)
                for turns in product((0, 1, 2), repeat=5)
                if decode_fold(turns).feasible
            )
            backward = sorted(
                objective_value(bits[::-1], turns)
                for turns in product((0, 1, 2), repeat=5)
                if decode_fold(turns).feasible
            )
            assert forward == backward
