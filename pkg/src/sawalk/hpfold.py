"""The 2-color HP chain-folding objective on the 2D square lattice.

A chain of n beads is described by two coordinate segments: a binary string
of length n giving bead colors ('1' hydrophobic, '0' polar) and a ternary
string of length n-1 giving relative turns (0 left, 1 right, 2 forward)
that folds the chain onto the integer grid.  Feasible folds score the
negated count of non-consecutive H-H lattice contacts; folds that revisit a
grid point score a positive penalty that grows with how early and how often
the chain collides.

Three search formulations are supported: plan A fixes the colors and folds
the chain, plan B fixes the fold and searches colors (the inverse problem),
and plan C searches both segments simultaneously under a weight cap.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional, Sequence, Union

from sawalk.mixedradix import Coordinate, RadixSpec, sample_weight_positions

Digits = Union[str, Sequence[int]]
PenaltyFn = Callable[[int, int, int], int]

# lattice points are packed as (x << 16) + y; safe for |y| < 2**15
_X = 1 << 16

PLANS = ("A", "B", "C")


def as_digits(value: Digits) -> tuple[int, ...]:
    """Normalize a digit string or int sequence to a tuple of ints."""
    if isinstance(value, str):
        return tuple(int(ch, 36) for ch in value.strip())
    return tuple(int(d) for d in value)


def digits_text(digits: Sequence[int]) -> str:
    return "".join(str(d) for d in digits)


def weight(binary: Digits) -> int:
    """Number of H beads (1-digits) in a binary segment."""
    bits = as_digits(binary)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("weight expects a binary segment")
    return sum(bits)


@dataclass(frozen=True)
class FoldOutcome:
    """Decoded lattice placement of a chain, with its collision report."""

    positions: tuple[tuple[int, int], ...]
    feasible: bool
    first_collision_index: Optional[int]
    collision_count: int


def _trace(turns: Sequence[int], dx: int = 0, dy: int = 1) -> list[int]:
    """Packed lattice points of the chain, collisions not yet examined.

    The initial heading is a parameter only so orientation invariance can
    be exercised; production callers use the +y default.
    """
    p = 0
    points = [0]
    append = points.append
    for t in turns:
        if t == 0:
            dx, dy = -dy, dx
        elif t == 1:
            dx, dy = dy, -dx
        p += dx * _X + dy
        append(p)
    return points


def _collision_stats(points: Sequence[int]) -> tuple[Optional[int], int]:
    """First colliding bead index and the total number of collisions."""
    seen = set()
    first = None
    collisions = 0
    for i, p in enumerate(points):
        if p in seen:
            collisions += 1
            if first is None:
                first = i
        else:
            seen.add(p)
    return first, collisions


def _fold_points(turns: Sequence[int], dx: int = 0, dy: int = 1):
    """Place the chain, returning packed points plus collision accounting.

    Placement continues past collisions so the collision count is total.
    """
    points = _trace(turns, dx, dy)
    if len(set(points)) == len(points):
        return points, None, 0
    first, collisions = _collision_stats(points)
    return points, first, collisions


@lru_cache(maxsize=1 << 16)
def _fold_analysis(turns: tuple[int, ...]):
    # walk steps re-decode the same fold many times (every color move keeps
    # the turn segment); memoizing the decode is a pure speedup
    return _fold_points(turns)


def _unpack(p: int) -> tuple[int, int]:
    y = ((p + (1 << 15)) & (_X - 1)) - (1 << 15)
    return (p - y) >> 16, y


def decode_fold(ternary: Digits) -> FoldOutcome:
    """Fold a chain from its turn encoding.

    Bead 0 sits at the origin with the heading pointing up the y axis; each
    digit first rotates the heading (0 left, 1 right, 2 straight) and then
    advances one lattice unit to place the next bead.
    """
    turns = as_digits(ternary)
    if any(t not in (0, 1, 2) for t in turns):
        raise ValueError("fold encoding must be ternary digits")
    points, first, collisions = _fold_points(turns)
    return FoldOutcome(
        positions=tuple(_unpack(p) for p in points),
        feasible=collisions == 0,
        first_collision_index=first,
        collision_count=collisions,
    )


def _contact_count(points: Sequence[int], bits: Sequence[int]) -> int:
    # only H beads can touch; few of them makes the all-pairs scan cheapest,
    # many of them makes the hashed neighbor probe cheaper
    hpoints = [(p, i) for i, p in enumerate(points) if bits[i]]
    count = 0
    if len(hpoints) <= 9:
        for a, (p, i) in enumerate(hpoints):
            for q, j in hpoints[a + 1 :]:
                if j > i + 1:
                    d = abs(q - p)
                    if d == 1 or d == _X:
                        count += 1
        return count
    index = dict(hpoints)
    get = index.get
    for p, i in hpoints:
        for q in (p + 1, p + _X):
            j = get(q)
            if j is not None and abs(j - i) > 1:
                count += 1
    return count


def contacts(outcome: FoldOutcome, binary: Digits) -> int:
    """Count H-H pairs that are lattice-adjacent but not chain-consecutive."""
    if not outcome.feasible:
        raise ValueError("contacts are defined only for feasible folds")
    bits = as_digits(binary)
    if len(bits) != len(outcome.positions):
        raise ValueError(
            f"binary segment has {len(bits)} digits for a {len(outcome.positions)}-bead fold"
        )
    points = [(x << 16) + y for x, y in outcome.positions]
    return _contact_count(points, bits)


def contact_pairs(outcome: FoldOutcome) -> list[tuple[int, int]]:
    """Index pairs (i, j), j > i + 1, whose beads are lattice-adjacent."""
    if not outcome.feasible:
        raise ValueError("contact pairs are defined only for feasible folds")
    points = [(x << 16) + y for x, y in outcome.positions]
    index = {p: i for i, p in enumerate(points)}
    pairs = []
    for i, p in enumerate(points):
        for q in (p + 1, p - 1, p + _X, p - _X):
            j = index.get(q)
            if j is not None and j > i + 1:
                pairs.append((i, j))
    return pairs


def default_penalty(n: int, first_collision: int, collision_count: int) -> int:
    """Infeasibility score: earlier and more numerous collisions are worse.

    Always >= 1, so penalties never overlap the feasible range (<= 0).
    """
    return (n - first_collision) + (collision_count - 1)


def objective_value(
    coord_b: Digits,
    coord_t: Digits,
    penalty: PenaltyFn = default_penalty,
) -> int:
    """Energy of a feasible fold (-contacts) or its infeasibility penalty."""
    bits = as_digits(coord_b)
    turns = as_digits(coord_t)
    n = len(bits)
    if len(turns) != n - 1:
        raise ValueError(f"need {n - 1} turn digits for {n} beads, got {len(turns)}")
    points, first, collisions = _fold_points(turns)
    if collisions:
        return penalty(n, first, collisions)
    return -_contact_count(points, bits)


def canonical_turns(turns: Digits) -> tuple[int, ...]:
    """Rotation-canonical form of a turn string: first step forced forward.

    The first digit only orients the whole fold on the grid (the remaining
    turns are relative), so the three strings differing in it encode rigid
    rotations of one conformation.  Canonicalizing collapses them while
    leaving mirror images distinct.
    """
    t = as_digits(turns)
    return (2,) + t[1:]


def target_energy(n: int) -> int:
    """Lowest reachable energy for an all-H chain of n beads on the square grid.

    An n-cell grid polyomino has at most 2n - ceil(2*sqrt(n)) adjacent cell
    pairs; subtracting the n - 1 chain bonds leaves the contact bound.
    """
    if n < 3:
        raise ValueError("chains need at least 3 beads")
    ceil_2_sqrt_n = math.isqrt(4 * n - 1) + 1
    return -(n + 1 - ceil_2_sqrt_n)


@dataclass(frozen=True)
class HPProblem:
    """One folding search instance: objective, move filter, and stop test.

    The search space is always n binary color digits followed by n-1
    ternary turn digits.  The plan decides which segment the walk may move
    in: 'A' turns only, 'B' colors only, 'C' both.  Color moves are
    admissible only while the resulting weight stays at or below
    ``weight_cap``; the stop test demands the exact target weight.
    """

    plan: str
    n: int
    weight_target: int
    energy_target: int
    fixed_binary: Optional[tuple[int, ...]] = None
    fixed_ternary: Optional[tuple[int, ...]] = None
    weight_cap: int = 0
    penalty: PenaltyFn = field(default=default_penalty, compare=False)

    @cached_property
    def spec(self) -> RadixSpec:
        return RadixSpec(((2, self.n), (3, self.n - 1)))

    def split(self, coord: Coordinate) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return coord.digits[: self.n], coord.digits[self.n :]

    def objective(self, coord: Coordinate) -> int:
        bits = coord.digits
        n = self.n
        points, first, collisions = _fold_analysis(bits[n:])
        if collisions:
            return self.penalty(n, first, collisions)
        return -_contact_count(points, bits)

    def admissible_neighbors(self, coord: Coordinate) -> list[Coordinate]:
        """Distance-1 moves the plan admits, position-major order."""
        digits = coord.digits
        n = self.n
        spec = self.spec
        result: list[Coordinate] = []
        if self.plan in ("B", "C"):
            current = sum(digits[:n])
            for i in range(n):
                if digits[i]:
                    flipped = digits[:i] + (0,) + digits[i + 1 :]
                elif current + 1 <= self.weight_cap:
                    flipped = digits[:i] + (1,) + digits[i + 1 :]
                else:
                    continue
                result.append(Coordinate._unchecked(spec, flipped))
        if self.plan in ("A", "C"):
            for i in range(n, 2 * n - 1):
                d = digits[i]
                if d > 0:
                    result.append(
                        Coordinate._unchecked(spec, digits[:i] + (d - 1,) + digits[i + 1 :])
                    )
                if d < 2:
                    result.append(
                        Coordinate._unchecked(spec, digits[:i] + (d + 1,) + digits[i + 1 :])
                    )
        return result

    def is_solution(self, coord: Coordinate, value: int, target: Optional[int] = None) -> bool:
        """Stop test: value at or below target and exact target weight."""
        bound = self.energy_target if target is None else target
        if value > bound:
            return False
        if self.plan == "A":
            return True
        return sum(coord.digits[: self.n]) == self.weight_target

    def random_coordinate(self, rng: random.Random) -> Coordinate:
        """Initial or restart draw honoring the plan's fixed segment and weight."""
        if self.plan == "A":
            bits = self.fixed_binary
        else:
            bits = sample_weight_positions(rng, self.n, self.weight_target)
        if self.plan == "B":
            turns = self.fixed_ternary
        else:
            turns = tuple(rng.randrange(3) for _ in range(self.n - 1))
        return Coordinate._unchecked(self.spec, bits + turns)

    def coordinate(self, coord_b: Digits, coord_t: Digits) -> Coordinate:
        """Build a full search-space coordinate from its two segments."""
        return Coordinate(self.spec, as_digits(coord_b) + as_digits(coord_t))

    def solution_key(self, coord: Coordinate) -> tuple[str, str]:
        """Identity of a solution for uniqueness counting.

        Turn strings are rotation-canonicalized where the fold is part of
        the search (plans A and C); plan B reports its fixed fold verbatim.
        """
        bits, turns = self.split(coord)
        if self.plan != "B":
            turns = canonical_turns(turns)
        return digits_text(bits), digits_text(turns)


def make_problem(
    plan: str,
    n: Optional[int] = None,
    weight_target: Optional[int] = None,
    energy_target: Optional[int] = None,
    coord_b: Optional[Digits] = None,
    coord_t: Optional[Digits] = None,
    weight_cap: Optional[int] = None,
    penalty: PenaltyFn = default_penalty,
) -> HPProblem:
    """Validate and assemble an HPProblem for one of the three plans.

    Plan A requires the binary segment (its weight becomes the target
    weight), plan B the ternary segment plus a weight target, and plan C
    fixes neither.  The weight cap defaults to one above the target.  The
    energy target is never checked for achievability; unreachable targets
    simply leave runs censored.
    """
    plan = plan.strip().upper()
    if plan not in PLANS:
        raise ValueError(f"plan must be one of {PLANS}, got {plan!r}")

    fixed_b = as_digits(coord_b) if coord_b is not None else None
    fixed_t = as_digits(coord_t) if coord_t is not None else None

    if plan == "A":
        if fixed_b is None:
            raise ValueError("plan A requires the binary segment")
        if n is None:
            n = len(fixed_b)
        w = weight(fixed_b)
        if weight_target is not None and weight_target != w:
            raise ValueError(f"fixed binary segment has weight {w}, not {weight_target}")
        weight_target = w
    elif plan == "B":
        if fixed_t is None:
            raise ValueError("plan B requires the ternary segment")
        if n is None:
            n = len(fixed_t) + 1
        if weight_target is None:
            raise ValueError("plan B requires a weight target")
    else:
        if fixed_b is not None or fixed_t is not None:
            raise ValueError("plan C admits no fixed segments")
        if n is None or weight_target is None:
            raise ValueError("plan C requires the chain length and weight target")

    if n < 3:
        raise ValueError("chains need at least 3 beads")
    if not 0 <= weight_target <= n:
        raise ValueError(f"weight target {weight_target} out of range for {n} beads")
    if energy_target is None:
        raise ValueError("an energy target is required")
    if energy_target > 0:
        raise ValueError("energy targets are zero or negative")
    if fixed_b is not None and len(fixed_b) != n:
        raise ValueError(f"binary segment has {len(fixed_b)} digits, expected {n}")
    if fixed_t is not None:
        if len(fixed_t) != n - 1:
            raise ValueError(f"ternary segment has {len(fixed_t)} digits, expected {n - 1}")
        if any(d not in (0, 1, 2) for d in fixed_t):
            raise ValueError("ternary segment digits must be 0, 1 or 2")
    if weight_cap is None:
        weight_cap = weight_target + 1
    if weight_cap < weight_target:
        raise ValueError("weight cap below the weight target makes the stop test unreachable")

    return HPProblem(
        plan=plan,
        n=n,
        weight_target=weight_target,
        energy_target=energy_target,
        fixed_binary=fixed_b,
        fixed_ternary=fixed_t,
        weight_cap=weight_cap,
        penalty=penalty,
    )


def spiral_instance(length: int) -> HPProblem:
    """All-H plan A instance at the polyomino contact bound, desk scale only."""
    if not 9 <= length <= 36:
        raise ValueError("spiral instances cover lengths 9 through 36")
    return make_problem(
        "A",
        coord_b=(1,) * length,
        energy_target=target_energy(length),
    )
