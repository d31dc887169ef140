"""Exhaustive ground truth for small folding instances.

Enumerates every solution-eligible coordinate pair of a problem (the fixed
segment for plans A/B, exact-target-weight colors for plans B/C, all turn
strings otherwise), recording the exact minimum, every minimizer, and the
full objective-value histogram.  Enumeration order is fixed and documented,
so a scan can be split into contiguous index ranges that run in parallel or
resume from a checkpoint and merge associatively:

    flat index = ternary_index * (number of binaries) + binary_index

where ternary strings count in odometer order (rightmost digit fastest) and
weight-w binaries follow itertools.combinations of the one-positions.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from sawalk.hpfold import _X, HPProblem, _trace, canonical_turns, digits_text
from sawalk.mixedradix import SpaceTooLargeError

DEFAULT_DOMAIN_CAP = 10**8


@dataclass(frozen=True)
class OracleReport:
    """Result of scanning (part of) a problem's solution-eligible domain.

    ``evaluations`` and ``histogram`` cover every raw pair scanned, while
    ``argmin`` lists distinct minimizing solutions with searched folds in
    rotation-canonical text form (mirror folds stay distinct).
    """

    min_value: int
    argmin: tuple[tuple[str, str], ...]  # (colors, turns) text pairs, sorted
    evaluations: int
    histogram: dict[int, int]

    def count_at_or_below(self, threshold: float) -> int:
        return sum(c for v, c in self.histogram.items() if v <= threshold)


def merge_reports(reports: list[OracleReport]) -> OracleReport:
    """Combine chunk reports; associative and order-independent."""
    if not reports:
        raise ValueError("nothing to merge")
    min_value = min(r.min_value for r in reports)
    argmin = sorted(
        {pair for r in reports if r.min_value == min_value for pair in r.argmin}
    )
    histogram: dict[int, int] = {}
    for r in reports:
        for v, c in r.histogram.items():
            histogram[v] = histogram.get(v, 0) + c
    return OracleReport(
        min_value=min_value,
        argmin=tuple(argmin),
        evaluations=sum(r.evaluations for r in reports),
        histogram=histogram,
    )


def _binaries(problem: HPProblem) -> list[tuple[int, ...]]:
    if problem.plan == "A":
        return [problem.fixed_binary]
    bits_list = []
    for ones in combinations(range(problem.n), problem.weight_target):
        ones = set(ones)
        bits_list.append(tuple(1 if i in ones else 0 for i in range(problem.n)))
    return bits_list


def domain_size(problem: HPProblem) -> int:
    """Number of solution-eligible (colors, turns) pairs."""
    binaries = 1 if problem.plan == "A" else comb(problem.n, problem.weight_target)
    ternaries = 1 if problem.plan == "B" else 3 ** (problem.n - 1)
    return binaries * ternaries


def _scan(problem: HPProblem, start: int, stop: int) -> OracleReport:
    """Evaluate flat indices [start, stop) of the enumeration."""
    n = problem.n
    penalty = problem.penalty
    binaries = _binaries(problem)
    num_b = len(binaries)
    masks = [sum(1 << i for i, b in enumerate(bits) if b) for bits in binaries]

    if problem.plan == "B":
        ternaries: Optional[list[tuple[int, ...]]] = [problem.fixed_ternary]
    else:
        ternaries = None  # odometer over all 3**(n-1) strings

    histogram: dict[int, int] = {}
    min_value: Optional[int] = None
    argmin: set[tuple[int, int]] = set()  # (binary index, ternary index)
    evaluations = 0

    t_idx, b_offset = divmod(start, num_b)
    remaining = stop - start
    if ternaries is None:
        turns = [0] * (n - 1)
        rest = t_idx
        for pos in range(n - 2, -1, -1):
            rest, turns[pos] = divmod(rest, 3)
    else:
        turns = list(ternaries[t_idx])

    while remaining > 0:
        span = min(num_b - b_offset, remaining)
        points = _trace(turns)
        if len(set(points)) == len(points):
            pair_masks = []
            index = {p: i for i, p in enumerate(points)}
            for i, p in enumerate(points):
                for q in (p + 1, p + _X):
                    j = index.get(q)
                    if j is not None and abs(j - i) > 1:
                        pair_masks.append((1 << i) | (1 << j))
            for b_idx in range(b_offset, b_offset + span):
                mask = masks[b_idx]
                value = -sum(1 for m in pair_masks if mask & m == m)
                histogram[value] = histogram.get(value, 0) + 1
                if min_value is None or value <= min_value:
                    if min_value is None or value < min_value:
                        min_value = value
                        argmin.clear()
                    argmin.add((b_idx, t_idx))
        else:
            seen: set[int] = set()
            first = None
            collisions = 0
            for i, p in enumerate(points):
                if p in seen:
                    collisions += 1
                    if first is None:
                        first = i
                else:
                    seen.add(p)
            value = penalty(n, first, collisions)
            histogram[value] = histogram.get(value, 0) + span
            if min_value is None or value <= min_value:
                if min_value is None or value < min_value:
                    min_value = value
                    argmin.clear()
                argmin.update((b, t_idx) for b in range(b_offset, b_offset + span))
        evaluations += span
        remaining -= span
        b_offset = 0
        t_idx += 1
        if remaining > 0 and ternaries is None:
            for pos in range(n - 2, -1, -1):  # odometer increment
                turns[pos] += 1
                if turns[pos] < 3:
                    break
                turns[pos] = 0

    def text_pair(b_idx: int, t_idx_: int) -> tuple[str, str]:
        if ternaries is None:
            digits = []
            rest = t_idx_
            for _ in range(n - 1):
                rest, d = divmod(rest, 3)
                digits.append(d)
            # searched folds are reported rotation-canonically, so the three
            # re-orientations of one conformation collapse to one minimizer
            turn_text = digits_text(canonical_turns(tuple(reversed(digits))))
        else:
            turn_text = digits_text(ternaries[t_idx_])
        return digits_text(binaries[b_idx]), turn_text

    return OracleReport(
        min_value=min_value if min_value is not None else 0,
        argmin=tuple(sorted({text_pair(b, t) for b, t in argmin})),
        evaluations=evaluations,
        histogram=histogram,
    )


def enumerate_optimum(
    problem: HPProblem,
    domain_cap: int = DEFAULT_DOMAIN_CAP,
    start: int = 0,
    count: Optional[int] = None,
    workers: int = 1,
) -> OracleReport:
    """Scan the problem's whole eligible domain (or a checkpoint slice).

    Refuses domains larger than ``domain_cap`` rather than starting a scan
    that cannot finish.  With ``workers`` > 1 the index range is split into
    contiguous chunks scanned in parallel and merged.
    """
    size = domain_size(problem)
    if size > domain_cap:
        raise SpaceTooLargeError(size, domain_cap)
    stop = size if count is None else min(size, start + count)
    if not 0 <= start <= stop:
        raise ValueError(f"bad scan range [{start}, {stop})")
    if start == stop:
        return OracleReport(0, (), 0, {})
    if workers <= 1:
        return _scan(problem, start, stop)
    bounds = [start + (stop - start) * i // workers for i in range(workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_scan, problem, lo, hi)
            for lo, hi in zip(bounds, bounds[1:])
            if lo < hi
        ]
        return merge_reports([f.result() for f in futures])


def count_at_or_below(
    problem: HPProblem,
    threshold: float,
    report: Optional[OracleReport] = None,
    domain_cap: int = DEFAULT_DOMAIN_CAP,
    workers: int = 1,
) -> int:
    """How many eligible pairs score at or below the threshold.

    Pass a previously computed report to avoid re-scanning the domain.
    """
    if report is None:
        report = enumerate_optimum(problem, domain_cap=domain_cap, workers=workers)
    return report.count_at_or_below(threshold)


def report_text(report: OracleReport) -> str:
    """Serialize a report as line-oriented key=value text."""
    lines = [
        f"evaluations = {report.evaluations}",
        f"min-value = {report.min_value}",
    ]
    for value in sorted(report.histogram):
        lines.append(f"count[{value}] = {report.histogram[value]}")
    for colors, turns in report.argmin:
        lines.append(f"argmin = {colors} {turns}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> OracleReport:
    evaluations = 0
    min_value = 0
    histogram: dict[int, int] = {}
    argmin: list[tuple[str, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = (part.strip() for part in line.partition("="))
        if key == "evaluations":
            evaluations = int(value)
        elif key == "min-value":
            min_value = int(value)
        elif key.startswith("count[") and key.endswith("]"):
            histogram[int(key[6:-1])] = int(value)
        elif key == "argmin":
            colors, turns = value.split()
            argmin.append((colors, turns))
        else:
            raise ValueError(f"unrecognized report line: {raw!r}")
    return OracleReport(
        min_value=min_value,
        argmin=tuple(sorted(argmin)),
        evaluations=evaluations,
        histogram=histogram,
    )
