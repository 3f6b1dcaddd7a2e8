"""Deterministic pass/fail reports for exact identity checks."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .exactnum import ZERO, Radical
from .operators import SparseOperator


@dataclass
class RelationResult:
    relation: str
    passed: bool
    witness: str | None = None
    deviation: Radical = ZERO


@dataclass
class CheckReport:
    """Outcome of one named check suite at parameters ``(rank, level)``.

    Relations are kept in the order they were recorded.  A relation passes
    only on exact equality, so a passing relation always carries deviation 0.
    """

    check: str
    rank: int
    level: int
    results: list[RelationResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_deviation(self) -> Radical:
        best = ZERO
        for r in self.results:
            if r.deviation > best:
                best = r.deviation
        return best

    def record(self, relation: str, passed: bool, witness: str | None = None,
               deviation: Radical = ZERO) -> bool:
        self.results.append(RelationResult(relation, bool(passed), witness, deviation))
        return bool(passed)

    def expect_zero(self, relation: str, op: SparseOperator,
                    label: Callable[[int], object] = str) -> bool:
        """Record ``op == 0``; on failure the witness is the largest entry."""
        worst = op.max_abs_entry()
        if worst is None:
            return self.record(relation, True)
        (r, c), mag = worst
        witness = f"{_fmt(label(r))} {_fmt(label(c))} {op[(r, c)].to_text()}"
        return self.record(relation, False, witness, mag)

    def expect_equal(self, relation: str, lhs: SparseOperator, rhs: SparseOperator,
                     label: Callable[[int], object] = str) -> bool:
        return self.expect_zero(relation, lhs - rhs, label)

    def expect_items_zero(self, relation: str, items: Iterable[tuple[object, Radical]]) -> bool:
        """Record that every ``(label, value)`` has value 0.

        The witness names the largest offending value; ``items`` must come in a
        deterministic order.
        """
        worst = None
        for label, value in items:
            if not value:
                continue
            mag = abs(value)
            if worst is None or mag > worst[1]:
                worst = (label, mag, value)
        if worst is None:
            return self.record(relation, True)
        label, mag, value = worst
        return self.record(relation, False, f"{_fmt(label)} {value.to_text()}", mag)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "rank": self.rank,
            "level": self.level,
            "passed": self.passed,
            "max_deviation": self.max_deviation.to_text(),
            "details": [
                {"relation": r.relation, "passed": r.passed, "witness": r.witness}
                for r in self.results
            ],
        }

    def to_text(self, verbose: bool = True) -> str:
        """Human-readable report; ``verbose=False`` lists failing relations only."""
        head = f"{self.check} (rank={self.rank}, level={self.level}): " + (
            "PASS" if self.passed else "FAIL"
        )
        lines = [head, f"  max_deviation: {self.max_deviation.to_text()}"]
        for r in self.results:
            if not verbose and r.passed:
                continue
            mark = "ok  " if r.passed else "FAIL"
            line = f"  [{mark}] {r.relation}"
            if r.witness is not None:
                line += f"  witness: {r.witness}"
            lines.append(line)
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _fmt(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(str(x) for x in label) + ")"
    return str(label)
