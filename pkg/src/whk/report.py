"""Pass/fail reports with replayable counterexamples.

Every validator in the library returns a Report: a flat list of named
checks, each either passing or carrying the basis indices and the two
evaluated sides that disagree.  Reports are deterministic: identical
inputs produce identical item sequences.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Counterexample:
    indices: tuple[int, ...]
    lhs: str
    rhs: str


@dataclass(frozen=True)
class Item:
    name: str
    passed: bool
    counterexample: Counterexample | None = None


@dataclass(frozen=True)
class Report:
    items: tuple[Item, ...]

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> tuple[Item, ...]:
        return tuple(item for item in self.items if not item.passed)

    def failed_names(self) -> tuple[str, ...]:
        seen: list[str] = []
        for item in self.failures():
            if item.name not in seen:
                seen.append(item.name)
        return tuple(seen)

    def merged(self, other: "Report") -> "Report":
        return Report(self.items + other.items)

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.ok else "fail",
            "items": [
                {
                    "name": item.name,
                    "passed": item.passed,
                    "counterexample": None
                    if item.counterexample is None
                    else {
                        "indices": list(item.counterexample.indices),
                        "lhs": item.counterexample.lhs,
                        "rhs": item.counterexample.rhs,
                    },
                }
                for item in self.items
            ],
        }

    def render(self) -> str:
        lines = []
        for item in self.items:
            if item.passed:
                lines.append(f"check {item.name}: ok")
            elif item.counterexample is None:
                lines.append(f"check {item.name}: FAIL")
            else:
                ce = item.counterexample
                idx = ",".join(str(i) for i in ce.indices)
                lines.append(
                    f"check {item.name}: FAIL at ({idx}): lhs={ce.lhs} rhs={ce.rhs}"
                )
        lines.append(f"verdict: {'pass' if self.ok else 'fail'}")
        return "\n".join(lines)


class ReportBuilder:
    """Accumulates items; failing checks record every offending tuple."""

    def __init__(self) -> None:
        self._items: list[Item] = []

    def add(self, name: str, passed: bool, counterexample: Counterexample | None = None) -> None:
        self._items.append(Item(name, passed, None if passed else counterexample))

    def record_failure(self, name: str, indices: tuple[int, ...], lhs: object, rhs: object) -> None:
        self._items.append(Item(name, False, Counterexample(indices, str(lhs), str(rhs))))

    def summary(self, name: str, ok: bool) -> None:
        if ok:
            self._items.append(Item(name, True, None))

    def extend(self, report: Report) -> None:
        self._items.extend(report.items)

    def build(self) -> Report:
        return Report(tuple(self._items))
