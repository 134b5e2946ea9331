"""
BoundReport: per-check comparison of empirical quantities with closed forms.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import pandas as pd

REPORT_SCHEMA_VERSION = 1


class Status(Enum):
    HOLDS_WITH_EQUALITY = "holds-with-equality"
    HOLDS_STRICTLY = "holds-strictly"
    VIOLATION = "VIOLATION"
    OUT_OF_RANGE = "out-of-range"


class Severity(Enum):
    THEOREM = "theorem"
    CONJECTURE = "CONJECTURE"


class Relation(Enum):
    LE = "<="
    EQ = "="
    GE = ">="


def classify(empirical: int, formula: Optional[int], relation: Relation) -> Status:
    """Status of ``empirical <relation> formula`` in exact integer arithmetic."""
    if formula is None:
        return Status.OUT_OF_RANGE
    if empirical == formula:
        return Status.HOLDS_WITH_EQUALITY
    if relation is Relation.LE and empirical < formula:
        return Status.HOLDS_STRICTLY
    if relation is Relation.GE and empirical > formula:
        return Status.HOLDS_STRICTLY
    return Status.VIOLATION


@dataclass(frozen=True)
class BoundEntry:
    name: str
    j: Optional[int]
    empirical: int
    formula: Optional[int]
    relation: Relation
    severity: Severity = Severity.THEOREM
    status: Status = Status.OUT_OF_RANGE

    @classmethod
    def compare(
        cls,
        name: str,
        empirical: int,
        formula: Optional[int],
        relation: Relation = Relation.LE,
        j: Optional[int] = None,
        severity: Severity = Severity.THEOREM,
    ) -> "BoundEntry":
        return cls(name, j, empirical, formula, relation, severity, classify(empirical, formula, relation))

    @property
    def is_violation(self) -> bool:
        return self.status is Status.VIOLATION

    @property
    def margin(self) -> Optional[int]:
        """Distance to the bound on the safe side; negative means violated."""
        if self.formula is None:
            return None
        if self.relation is Relation.LE:
            return self.formula - self.empirical
        if self.relation is Relation.GE:
            return self.empirical - self.formula
        return -abs(self.formula - self.empirical)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "j": self.j,
            "empirical": self.empirical,
            "formula": self.formula,
            "relation": self.relation.value,
            "severity": self.severity.value,
            "status": self.status.value,
        }


@dataclass
class BoundReport:
    set_id: str
    n: int
    dimension: int
    convex: Optional[bool] = None
    entries: List[BoundEntry] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add(self, entry: BoundEntry) -> BoundEntry:
        self.entries.append(entry)
        return entry

    def extend(self, entries) -> None:
        self.entries.extend(entries)

    def by_name(self, name: str) -> List[BoundEntry]:
        return [entry for entry in self.entries if entry.name == name]

    @property
    def theorem_violations(self) -> List[BoundEntry]:
        return [e for e in self.entries if e.is_violation and e.severity is Severity.THEOREM]

    @property
    def conjecture_violations(self) -> List[BoundEntry]:
        return [e for e in self.entries if e.is_violation and e.severity is Severity.CONJECTURE]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "set_id": self.set_id,
            "n": self.n,
            "dimension": self.dimension,
            "convex": self.convex,
            "entries": [entry.to_dict() for entry in self.entries],
            "theorem_violations": len(self.theorem_violations),
            "conjecture_violations": len(self.conjecture_violations),
            "metadata": self.metadata,
        }

    def to_frame(self) -> pd.DataFrame:
        columns = ["name", "j", "empirical", "formula", "relation", "severity", "status"]
        frame = pd.DataFrame([entry.to_dict() for entry in self.entries], columns=columns)
        # nullable integers so missing j / formula print blank, not NaN floats
        for column in ("j", "empirical", "formula"):
            frame[column] = frame[column].astype("Int64")
        return frame

    def to_text(self) -> str:
        header = f"set {self.set_id[:16]}  n={self.n}  dimension={self.dimension}  convex={self.convex}"
        if not self.entries:
            return header + "\n(no entries)\n"
        body = self.to_frame().to_string(index=False, na_rep="")
        footer = (
            f"theorem violations: {len(self.theorem_violations)}  "
            f"conjecture violations: {len(self.conjecture_violations)}"
        )
        return f"{header}\n{body}\n{footer}\n"
