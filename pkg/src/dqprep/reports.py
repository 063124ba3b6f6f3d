"""Per-pass bookkeeping shared by the pipeline and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class PassReport:
    """What one preprocessing pass did to the formula."""

    name: str
    clauses_removed: int = 0
    clauses_shortened: int = 0
    units_added: int = 0
    equivalences_added: int = 0
    conflicts: int = 0
    wall_time: float = field(default=0.0, compare=False)

    @property
    def changed(self) -> bool:
        return bool(self.clauses_removed or self.clauses_shortened
                    or self.units_added or self.equivalences_added
                    or self.conflicts)

    def as_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "clauses_removed": self.clauses_removed,
            "clauses_shortened": self.clauses_shortened,
            "units_added": self.units_added,
            "equivalences_added": self.equivalences_added,
            "conflicts": self.conflicts,
            "wall_time": self.wall_time,
        }
