"""Published classification counts, kept as labelled reference constants.

``None`` marks a cell that is unknown in the literature.  Rows outside
``REPRODUCIBLE`` are never recomputed here.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Table1Row:
    p: int
    n: int
    isotopism_classes: int | None
    groups: int | None  # classes under isotopism or anti-isotopism
    commutative: int | None

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def label(self) -> str:
        return f"{self.p}^{self.n}"


TABLE1 = (
    Table1Row(2, 3, 1, 1, 1),
    Table1Row(2, 4, 3, 3, 1),
    Table1Row(2, 5, 6, 4, 2),
    Table1Row(2, 6, 332, 184, 2),
    Table1Row(2, 7, None, None, 2),
    Table1Row(3, 3, 2, 2, 2),
    Table1Row(3, 4, 27, 19, 2),
    Table1Row(3, 5, 23, 15, 7),
    Table1Row(5, 3, 4, None, 2),
    Table1Row(5, 4, None, None, None),
    Table1Row(7, 3, None, None, None),
    Table1Row(7, 4, 356, 227, 2),
)

# rows the enumerator can recompute (2^5 only with the long-run flag)
REPRODUCIBLE = {(2, 3), (2, 4), (3, 3), (2, 5)}
LONG_RUN = {(2, 5)}

# census count of the non-Heisenberg group with more than two maximal abelians
NON_HEISENBERG_CENSUS = {(2, 5): 3, (2, 6): 5, (3, 3): 4, (3, 4): 10, (3, 5): 4, (5, 3): 6}


def table1_row(p: int, n: int) -> Table1Row | None:
    for row in TABLE1:
        if (row.p, row.n) == (p, n):
            return row
    return None
