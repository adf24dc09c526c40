"""Dense two-phase simplex over exact rationals, Bland's rule throughout."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .model import Number, to_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class Sense(str, enum.Enum):
    LE = "<="
    EQ = "=="
    GE = ">="


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    """Optimize ``objective . x`` subject to ``rows``.

    Each row is ``(coefficients, sense, rhs)``. ``lower`` holds a lower
    bound per variable, ``None`` meaning free; the default is ``x >= 0``.
    """

    objective: Sequence[Number]
    rows: list = field(default_factory=list)
    maximize: bool = True
    lower: Optional[Sequence[Optional[Number]]] = None

    def __post_init__(self) -> None:
        self.objective = [to_fraction(c) for c in self.objective]
        n = len(self.objective)
        rows = []
        for coeffs, sense, rhs in self.rows:
            if len(coeffs) != n:
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {n}")
            rows.append(([to_fraction(a) for a in coeffs], Sense(sense), to_fraction(rhs)))
        self.rows = rows
        if self.lower is None:
            self.lower = [ZERO] * n
        elif len(self.lower) != n:
            raise ValueError("lower bounds must have one entry per variable")
        else:
            self.lower = [None if b is None else to_fraction(b) for b in self.lower]

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs: Sequence[Number], sense: str, rhs: Number) -> None:
        if len(coeffs) != self.num_vars:
            raise ValueError(f"row has {len(coeffs)} coefficients, expected {self.num_vars}")
        self.rows.append(([to_fraction(a) for a in coeffs], Sense(sense), to_fraction(rhs)))


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Optional[Fraction] = None
    point: Optional[tuple[Fraction, ...]] = None
    # change of the optimal value per unit increase of each row's rhs
    duals: Optional[tuple[Fraction, ...]] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.obj: list[Fraction] = []

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != 1:
            row[:] = [a / piv for a in row]
        nz = [k for k, a in enumerate(row) if a]
        for other in self.rows:
            if other is row:
                continue
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
        f = self.obj[j]
        if f:
            for k in nz:
                self.obj[k] -= f * row[k]
        self.basis[r] = j

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        """Reduced-cost row for maximizing ``cost . y`` under the current basis."""
        width = len(self.rows[0]) if self.rows else len(cost) + 1
        obj = [-c for c in cost] + [ZERO] * (width - len(cost))
        for r, b in enumerate(self.basis):
            cb = cost[b] if b < len(cost) else ZERO
            if cb:
                for k, a in enumerate(self.rows[r]):
                    if a:
                        obj[k] += cb * a
        self.obj = obj

    def run(self, allowed: int) -> bool:
        """Maximize; only columns below ``allowed`` may enter. False if unbounded."""
        while True:
            entering = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if entering is None:
                return True
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.pivot(best[1], entering)


def lp_solve(lp: LinearProgram) -> LPResult:
    n = lp.num_vars
    # substitute x = lower + y, free x = y+ - y-
    columns: list[tuple[int, int]] = []
    shift = [ZERO] * n
    for j in range(n):
        if lp.lower[j] is None:
            columns.append((j, 1))
            columns.append((j, -1))
        else:
            shift[j] = lp.lower[j]
            columns.append((j, 1))
    ny = len(columns)
    sign = 1 if lp.maximize else -1
    cost = [sign * lp.objective[j] * s for j, s in columns]

    m = len(lp.rows)
    num_slack = sum(1 for _, sense, _ in lp.rows if sense is not Sense.EQ)
    num_art = sum(1 for _, sense, _ in lp.rows if sense is not Sense.LE)
    width = ny + num_slack + num_art + 1
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    unit: list[tuple[int, int]] = []  # (identity column, flip sign) per row
    slack = ny
    art = ny + num_slack
    for coeffs, sense, rhs in lp.rows:
        b = rhs - sum((a * shift[j] for j, a in enumerate(coeffs) if a), ZERO)
        row = [ZERO] * width
        for k, (j, s) in enumerate(columns):
            row[k] = coeffs[j] * s
        if sense is Sense.LE:
            row[slack] = ONE
        elif sense is Sense.GE:
            row[slack] = -ONE
        if sense is not Sense.EQ:
            slack += 1
        flip = 1
        if b < 0:
            row = [-a for a in row]
            b = -b
            flip = -1
        row[-1] = b
        # a slack with +1 after the flip can start in the basis directly
        if sense is not Sense.EQ and row[slack - 1] == 1:
            basis.append(slack - 1)
        else:
            row[art] = ONE
            basis.append(art)
            art += 1
        unit.append((basis[-1], flip))
        rows.append(row)
    first_art = ny + num_slack
    t = _Tableau(rows, basis)

    if any(b >= first_art for b in basis):
        phase1 = [ZERO] * (width - 1)
        for k in range(first_art, width - 1):
            phase1[k] = -ONE
        t.set_objective(phase1)
        t.run(width - 1)
        if t.obj[-1] < 0:
            return LPResult(Status.INFEASIBLE)
        # drive remaining artificials out of the basis
        r = 0
        while r < len(t.rows):
            if t.basis[r] >= first_art:
                j = next((k for k in range(first_art) if t.rows[r][k] != 0), None)
                if j is None:
                    del t.rows[r]
                    del t.basis[r]
                    continue
                t.pivot(r, j)
            r += 1

    t.set_objective(cost)
    if not t.run(first_art):
        return LPResult(Status.UNBOUNDED)

    y = [ZERO] * ny
    for r, b in enumerate(t.basis):
        if b < ny:
            y[b] = t.rows[r][-1]
    x = list(shift)
    for k, (j, s) in enumerate(columns):
        x[j] += s * y[k]
    value = sum((c * xi for c, xi in zip(lp.objective, x)), ZERO)
    duals = tuple(sign * flip * t.obj[col] for col, flip in unit)
    return LPResult(Status.OPTIMAL, value, tuple(x), duals)
