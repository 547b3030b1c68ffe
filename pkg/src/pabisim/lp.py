"""Exact rational LP feasibility (phase-one simplex, Bland's rule).

Only feasibility is decided; there is no objective. Every system has the
shape ``A x = b, x >= 0`` over Fractions, so a returned witness can be
substituted back and checked with exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Hashable, Optional, Sequence

from .dist import to_prob
from .errors import DimensionMismatch

ZERO = Fraction(0)
ONE = Fraction(1)


class LinearSystem:
    """Named nonnegative variables and exact equality constraints."""

    def __init__(self):
        self.variables: list[Hashable] = []
        self.equalities: list[tuple[dict[int, Fraction], Fraction]] = []
        self._index: dict[Hashable, int] = {}

    def add_variable(self, name: Hashable) -> int:
        if name in self._index:
            raise ValueError(f"variable {name!r} declared twice")
        self._index[name] = len(self.variables)
        self.variables.append(name)
        return self._index[name]

    def index(self, name) -> int:
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    def add_equality(self, coeffs: dict, rhs) -> None:
        row: dict[int, Fraction] = {}
        for name, value in coeffs.items():
            if name not in self._index:
                raise KeyError(f"undeclared variable {name!r}")
            value = to_prob(value) if not isinstance(value, Fraction) else value
            j = self._index[name]
            row[j] = row.get(j, ZERO) + value
        row = {j: v for j, v in row.items() if v}
        self.equalities.append((row, Fraction(rhs)))

    @property
    def num_variables(self):
        return len(self.variables)

    def check(self, witness: dict) -> bool:
        """Exact substitution check of a named assignment."""
        values = [witness.get(name, ZERO) for name in self.variables]
        if any(v < 0 for v in values):
            return False
        return all(
            sum((c * values[j] for j, c in row.items()), ZERO) == rhs
            for row, rhs in self.equalities
        )


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[dict] = field(default=None)

    @property
    def status(self):
        return "feasible" if self.feasible else "infeasible"

    def __bool__(self):
        return self.feasible


def _integer_rows(system: LinearSystem):
    """Scale each equality to integer coefficients with a nonnegative rhs."""
    n = system.num_variables
    rows, rhs = [], []
    for coeffs, b in system.equalities:
        den = b.denominator
        for v in coeffs.values():
            den = den * v.denominator // gcd(den, v.denominator)
        sign = -1 if b < 0 else 1
        row = [0] * n
        for j, v in coeffs.items():
            row[j] = sign * int(v * den)
        rows.append(row)
        rhs.append(sign * int(b * den))
    return rows, rhs


def feasible(system: LinearSystem) -> FeasibilityResult:
    """Decide ``A x = b, x >= 0``; the witness is a basic feasible solution.

    The tableau is kept integral with fraction-free (Bareiss) pivoting: every
    entry equals ``det`` times the entry of the usual rational tableau, where
    ``det`` is the previous pivot element, so each update divides exactly.
    """
    n = system.num_variables
    m = len(system.equalities)
    base, rhs = _integer_rows(system)
    width = n + m
    rows = []
    for i, row in enumerate(base):
        full = row + [0] * m
        full[n + i] = 1
        rows.append(full)
    basis = [n + i for i in range(m)]

    # phase-one objective: minimise the sum of artificials
    obj = [0] * width
    for row in rows:
        for j in range(n):
            obj[j] -= row[j]
    obj_rhs = -sum(rhs)
    det = 1

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                if leave is None:
                    leave = i
                    continue
                # compare rhs[i]/a against rhs[leave]/rows[leave][enter]
                lhs = rhs[i] * rows[leave][enter]
                cur = rhs[leave] * a
                if lhs < cur or (lhs == cur and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            # cannot happen: the phase-one objective is bounded below by 0
            raise RuntimeError("unbounded phase-one problem")
        prow = rows[leave]
        piv = prow[enter]
        prhs = rhs[leave]
        for k in range(m):
            if k == leave:
                continue
            row = rows[k]
            f = row[enter]
            if f:
                for j in range(width):
                    row[j] = (piv * row[j] - f * prow[j]) // det
                rhs[k] = (piv * rhs[k] - f * prhs) // det
            elif piv != det:
                for j in range(width):
                    if row[j]:
                        row[j] = piv * row[j] // det
                rhs[k] = piv * rhs[k] // det
        f = obj[enter]
        for j in range(width):
            obj[j] = (piv * obj[j] - f * prow[j]) // det
        obj_rhs = (piv * obj_rhs - f * prhs) // det
        basis[leave] = enter
        det = piv

    if obj_rhs != 0:
        return FeasibilityResult(False)
    values = [ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            values[j] = Fraction(rhs[i], det)
    witness = {name: values[j] for j, name in enumerate(system.variables)}
    return FeasibilityResult(True, witness)


def in_convex_hull(point: Sequence, generators: Sequence[Sequence]) -> Optional[list]:
    """Convex coefficients expressing ``point`` over ``generators``, or None."""
    dim = len(point)
    for g in generators:
        if len(g) != dim:
            raise DimensionMismatch(f"generator of dimension {len(g)}, point has {dim}")
    if not generators:
        return None
    sys = LinearSystem()
    for i in range(len(generators)):
        sys.add_variable(i)
    for d in range(dim):
        sys.add_equality({i: Fraction(g[d]) for i, g in enumerate(generators)}, Fraction(point[d]))
    sys.add_equality({i: ONE for i in range(len(generators))}, ONE)
    res = feasible(sys)
    if not res:
        return None
    return [res.witness[i] for i in range(len(generators))]
