"""Exact linear algebra helpers shared by horo and oddsymp."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

X = sympy.Symbol("x")


def _dm(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    n = len(rows)
    m = len(rows[0]) if n else 0
    return DomainMatrix([[QQ(int(v.numerator), int(v.denominator)) if isinstance(v, Fraction) else QQ(v) for v in r] for r in rows], (n, m), QQ)


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    d = _dm(rows).det()
    return Fraction(int(d.numerator), int(d.denominator))


def minimal_polynomial(rows: Sequence[Sequence[Fraction]]) -> sympy.Poly:
    """Monic minimal polynomial of a square rational matrix.

    Finds the first linear dependency among I, M, M^2, ... by exact
    nullspace computations on the flattened powers.
    """
    n = len(rows)
    m = _dm(rows)
    power = DomainMatrix.eye(n, QQ)
    flat = []
    for k in range(n + 1):
        flat.append(power.to_Matrix().reshape(n * n, 1))
        stacked = DomainMatrix.from_Matrix(sympy.Matrix.hstack(*flat)).convert_to(QQ)
        if stacked.rank() < len(flat):
            null = stacked.nullspace().to_Matrix()
            vec = null.row(0)
            lead = vec[k]
            coeffs = [vec[i] / lead for i in range(k, -1, -1)]
            return sympy.Poly(coeffs, X, domain="QQ")
        power = power * m
    raise AssertionError("Cayley-Hamilton violated")


def is_squarefree(p: sympy.Poly) -> bool:
    return sympy.gcd(p, p.diff(X)).degree() == 0


def distinct_root_count(p: sympy.Poly) -> int:
    return sympy.quo(p, sympy.gcd(p, p.diff(X))).degree()


def solve_unique(equations: list[dict], unknowns: list) -> dict:
    """Solve a linear system given as {unknown: coeff, None: constant} rows.

    Each row means sum coeff * unknown + constant = 0.  Raises
    ValueError if the system is inconsistent and LookupError listing
    the free unknowns if it is underdetermined.
    """
    pos = {u: i for i, u in enumerate(unknowns)}
    width = len(unknowns)
    rows = []
    for eq in equations:
        row = [Fraction(0)] * (width + 1)
        for key, val in eq.items():
            if key is None:
                row[width] -= Fraction(val)
            else:
                row[pos[key]] += Fraction(val)
        rows.append(row)
    if not rows:
        if unknowns:
            raise LookupError(list(unknowns))
        return {}
    mat = sympy.Matrix(rows)
    rref, pivots = mat.rref()
    if width in pivots:
        raise ValueError("inconsistent linear system")
    free = [unknowns[j] for j in range(width) if j not in pivots]
    if free:
        raise LookupError(free)
    out = {}
    for r, j in enumerate(pivots):
        val = rref[r, width]
        out[unknowns[j]] = Fraction(int(val.p), int(val.q))
    return out
