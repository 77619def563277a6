"""Exact Gaussian elimination over a FieldSpec (rows are Python lists)."""

from __future__ import annotations

from .field import FieldSpec


def rref(rows: list[list], field: FieldSpec) -> tuple[list[list], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: list[list], field: FieldSpec) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: list[list], ncols: int, field: FieldSpec) -> list[list]:
    """Basis of {v : rows . v = 0}, one vector per free column in increasing order."""
    reduced, pivots = rref(rows, field) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(v)
    return basis


class EchelonSpan:
    """Incrementally maintained row space, for span-growth loops."""

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, list] = {}  # pivot column -> row normalized to 1 there

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: list) -> list:
        f = self.field
        v = list(v)
        for c, row in self.rows.items():
            if v[c]:
                k = v[c]
                v = [f.sub(x, f.mul(k, y)) for x, y in zip(v, row)]
        return v

    def add(self, v: list) -> bool:
        """Insert v; True if it enlarged the span."""
        v = self.reduce(v)
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is None:
            return False
        f = self.field
        inv = f.inv(v[piv])
        new = [f.mul(inv, x) for x in v]
        # keep every stored row zero on every other pivot column
        for c, row in self.rows.items():
            if row[piv]:
                k = row[piv]
                self.rows[c] = [f.sub(x, f.mul(k, y)) for x, y in zip(row, new)]
        self.rows[piv] = new
        return True
