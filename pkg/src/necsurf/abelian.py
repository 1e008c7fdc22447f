"""Integer Smith normal form and abelianization of finite presentations.

The Smith normal form D = U*M*V (U, V unimodular, D diagonal with
d_1 | d_2 | ...) is computed over Python integers, so there is no
overflow and every identity is exact.  Abelianizing a presentation means
taking the Smith form of its relator exponent matrix; the column
transform V then reduces any word to canonical coordinates in the
direct-sum decomposition Z/d_1 x ... x Z/d_k x Z^f.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import Presentation
from .words import Word

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matrix_multiply(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik:
                row_b = b[k]
                row_o = out[i]
                for j in range(cols):
                    row_o[j] += aik * row_b[j]
    return out


def integer_determinant(m: Matrix) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with U*M*V = D, U and V unimodular, D diagonal
    and each diagonal entry dividing the next."""
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def row_sub(i: int, j: int, q: int) -> None:  # row_i -= q * row_j
        for t in range(cols):
            a[i][t] -= q * a[j][t]
        for t in range(rows):
            u[i][t] -= q * u[j][t]

    def col_sub(i: int, j: int, q: int) -> None:  # col_i -= q * col_j
        for t in range(rows):
            a[t][i] -= q * a[t][j]
        for t in range(cols):
            v[t][i] -= q * v[t][j]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for t in range(rows):
            a[t][i], a[t][j] = a[t][j], a[t][i]
        for t in range(cols):
            v[t][i], v[t][j] = v[t][j], v[t][i]

    def negate_row(i: int) -> None:
        for t in range(cols):
            a[i][t] = -a[i][t]
        for t in range(rows):
            u[i][t] = -u[i][t]

    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry of the working submatrix becomes the pivot
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot != (t, t):
            if pivot[0] != t:
                swap_rows(pivot[0], t)
            if pivot[1] != t:
                swap_cols(pivot[1], t)
        if a[t][t] < 0:
            negate_row(t)

        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                row_sub(i, t, a[i][t] // a[t][t])
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                col_sub(j, t, a[t][j] // a[t][t])
                if a[t][j]:
                    dirty = True
        if dirty:
            continue  # a strictly smaller pivot appeared; redo this step

        # divisibility: the pivot must divide the rest of the submatrix
        fixed = True
        for i in range(t + 1, rows):
            bad = next((j for j in range(t + 1, cols) if a[i][j] % a[t][t]), None)
            if bad is not None:
                row_sub(t, i, -1)  # row_t += row_i, exposing the bad entry
                fixed = False
                break
        if not fixed:
            continue
        t += 1

    return a, u, v


@dataclass(frozen=True)
class Abelianization:
    """Abelianization of a presentation, with canonical coordinates.

    A word maps to the vector of its exponent sums times the Smith column
    transform; coordinate i is reduced modulo the i-th diagonal entry
    (0 meaning a free coordinate).  The zero vector characterises words
    that die under every homomorphism to an abelian group.
    """

    presentation: Presentation
    moduli: tuple[int, ...]
    _column_transform: tuple[tuple[int, ...], ...]
    _generator_index: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, p: Presentation) -> "Abelianization":
        names = p.generator_names()
        index = {g: i for i, g in enumerate(names)}
        matrix = []
        for rel in p.relators:
            row = [0] * len(names)
            for g, e in rel.exponent_sums().items():
                row[index[g]] = e
            matrix.append(row)
        if not matrix:
            matrix = [[0] * len(names)] if names else []
        d, _, v = smith_normal_form(matrix)
        diag = [d[i][i] for i in range(min(len(d), len(names)))]
        moduli = tuple(
            (diag[i] if i < len(diag) else 0) for i in range(len(names))
        )
        return cls(
            p,
            moduli,
            tuple(tuple(row) for row in v),
            tuple(index.items()),
        )

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.moduli if d > 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.moduli if d == 0)

    def structure(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "trivial"

    def class_of(self, w: Word) -> tuple[int, ...]:
        index = dict(self._generator_index)
        n = len(index)
        exponents = [0] * n
        for g, e in w.exponent_sums().items():
            exponents[index[g]] += e
        coords = [
            sum(exponents[i] * self._column_transform[i][j] for i in range(n))
            for j in range(n)
        ]
        return tuple(
            c % d if d > 0 else c for c, d in zip(coords, self.moduli)
        )

    def negate(self, cls_vector: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            (-c) % d if d > 0 else -c for c, d in zip(cls_vector, self.moduli)
        )

    def is_zero(self, w: Word) -> bool:
        return all(c == 0 for c in self.class_of(w))


def abelianization(p: Presentation) -> Abelianization:
    return Abelianization.of(p)
