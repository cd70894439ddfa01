"""Exact integer linear algebra over small matrices.

Everything here works on plain ``list[list[int]]`` rows with arbitrary
precision Python integers.  The matrices involved never exceed a few dozen
rows or columns, so the textbook algorithms are used without any effort at
asymptotic cleverness.  What matters instead is determinism: pivot choices
are fixed so that certificates are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

IntMatrix = list[list[int]]


def identity_matrix(k: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def transpose(rows: Sequence[Sequence[int]]) -> IntMatrix:
    if not rows:
        return []
    return [[row[j] for row in rows] for j in range(len(rows[0]))]


def matrix_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, computed by integer cross-multiplication."""
    a = [list(row) for row in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if a[i][col]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, m):
            if a[i][col]:
                f1, f2 = a[r][col], a[i][col]
                a[i] = [f1 * x - f2 * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def smith_normal_form(rows: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix]:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns ``(diag, u_inv)`` where ``diag`` is the diagonal of the reduced
    matrix (nonnegative, each entry dividing the next nonzero one) and
    ``u_inv`` is the inverse of the accumulated row transform.  Column
    ``k`` of ``u_inv`` is the preimage of the ``k``-th standard basis
    vector, which is what the torsion certificate needs.

    Pivot selection is fixed (smallest magnitude, ties row-major) so the
    output is deterministic.
    """
    a = [list(row) for row in rows]
    m = len(a)
    s = len(a[0]) if a else 0
    u_inv = identity_matrix(m)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for r in range(m):
            u_inv[r][i], u_inv[r][j] = u_inv[r][j], u_inv[r][i]

    def add_row(src: int, dst: int, c: int) -> None:
        # row dst += c * row src; mirrored as col src -= c * col dst on u_inv
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        for r in range(m):
            u_inv[r][src] -= c * u_inv[r][dst]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        for r in range(m):
            u_inv[r][i] = -u_inv[r][i]

    def swap_cols(i: int, j: int) -> None:
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]

    def add_col(src: int, dst: int, c: int) -> None:
        for r in range(m):
            a[r][dst] += c * a[r][src]

    t = 0
    while t < min(m, s):
        pivot = None
        for i in range(t, m):
            for j in range(t, s):
                v = abs(a[i][j])
                if v and (pivot is None or v < pivot[0]):
                    pivot = (v, i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[1])
        swap_cols(t, pivot[2])
        while True:
            restart = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        # leftover remainder is strictly smaller, promote it
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, s):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            offender = None
            for i in range(t + 1, m):
                row = a[i]
                if any(row[j] % a[t][t] for j in range(t + 1, s)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    diag = [a[i][i] for i in range(min(m, s))]
    return diag, u_inv


def column_echelon(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Integer column echelon form of the column lattice of ``rows``.

    Returns ``(columns, pivot_rows)``: column ``i`` has a positive entry
    at ``pivot_rows[i]`` and zeros at every earlier pivot row, which is
    all that lattice membership testing needs.
    """
    m = len(rows)
    cols = [list(col) for col in transpose(rows)]
    pivots: list[int] = []
    r = 0
    for row in range(m):
        while True:
            nz = [j for j in range(r, len(cols)) if cols[j][row]]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: (abs(cols[j][row]), j))
            for j in nz:
                if j != j0:
                    q = cols[j][row] // cols[j0][row]
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[j0])]
        nz = [j for j in range(r, len(cols)) if cols[j][row]]
        if nz:
            j = nz[0]
            cols[r], cols[j] = cols[j], cols[r]
            if cols[r][row] < 0:
                cols[r] = [-x for x in cols[r]]
            pivots.append(row)
            r += 1
    return cols[:r], pivots


def lattice_member(vector: Sequence[int], echelon: tuple[list[list[int]], list[int]]) -> bool:
    """Test membership of an integer vector in a column lattice."""
    cols, pivots = echelon
    x = list(vector)
    for col, prow in zip(cols, pivots):
        if x[prow] % col[prow]:
            return False
        q = x[prow] // col[prow]
        if q:
            x = [a - q * b for a, b in zip(x, col)]
    return not any(x)


def reduce_mod_lattice(vector: Sequence[int], echelon: tuple[list[list[int]], list[int]]) -> list[int]:
    """Canonical coset representative of a vector modulo a column lattice."""
    cols, pivots = echelon
    x = list(vector)
    for col, prow in zip(cols, pivots):
        q = x[prow] // col[prow]
        if q:
            x = [a - q * b for a, b in zip(x, col)]
    return x


@dataclass(frozen=True)
class TorsionCertificate:
    """Proof that the homogenized vertex lattice has a torsion quotient.

    ``u`` is an integer vector with ``m * u`` in the lattice spanned by the
    homogenized vertices while ``u`` itself is not; ``m`` is the first
    invariant factor exceeding 1.  ``invariant_factors`` lists all nonzero
    invariant factors for diagnostics.
    """

    u: tuple[int, ...]
    m: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError("torsion multiplier must be at least 2")


def _homogenized_columns(points: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix whose columns are the points with a 1 appended."""
    vecs = [list(pt) + [1] for pt in points]
    return transpose(vecs)


def torsion_check(points: Sequence[Sequence[int]]) -> TorsionCertificate | None:
    """Detect torsion in Z^{n+1} modulo the lattice of homogenized points.

    Returns None when the quotient is torsion-free.  Otherwise returns a
    self-verified certificate: the vector is the preimage of the standard
    basis vector at the first invariant factor exceeding 1, reduced to a
    canonical coset representative.
    """
    if not points:
        return None
    mat = _homogenized_columns(points)
    diag, u_inv = smith_normal_form(mat)
    factors = tuple(d for d in diag if d)
    k = next((i for i, d in enumerate(diag) if d > 1), None)
    if k is None:
        return None
    ech = column_echelon(mat)
    u = reduce_mod_lattice([u_inv[r][k] for r in range(len(mat))], ech)
    cert = TorsionCertificate(u=tuple(u), m=diag[k], invariant_factors=factors)
    if not verify_torsion_certificate(cert, points):
        raise AssertionError("torsion certificate failed self-verification")
    return cert


def verify_torsion_certificate(cert: TorsionCertificate, points: Sequence[Sequence[int]]) -> bool:
    """Re-check a torsion certificate by direct lattice membership."""
    if cert.m < 2 or not points:
        return False
    if len(cert.u) != len(points[0]) + 1:
        return False
    ech = column_echelon(_homogenized_columns(points))
    if lattice_member(cert.u, ech):
        return False
    return lattice_member([cert.m * x for x in cert.u], ech)
