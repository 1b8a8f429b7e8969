"""Dense exact linear algebra over Q or Q(i).

Matrices are lists of lists of field scalars.  Everything is fraction-exact;
pivoting is positional (first nonzero entry), which keeps results
deterministic.
"""
from __future__ import annotations


def rref(rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for k in range(r, len(m)):
            if m[k][c]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [entry * inv for entry in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                factor = m[k][c]
                m[k] = [a - factor * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    _, pivots = rref(rows)
    return len(pivots)


def nullspace(rows, ncols, one):
    """Canonical nullspace basis: one vector per free column, with a 1 in
    that column, ordered by free column index."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    zero = one - one
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][free]
        basis.append(vec)
    return basis


def solve_affine(rows, rhs, ncols, one):
    """Solve A x = b exactly.

    Returns (particular, nullspace_basis) with the particular solution taken
    from the reduced system with all free variables set to zero, or
    (None, nullspace_basis) when inconsistent.
    """
    zero = one - one
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    consistent = all(pc < ncols for pc in pivots)
    homogeneous = [r[:ncols] for r in reduced if any(r[:ncols])]
    basis = nullspace(homogeneous, ncols, one)
    if not consistent:
        return None, basis
    particular = [zero] * ncols
    for r, pc in enumerate(pivots):
        particular[pc] = reduced[r][ncols]
    return particular, basis


def echelon_span(rows):
    """Row space in RREF with zero rows dropped: a canonical basis of the
    span, useful for comparing subspaces exactly."""
    reduced, pivots = rref(rows)
    return [row for row in reduced[: len(pivots)]]


def spans_contain(container_rows, candidate_rows, ncols):
    """True iff every candidate row lies in the row space of container."""
    base = echelon_span(container_rows)
    base_rank = len(base)
    for row in candidate_rows:
        extended = base + [list(row)]
        if rank(extended) != base_rank:
            return False
    return True


def same_span(rows_a, rows_b, ncols):
    return spans_contain(rows_a, rows_b, ncols) and spans_contain(rows_b, rows_a, ncols)
