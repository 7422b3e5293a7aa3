"""Smith normal form over the integers.

Two entry points: :func:`smith_normal_form` returns the full factorisation
``U @ M @ V == D`` (dense, meant for small and medium matrices), while
:func:`invariant_factors` only returns the diagonal and first strips unit
pivots sparsely, which is what homology computations need.
"""

from __future__ import annotations

from .matrix import IntegerMatrix


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _row_axpy(a, dst, src, q):
    # row[dst] -= q * row[src]
    rd, rs = a[dst], a[src]
    for k, v in enumerate(rs):
        if v:
            rd[k] -= q * v


def _col_axpy(a, dst, src, q):
    for row in a:
        v = row[src]
        if v:
            row[dst] -= q * v


def _dense_snf(a, u=None, v=None):
    """In-place diagonalisation of the list-of-lists ``a``.

    ``u`` and ``v`` (if given) receive the same row / column operations.
    Returns the list of non-zero diagonal entries.
    """
    r = len(a)
    c = len(a[0]) if r else 0
    diag = []
    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            _swap_rows(a, t, pi)
            if u is not None:
                _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(a, t, pj)
            if v is not None:
                _swap_cols(v, t, pj)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // p
                    _row_axpy(a, i, t, q)
                    if u is not None:
                        _row_axpy(u, i, t, q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // p
                    _col_axpy(a, j, t, q)
                    if v is not None:
                        _col_axpy(v, j, t, q)
                    if a[t][j]:
                        clean = False
            if not clean:
                # a remainder smaller than the pivot appeared; make it the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, r) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, c) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    _swap_rows(a, t, i)
                    if u is not None:
                        _swap_rows(u, t, i)
                if j != t:
                    _swap_cols(a, t, j)
                    if v is not None:
                        _swap_cols(v, t, j)
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _row_axpy(a, t, bad, -1)
            if u is not None:
                _row_axpy(u, t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        diag.append(a[t][t])
        t += 1
    return diag


def smith_normal_form(m: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(D, U, V)`` with ``U @ m @ V == D``.

    ``D`` is diagonal with non-negative entries ``d1 | d2 | ...``; ``U`` and
    ``V`` are unimodular.
    """
    a = m.to_rows()
    u = IntegerMatrix.identity(m.rows).to_rows()
    v = IntegerMatrix.identity(m.cols).to_rows()
    _dense_snf(a, u, v)
    return (IntegerMatrix.from_rows(a, m.cols), IntegerMatrix.from_rows(u, m.rows),
            IntegerMatrix.from_rows(v, m.cols))


def invariant_factors(m: IntegerMatrix) -> list[int]:
    """Non-zero diagonal entries of the Smith form of ``m``, in divisibility order.

    The length of the result is the rank of ``m``.
    """
    rows = {i: dict(r) for i, r in enumerate(m._data) if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress and rows:
        progress = False
        for i in sorted(rows, key=lambda k: len(rows[k])):
            r = rows.get(i)
            if r is None:
                continue
            piv = None
            for j, x in r.items():
                if x == 1 or x == -1:
                    if piv is None or len(cols[j]) < len(cols[piv]):
                        piv = j
            if piv is None:
                continue
            p = r[piv]
            for k in list(cols[piv]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[piv] * p
                for j, x in r.items():
                    y = rk.get(j, 0) - f * x
                    if y:
                        if j not in rk:
                            cols.setdefault(j, set()).add(k)
                        rk[j] = y
                    else:
                        del rk[j]
                        cols[j].discard(k)
                if not rk:
                    del rows[k]
            for j in r:
                cols[j].discard(i)
            del rows[i]
            del cols[piv]
            units += 1
            progress = True
    rest = []
    if rows:
        used = sorted({j for r in rows.values() for j in r})
        pos = {j: n for n, j in enumerate(used)}
        for r in rows.values():
            dense = [0] * len(used)
            for j, x in r.items():
                dense[pos[j]] = x
            rest.append(dense)
    return [1] * units + _dense_snf(rest)


def rank(m: IntegerMatrix) -> int:
    return len(invariant_factors(m))


def is_smith_form(d: IntegerMatrix) -> bool:
    """True iff ``d`` is diagonal, non-negative, with a divisibility chain."""
    diag = []
    for i, j, v in d.items():
        if i != j or v < 0:
            return False
    for k in range(min(d.shape)):
        diag.append(d[k, k])
    seen_zero = False
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            seen_zero = True
        if seen_zero and b != 0:
            return False
        if a and b % a:
            return False
    return True
