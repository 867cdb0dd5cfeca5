"""Row reduction over the field with p elements."""


def rref(rows, ncols, p, order=None):
    """Reduced row echelon form of ``rows`` modulo ``p``.

    ``order`` is the column priority; pivots are taken left to right along it.
    Returns (reduced rows, pivot columns), each row normalized to pivot 1.
    """
    if order is None:
        order = range(ncols)
    mat = [[x % p for x in r] for r in rows]
    mat = [r for r in mat if any(r)]
    pivots = []
    out = []
    for col in order:
        piv = None
        for idx, r in enumerate(mat):
            if r[col]:
                piv = idx
                break
        if piv is None:
            continue
        r = mat.pop(piv)
        inv = pow(r[col], p - 2, p) if p > 2 else 1
        r = [(x * inv) % p for x in r]
        for other in mat:
            f = other[col]
            if f:
                for k in range(ncols):
                    if r[k]:
                        other[k] = (other[k] - f * r[k]) % p
        for other in out:
            f = other[col]
            if f:
                for k in range(ncols):
                    if r[k]:
                        other[k] = (other[k] - f * r[k]) % p
        mat = [x for x in mat if any(x)]
        out.append(r)
        pivots.append(col)
    return out, pivots


def rank(rows, ncols, p):
    return len(rref(rows, ncols, p)[1])


def nullspace(rows, ncols, p):
    """Basis of {v : rows . v = 0}."""
    red, pivots = rref(rows, ncols, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(red, pivots):
            v[pc] = (-r[f]) % p
        basis.append(v)
    return basis


def solve(rows, rhs, ncols, p):
    """One solution of rows . v = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1, p, order=range(ncols + 1))
    if ncols in pivots:
        return None
    v = [0] * ncols
    for r, pc in zip(red, pivots):
        v[pc] = r[ncols] % p
    return v
