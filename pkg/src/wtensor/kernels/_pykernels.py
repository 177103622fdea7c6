"""Pure-Python enumeration kernels.

Every function here walks its index space literally; the compiled twin in
``_ckernels.pyx`` must return identical results.
"""

from __future__ import annotations

from itertools import permutations, product

BACKEND = "python"


def digit_census(n_digits: int, table: list) -> dict:
    """Sum per-digit contribution vectors over all strings in base len(table).

    Returns {summed contribution vector: number of strings}.
    """
    width = len(table[0]) if table else 0
    out: dict = {}
    for digits in product(range(len(table)), repeat=n_digits):
        acc = [0] * width
        for d in digits:
            row = table[d]
            for i in range(width):
                acc[i] += row[i]
        key = tuple(acc)
        out[key] = out.get(key, 0) + 1
    return out


def cover_structure_count(n: int, lam_int: int, fcard: list, gcard: list) -> int:
    """Count quintuples (U, V, S, phi, gamma) on an n-element set one by one.

    Each label goes to A = U\\V, B = V\\U or C = U&V; S colors C by lam_int
    colors; phi and gamma index the synthetic structures on U and V.
    """
    count = 0
    for digits in product(range(3), repeat=n):
        c = digits.count(2)
        u = digits.count(0) + c
        v = digits.count(1) + c
        fu, gv = fcard[u], gcard[v]
        for _coloring in range(lam_int**c):
            for _phi in range(fu):
                for _gamma in range(gv):
                    count += 1
    return count


def cov_census(a: int, b: int, n: int) -> dict:
    """Jointly surjective injection pairs <a> -> <n> <- <b>, by pullback size."""
    full = (1 << n) - 1
    masks_a = [sum(1 << x for x in inj) for inj in permutations(range(n), a)]
    masks_b = [sum(1 << x for x in inj) for inj in permutations(range(n), b)]
    out: dict = {}
    for ma in masks_a:
        for mb in masks_b:
            if ma | mb == full:
                c = bin(ma & mb).count("1")
                out[c] = out.get(c, 0) + 1
    return out


def rref_mod_p(rows, p: int) -> tuple:
    """Reduced row echelon form over F_p; zero rows dropped."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    piv_row = 0
    for col in range(ncols):
        sel = next((r for r in range(piv_row, len(m)) if m[r][col]), None)
        if sel is None:
            continue
        m[piv_row], m[sel] = m[sel], m[piv_row]
        inv = pow(m[piv_row][col], p - 2, p)
        m[piv_row] = [(x * inv) % p for x in m[piv_row]]
        for r in range(len(m)):
            if r != piv_row and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[piv_row])]
        piv_row += 1
        if piv_row == len(m):
            break
    return tuple(tuple(r) for r in m[:piv_row])


def rank_mod_p(rows, p: int) -> int:
    return len(rref_mod_p(rows, p))


def nullspace_mod_p(rows, ncols: int, p: int) -> tuple:
    """RREF basis of {x : rows @ x = 0} over F_p."""
    red = rref_mod_p(rows, p)
    pivots = []
    for r in red:
        pivots.append(next(i for i, x in enumerate(r) if x))
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, pc in zip(red, pivots):
            v[pc] = (-r[free]) % p
        basis.append(v)
    return rref_mod_p(basis, p)


def _matrices(p: int, nrows: int, ncols: int):
    for flat in product(range(p), repeat=nrows * ncols):
        yield [list(flat[i * ncols : (i + 1) * ncols]) for i in range(nrows)]


def image_census(p: int, n: int, a: int) -> dict:
    """Injective maps F_p^a -> F_p^n as n x a matrices, grouped by RREF image."""
    out: dict = {}
    for m in _matrices(p, n, a):
        cols = [[m[i][j] for i in range(n)] for j in range(a)]
        img = rref_mod_p(cols, p)
        if len(img) == a:
            out[img] = out.get(img, 0) + 1
    return out


def kernel_census(p: int, n: int, b: int) -> dict:
    """Surjective maps F_p^n -> F_p^b as b x n matrices, grouped by RREF kernel."""
    out: dict = {}
    for m in _matrices(p, b, n):
        if rank_mod_p(m, p) == b:
            ker = nullspace_mod_p(m, n, p)
            out[ker] = out.get(ker, 0) + 1
    return out
