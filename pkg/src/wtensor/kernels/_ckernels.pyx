# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same contracts as ``_pykernels``."""

from itertools import permutations

from libc.stdlib cimport calloc, free, malloc

BACKEND = "cython"

DEF MAXDIM = 16


def digit_census(int n_digits, table):
    """Sum per-digit contribution vectors over all strings in base len(table)."""
    cdef int ndig = len(table)
    if ndig == 0:
        return {}
    cdef int width = len(table[0])
    cdef int i, j, pos, d, maxc = 0
    for row in table:
        for x in row:
            if x < 0:
                raise ValueError("digit_census needs nonnegative contributions")
            if x > maxc:
                maxc = x
    cdef long long base = <long long>n_digits * maxc + 1
    cdef long long size = 1
    for i in range(width):
        size *= base
        if size > 50_000_000:
            raise ValueError("digit_census key space too large")
    cdef long long *contrib = <long long *>malloc(ndig * sizeof(long long))
    cdef long long *counts = <long long *>calloc(size, sizeof(long long))
    cdef int *digits = <int *>calloc(n_digits + 1, sizeof(int))
    cdef long long code, mult
    if not contrib or not counts or not digits:
        free(contrib); free(counts); free(digits)
        raise MemoryError()
    try:
        for i in range(ndig):
            code = 0
            mult = 1
            for j in range(width):
                code += table[i][j] * mult
                mult *= base
            contrib[i] = code
        # all digits start at 0
        code = contrib[0] * n_digits
        while True:
            counts[code] += 1
            pos = 0
            while pos < n_digits:
                d = digits[pos]
                code -= contrib[d]
                if d + 1 < ndig:
                    digits[pos] = d + 1
                    code += contrib[d + 1]
                    break
                digits[pos] = 0
                code += contrib[0]
                pos += 1
            if pos == n_digits:
                break
        out = {}
        for code in range(size):
            if counts[code]:
                key = []
                mult = code
                for j in range(width):
                    key.append(mult % base)
                    mult //= base
                out[tuple(key)] = counts[code]
        return out
    finally:
        free(contrib); free(counts); free(digits)


def cover_structure_count(int n, long long lam_int, fcard, gcard):
    """Count quintuples (U, V, S, phi, gamma) one by one."""
    cdef long long count = 0
    cdef long long col, k, fu, gv, ncol
    cdef int i, pos, c, u, v
    cdef int digits[64]
    if n > 64:
        raise ValueError("too many labels")
    for i in range(n):
        digits[i] = 0
    while True:
        c = 0
        u = 0
        v = 0
        for i in range(n):
            if digits[i] == 0:
                u += 1
            elif digits[i] == 1:
                v += 1
            else:
                c += 1
        ncol = 1
        for i in range(c):
            ncol *= lam_int
        fu = fcard[u + c]
        gv = gcard[v + c]
        for col in range(ncol):
            for k in range(fu):
                for i in range(gv):
                    count += 1
        pos = 0
        while pos < n:
            if digits[pos] < 2:
                digits[pos] += 1
                break
            digits[pos] = 0
            pos += 1
        if pos == n:
            break
    return count


cdef inline int _popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def cov_census(int a, int b, int n):
    """Jointly surjective injection pairs <a> -> <n> <- <b>, by pullback size."""
    masks_a = [sum(1 << x for x in inj) for inj in permutations(range(n), a)]
    masks_b = [sum(1 << x for x in inj) for inj in permutations(range(n), b)]
    cdef int na = len(masks_a), nb = len(masks_b), i, j
    cdef unsigned long long full = (1 << n) - 1
    cdef unsigned long long *ma = <unsigned long long *>malloc((na + 1) * sizeof(unsigned long long))
    cdef unsigned long long *mb = <unsigned long long *>malloc((nb + 1) * sizeof(unsigned long long))
    cdef long long hist[65]
    for i in range(65):
        hist[i] = 0
    try:
        for i in range(na):
            ma[i] = masks_a[i]
        for j in range(nb):
            mb[j] = masks_b[j]
        for i in range(na):
            for j in range(nb):
                if (ma[i] | mb[j]) == full:
                    hist[_popcount(ma[i] & mb[j])] += 1
    finally:
        free(ma); free(mb)
    return {c: hist[c] for c in range(65) if hist[c]}


cdef int _rref(int *m, int nrows, int ncols, int p, int *pivots) noexcept:
    """In-place RREF of a row-major nrows x ncols array mod p; returns rank."""
    cdef int col, r, sel, piv = 0, j, inv, f, tmp, e
    for col in range(ncols):
        if piv == nrows:
            break
        sel = -1
        for r in range(piv, nrows):
            if m[r * ncols + col] % p:
                sel = r
                break
        if sel < 0:
            continue
        if sel != piv:
            for j in range(ncols):
                tmp = m[piv * ncols + j]
                m[piv * ncols + j] = m[sel * ncols + j]
                m[sel * ncols + j] = tmp
        # inverse by Fermat
        inv = 1
        f = m[piv * ncols + col] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * f) % p
            f = (f * f) % p
            e >>= 1
        for j in range(ncols):
            m[piv * ncols + j] = (m[piv * ncols + j] * inv) % p
        for r in range(nrows):
            if r != piv:
                f = m[r * ncols + col] % p
                if f:
                    for j in range(ncols):
                        m[r * ncols + j] = ((m[r * ncols + j] - f * m[piv * ncols + j]) % p + p) % p
        pivots[piv] = col
        piv += 1
    return piv


cdef tuple _rows_tuple(int *m, int nrows, int ncols):
    return tuple(tuple(m[r * ncols + j] for j in range(ncols)) for r in range(nrows))


def rref_mod_p(rows, int p):
    rows = [list(r) for r in rows]
    if not rows:
        return ()
    cdef int nrows = len(rows), ncols = len(rows[0]), i, j, rank
    cdef int *m = <int *>malloc(nrows * ncols * sizeof(int) + sizeof(int))
    cdef int *piv = <int *>malloc((ncols + 1) * sizeof(int))
    try:
        for i in range(nrows):
            for j in range(ncols):
                m[i * ncols + j] = rows[i][j] % p
        rank = _rref(m, nrows, ncols, p, piv)
        return _rows_tuple(m, rank, ncols)
    finally:
        free(m); free(piv)


def rank_mod_p(rows, int p):
    return len(rref_mod_p(rows, p))


cdef int _nullspace(int *red, int rank, int ncols, int *piv, int p, int *out) noexcept:
    """Basis of the kernel of an RREF matrix, as rows of ``out``; returns count."""
    cdef int free_col, r, j, k = 0, is_piv
    for free_col in range(ncols):
        is_piv = 0
        for r in range(rank):
            if piv[r] == free_col:
                is_piv = 1
        if is_piv:
            continue
        for j in range(ncols):
            out[k * ncols + j] = 0
        out[k * ncols + free_col] = 1
        for r in range(rank):
            out[k * ncols + piv[r]] = (p - red[r * ncols + free_col]) % p
        k += 1
    return k


def nullspace_mod_p(rows, int ncols, int p):
    rows = [list(r) for r in rows]
    cdef int nrows = len(rows), i, j, rank, k
    cdef int *m = <int *>malloc((nrows * ncols + 1) * sizeof(int))
    cdef int *out = <int *>malloc((ncols * ncols + 1) * sizeof(int))
    cdef int *piv = <int *>malloc((ncols + 1) * sizeof(int))
    cdef int *piv2 = <int *>malloc((ncols + 1) * sizeof(int))
    try:
        for i in range(nrows):
            for j in range(ncols):
                m[i * ncols + j] = rows[i][j] % p
        rank = _rref(m, nrows, ncols, p, piv)
        k = _nullspace(m, rank, ncols, piv, p, out)
        k = _rref(out, k, ncols, p, piv2)
        return _rows_tuple(out, k, ncols)
    finally:
        free(m); free(out); free(piv); free(piv2)


def image_census(int p, int n, int a):
    """Injective maps F_p^a -> F_p^n grouped by RREF image."""
    if n > MAXDIM or a > MAXDIM:
        raise ValueError("dimension too large")
    cdef int cols[MAXDIM * MAXDIM]
    cdef int piv[MAXDIM]
    cdef long long total = 1, idx, rest
    cdef int i, j, rank
    for i in range(n * a):
        total *= p
    out = {}
    for idx in range(total):
        rest = idx
        # flat index in row-major order of the n x a matrix; store transposed
        for i in range(n * a - 1, -1, -1):
            cols[(i % a) * n + (i // a)] = rest % p
            rest //= p
        rank = _rref(cols, a, n, p, piv)
        if rank == a:
            key = _rows_tuple(cols, a, n)
            out[key] = out.get(key, 0) + 1
    return out


def kernel_census(int p, int n, int b):
    """Surjective maps F_p^n -> F_p^b grouped by RREF kernel."""
    if n > MAXDIM or b > MAXDIM:
        raise ValueError("dimension too large")
    cdef int m[MAXDIM * MAXDIM]
    cdef int ker[MAXDIM * MAXDIM]
    cdef int piv[MAXDIM]
    cdef int piv2[MAXDIM]
    cdef long long total = 1, idx, rest
    cdef int i, rank, k
    for i in range(n * b):
        total *= p
    out = {}
    for idx in range(total):
        rest = idx
        for i in range(n * b - 1, -1, -1):
            m[i] = rest % p
            rest //= p
        rank = _rref(m, b, n, p, piv)
        if rank == b:
            k = _nullspace(m, rank, n, piv, p, ker)
            k = _rref(ker, k, n, p, piv2)
            key = _rows_tuple(ker, k, n)
            out[key] = out.get(key, 0) + 1
    return out
