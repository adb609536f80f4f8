"""Linear algebra over Z/mZ for symplectic stabilizer arithmetic.

All routines work on small dense matrices given as lists of lists (or numpy
arrays) of ints, interpreted modulo ``m``.  Spans are *row* spans unless noted
otherwise.  The workhorse is the Howell form, which is a canonical basis for a
submodule of Z_m^n and supports membership tests, solving and kernel
computation for arbitrary (composite) moduli; over a prime modulus it reduces
to the ordinary reduced row-echelon form.

Minimal generating sets and the minimal-generator count of a module are
computed through the integer Smith normal form of the lifted matrix augmented
with m times the identity.
"""

from __future__ import annotations

from math import gcd


def _as_rows(mat):
    return [[int(x) for x in row] for row in mat]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def modinv(a: int, m: int) -> int:
    g, s, _ = xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    return s % m


def is_unit(a: int, m: int) -> bool:
    return gcd(a % m, m) == 1


def units(m: int) -> list[int]:
    return [u for u in range(1, m) if gcd(u, m) == 1]


def solve_scalar(a: int, b: int, m: int):
    """Smallest t >= 0 with t*a = b (mod m), or None."""
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g:
        return None
    if a == 0:
        return 0
    return (b // g) * modinv(a // g, m // g) % (m // g)


def _stabilizing_unit(a: int, m: int) -> int:
    """A unit u with u*a = gcd(a, m) (mod m)."""
    a %= m
    g = gcd(a, m)
    for u in units(m):
        if u * a % m == g:
            return u
    raise AssertionError("no stabilizing unit found")  # unreachable for m >= 2


def _pivot_col(row) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def _echelon(rows, m, trans=None):
    """Bring rows to echelon form with invertible row operations.

    ``trans``, when given, is a parallel list of coefficient rows updated by
    the same operations.  Zero rows are dropped (with their transform rows).
    """
    rows = [list(r) for r in rows]
    trans = [list(t) for t in trans] if trans is not None else None
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    piv = 0
    for col in range(ncols):
        if piv >= nrows:
            break
        lead = None
        for i in range(piv, nrows):
            if rows[i][col] % m == 0:
                continue
            if lead is None:
                lead = i
                continue
            a, b = rows[lead][col] % m, rows[i][col] % m
            g, s, t = xgcd(a, b)
            p, q = -(b // g), a // g
            r1 = [(s * x + t * y) % m for x, y in zip(rows[lead], rows[i])]
            r2 = [(p * x + q * y) % m for x, y in zip(rows[lead], rows[i])]
            rows[lead], rows[i] = r1, r2
            if trans is not None:
                t1 = [(s * x + t * y) % m for x, y in zip(trans[lead], trans[i])]
                t2 = [(p * x + q * y) % m for x, y in zip(trans[lead], trans[i])]
                trans[lead], trans[i] = t1, t2
        if lead is not None:
            rows[piv], rows[lead] = rows[lead], rows[piv]
            if trans is not None:
                trans[piv], trans[lead] = trans[lead], trans[piv]
            piv += 1
    keep = [i for i, r in enumerate(rows) if any(x % m for x in r)]
    rows = [[x % m for x in rows[i]] for i in keep]
    if trans is not None:
        trans = [[x % m for x in trans[i]] for i in keep]
    return rows, trans


def howell_with_transform(mat, m: int):
    """Canonical Howell basis H of the row span, plus transform T with T*A = H.

    Pivots of H divide m, entries above a pivot are reduced modulo the pivot,
    and H is uniquely determined by the span.  T rows express each H row as a
    Z_m-combination of the input rows.
    """
    A = _as_rows(mat)
    k = len(A)
    trans = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    rows, trans = _echelon(A, m, trans)
    while True:
        rows, trans = _echelon(rows, m, trans)
        # normalize pivots to divisors of m
        for i, r in enumerate(rows):
            c = _pivot_col(r)
            u = _stabilizing_unit(r[c], m)
            if u != 1:
                rows[i] = [u * x % m for x in r]
                trans[i] = [u * x % m for x in trans[i]]
        # Howell property: the annihilator multiple of every row must already
        # lie in the span of the rows below it
        extra, extra_t = [], []
        for i, r in enumerate(rows):
            c = _pivot_col(r)
            mult = m // gcd(r[c], m)
            s = [mult * x % m for x in r]
            if any(s):
                res, coeffs = _reduce_against(s, rows, m)
                if any(res):
                    extra.append(res)
                    extra_t.append(
                        [
                            (mult * trans[i][j]
                             - sum(coeffs[a] * trans[a][j] for a in range(len(rows))))
                            % m
                            for j in range(k)
                        ]
                    )
        if not extra:
            break
        rows += extra
        trans += extra_t
    # reduce entries above each pivot modulo the pivot, left to right so that
    # already-reduced columns are never polluted again
    for i in range(len(rows)):
        c = _pivot_col(rows[i])
        p = rows[i][c]
        for a in range(i):
            t = rows[a][c] // p
            if t:
                rows[a] = [(x - t * y) % m for x, y in zip(rows[a], rows[i])]
                trans[a] = [(x - t * y) % m for x, y in zip(trans[a], trans[i])]
    return rows, trans


def howell(mat, m: int):
    return howell_with_transform(mat, m)[0]


def _reduce_against(v, rows, m):
    """Reduce v against echelon/Howell rows; returns (residue, coeffs)."""
    v = [int(x) % m for x in v]
    coeffs = [0] * len(rows)
    for i, r in enumerate(rows):
        c = _pivot_col(r)
        if v[c] == 0:
            continue
        t = solve_scalar(r[c], v[c], m)
        if t:
            v = [(x - t * y) % m for x, y in zip(v, r)]
            coeffs[i] = t
    return v, coeffs


def reduce_vector(v, hrows, m: int):
    """Residue of v modulo the span of Howell rows, with witness coefficients."""
    return _reduce_against(v, hrows, m)


def in_span(v, hrows, m: int) -> bool:
    res, _ = _reduce_against(v, hrows, m)
    return not any(res)


def solve(mat, b, m: int):
    """x with x*A = b (mod m), or None.  Deterministic canonical witness."""
    H, T = howell_with_transform(mat, m)
    res, coeffs = _reduce_against(b, H, m)
    if any(res):
        return None
    k = len(_as_rows(mat))
    x = [0] * k
    for i, c in enumerate(coeffs):
        if c:
            for j in range(k):
                x[j] = (x[j] + c * T[i][j]) % m
    return x


def left_kernel(mat, m: int):
    """Generators of {x : x*A = 0 (mod m)} as rows."""
    A = _as_rows(mat)
    k = len(A)
    if k == 0:
        return []
    n = len(A[0])
    aug = [A[i] + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    H = howell(aug, m)
    return [h[n:] for h in H if not any(h[:n])]


def span_intersection(mat_a, mat_b, m: int):
    """Generators of rowspan(A) n rowspan(B)."""
    A = _as_rows(mat_a)
    B = _as_rows(mat_b)
    if not A or not B:
        return []
    stacked = A + B
    ka = len(A)
    gens = []
    for x in left_kernel(stacked, m):
        v = [0] * len(A[0])
        for i in range(ka):
            if x[i]:
                for j in range(len(v)):
                    v[j] = (v[j] + x[i] * A[i][j]) % m
        if any(v):
            gens.append(v)
    return howell(gens, m) if gens else []


def module_order(hrows, m: int) -> int:
    """Number of elements in the span of a Howell basis."""
    size = 1
    for r in hrows:
        p = r[_pivot_col(r)]
        size *= m // gcd(p, m)
    return size


def smith_normal_form(mat):
    """Integer Smith normal form with transforms: U*A*V = S.

    Returns (U, S, V, Vinv) with U, V unimodular and S diagonal with
    nonnegative entries satisfying the divisibility chain.
    """
    S = _as_rows(mat)
    nr = len(S)
    nc = len(S[0]) if nr else 0
    U = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    V = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    Vinv = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_add(i, j, c):  # row_i += c*row_j
        S[i] = [x + c * y for x, y in zip(S[i], S[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def row_neg(i):
        S[i] = [-x for x in S[i]]
        U[i] = [-x for x in U[i]]

    def col_add(j, i, c):  # col_j += c*col_i ; Vinv row_i -= c*row_j
        for r in range(nr):
            S[r][j] += c * S[r][i]
        for r in range(nc):
            V[r][j] += c * V[r][i]
        Vinv[i] = [x - c * y for x, y in zip(Vinv[i], Vinv[j])]

    def col_swap(i, j):
        for r in range(nr):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(nc):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_neg(j):
        for r in range(nr):
            S[r][j] = -S[r][j]
        for r in range(nc):
            V[r][j] = -V[r][j]
        Vinv[j] = [-x for x in Vinv[j]]

    t = 0
    while True:
        # locate smallest nonzero entry in the trailing submatrix
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        row_swap(t, i)
        col_swap(t, j)
        if S[t][t] < 0:
            row_neg(t)
        done = False
        while not done:
            done = True
            for i in range(t + 1, nr):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    row_add(i, t, -q)
                    if S[i][t]:
                        row_swap(t, i)
                        if S[t][t] < 0:
                            row_neg(t)
                        done = False
            for j in range(t + 1, nc):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    col_add(j, t, -q)
                    if S[t][j]:
                        col_swap(t, j)
                        if S[t][t] < 0:
                            col_neg(t)
                        done = False
        # enforce divisibility of the remaining block
        fixed = True
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if S[i][j] % S[t][t]:
                    row_add(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
        # else: loop again with the dirty row folded into the pivot row
    return U, S, V, Vinv


def minimal_generators(mat, m: int):
    """Minimal generating set of the row span over Z_m.

    Returns (gens, coeffs): ``gens[i]`` is a row vector and ``coeffs[i]`` its
    expression over the input rows.  The number of rows returned is the
    minimal number of generators of the module.
    """
    A = _as_rows(mat)
    if not A:
        return [], []
    n = len(A[0])
    lifted = A + [[m if i == j else 0 for j in range(n)] for i in range(n)]
    _, S, _, Vinv = smith_normal_form(lifted)
    gens = []
    for i in range(n):
        f = S[i][i] if i < len(S) else 0
        if f == 0 or m % f:
            raise AssertionError("invariant factor does not divide the modulus")
        if f % m:
            g = [f * x % m for x in Vinv[i]]
            if any(g):
                gens.append(g)
    coeffs = []
    for g in gens:
        x = solve(A, g, m)
        if x is None:
            raise AssertionError("minimal generator escaped the input span")
        coeffs.append(x)
    return gens, coeffs


def min_generator_count(mat, m: int) -> int:
    return len(minimal_generators(mat, m)[0])


def theta_column_module(mat, m: int) -> int:
    """Minimal number of generators of the column module of ``mat`` over Z_m."""
    A = _as_rows(mat)
    if not A:
        return 0
    t = [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]
    return min_generator_count(t, m)


def antisymmetric_gram_reduce(cmat, m: int):
    """Congruence reduction of an antisymmetric Gram matrix over Z_m.

    Finds invertible M (over Z_m) with M*C*M^T block-diagonal: leading 2x2
    blocks [[0, s], [-s, 0]] with s != 0 and s_1 | s_2 | ... (as ideals of
    Z_m), followed by zeros.  Returns (M, sigmas).  The number of blocks
    equals half the minimal generator count of the column module of C, so the
    pairing produced is of minimal size.
    """
    k = len(cmat)
    A = [[int(x) % m for x in row] for row in cmat]
    for i in range(k):
        if A[i][i] % m:
            raise ValueError("matrix has a nonzero diagonal entry")
        for j in range(k):
            if (A[i][j] + A[j][i]) % m:
                raise ValueError("matrix is not antisymmetric mod m")
    M = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def add(i, j, c):  # row_i += c*row_j, col_i += c*col_j
        A[i] = [(x + c * y) % m for x, y in zip(A[i], A[j])]
        for r in range(k):
            A[r][i] = (A[r][i] + c * A[r][j]) % m
        M[i] = [(x + c * y) % m for x, y in zip(M[i], M[j])]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in range(k):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        M[i], M[j] = M[j], M[i]

    def mix(i, j, s, t, p, q):  # unimodular 2x2 on rows/cols (i, j)
        ri = [(s * x + t * y) % m for x, y in zip(A[i], A[j])]
        rj = [(p * x + q * y) % m for x, y in zip(A[i], A[j])]
        A[i], A[j] = ri, rj
        for r in range(k):
            ci = (s * A[r][i] + t * A[r][j]) % m
            cj = (p * A[r][i] + q * A[r][j]) % m
            A[r][i], A[r][j] = ci, cj
        ti = [(s * x + t * y) % m for x, y in zip(M[i], M[j])]
        tj = [(p * x + q * y) % m for x, y in zip(M[i], M[j])]
        M[i], M[j] = ti, tj

    def scale_unit(i, u):
        A[i] = [u * x % m for x in A[i]]
        for r in range(k):
            A[r][i] = u * A[r][i] % m
        M[i] = [u * x % m for x in M[i]]

    sigmas = []
    pos = 0
    guard = 0
    while pos + 1 < k:
        # pick the entry generating the largest ideal in the trailing block
        best = None
        for i in range(pos, k):
            for j in range(pos, k):
                a = A[i][j]
                if a and (best is None or gcd(a, m) < gcd(A[best[0]][best[1]], m)):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != pos:
            swap(pos, i)
            if j == pos:
                j = i
        if j != pos + 1:
            swap(pos + 1, j)
        p, q = pos, pos + 1
        while True:
            guard += 1
            if guard > 64 * k * k * m:
                raise AssertionError("gram reduction failed to converge")
            sigma = A[p][q]
            g = gcd(sigma, m)
            bad = None
            for c in range(pos, k):
                if c != q and A[p][c] % g:
                    bad = ("p", c)
                    break
                if c != p and A[q][c] % g:
                    bad = ("q", c)
                    break
            if bad is None:
                # clear rows/cols p and q against the rest
                for r in range(pos, k):
                    if r in (p, q):
                        continue
                    t = solve_scalar(A[p][q], (-A[r][q]) % m, m)
                    if t:
                        add(r, p, t)
                    t = solve_scalar(A[q][p], (-A[r][p]) % m, m)
                    if t:
                        add(r, q, t)
                # divisibility of the trailing submatrix
                deep = None
                for r in range(pos + 2, k):
                    for c in range(pos + 2, k):
                        if A[r][c] % g:
                            deep = r
                            break
                    if deep is not None:
                        break
                if deep is None:
                    break
                add(p, deep, 1)
                continue
            which, c = bad
            if which == "p":
                # gcd-mix rows (q, c) to pull gcd(sigma, A[p][c]) into A[p][q]
                gg, s, t = xgcd(A[p][q], A[p][c])
                mix(q, c, s, t, -(A[p][c] // gg), A[p][q] // gg)
            else:
                gg, s, t = xgcd(A[q][p], A[q][c])
                mix(p, c, s, t, -(A[q][c] // gg), A[q][p] // gg)
        sigma = A[p][q]
        u = _stabilizing_unit(sigma, m)
        if u != 1:
            scale_unit(p, u)
            sigma = A[p][q]
        sigmas.append(sigma)
        pos += 2
    return M, sigmas
