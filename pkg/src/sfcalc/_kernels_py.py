"""Pure-Python arithmetic kernels.

Polynomials are tuples of field elements, lowest degree first, with no
trailing zeros. Every function here has a twin in ``_kernels.pyx``; the two
must stay behaviourally identical.
"""


def trim(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    for i in range(len(b)):
        res[i] = res[i] + b[i]
    return trim(res)


def poly_sub(a, b):
    la, lb = len(a), len(b)
    res = list(a)
    if lb > la:
        zero = b[0] - b[0]
        res.extend([zero] * (lb - la))
    for i in range(lb):
        res[i] = res[i] - b[i]
    return trim(res)


def poly_neg(a):
    return tuple(-c for c in a)


def poly_scale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def poly_mul(a, b):
    la, lb = len(a), len(b)
    if not la or not lb:
        return ()
    zero = a[0] - a[0]
    res = [zero] * (la + lb - 1)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        for j in range(lb):
            res[i + j] = res[i + j] + ai * b[j]
    return trim(res)


def poly_divmod(a, b):
    """Euclidean division; ``b`` must be nonzero."""
    lb = len(b)
    if not lb:
        raise ZeroDivisionError("polynomial division by zero")
    la = len(a)
    if la < lb:
        return (), tuple(a)
    rem = list(a)
    inv_lead = 1 / b[lb - 1]
    zero = b[0] - b[0]
    quo = [zero] * (la - lb + 1)
    for k in range(la - lb, -1, -1):
        c = rem[k + lb - 1]
        if not c:
            continue
        c = c * inv_lead
        quo[k] = c
        for j in range(lb):
            rem[k + j] = rem[k + j] - c * b[j]
    return trim(quo), trim(rem[: lb - 1])


def poly_monic(a):
    if not a:
        return ()
    lead = a[-1]
    if lead == 1:
        return tuple(a)
    inv = 1 / lead
    return tuple(c * inv for c in a)


def poly_gcd(a, b):
    """Monic gcd; gcd(0, 0) is 0."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def series_div(num, den, count):
    """First ``count`` power-series coefficients of num/den; den[0] != 0."""
    if count <= 0:
        return ()
    zero = den[0] - den[0]
    inv0 = 1 / den[0]
    ld = len(den)
    ln = len(num)
    out = []
    for j in range(count):
        acc = num[j] if j < ln else zero
        top = j if j < ld - 1 else ld - 1
        for i in range(1, top + 1):
            acc = acc - den[i] * out[j - i]
        out.append(acc * inv0)
    return tuple(out)


def rref(rows, ncols):
    """Reduced row-echelon form of ``rows`` (lists of length ``ncols``).

    Returns ``(rows, pivots)`` with zero rows dropped. Pivot entries are 1.
    The input lists are modified in place.
    """
    rows = [r for r in rows]
    pivots = []
    nrows = len(rows)
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        sel = -1
        for i in range(r, nrows):
            if rows[i][col]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            rows[r], rows[sel] = rows[sel], rows[r]
        prow = rows[r]
        pv = prow[col]
        if pv != 1:
            inv = 1 / pv
            for j in range(col, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[col]
            if not f:
                continue
            for j in range(col, ncols):
                pj = prow[j]
                if pj:
                    row[j] = row[j] - f * pj
        pivots.append(col)
        r += 1
    return rows[:r], pivots
