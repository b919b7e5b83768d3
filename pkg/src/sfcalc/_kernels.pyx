# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled arithmetic kernels; mirror of ``_kernels_py``."""


cpdef tuple trim(a):
    cdef Py_ssize_t n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


cpdef tuple poly_add(a, b):
    cdef Py_ssize_t i, lb
    if len(a) < len(b):
        a, b = b, a
    cdef list res = list(a)
    lb = len(b)
    for i in range(lb):
        res[i] = res[i] + b[i]
    return trim(res)


cpdef tuple poly_sub(a, b):
    cdef Py_ssize_t i, la = len(a), lb = len(b)
    cdef list res = list(a)
    if lb > la:
        zero = b[0] - b[0]
        res.extend([zero] * (lb - la))
    for i in range(lb):
        res[i] = res[i] - b[i]
    return trim(res)


cpdef tuple poly_neg(a):
    return tuple([-c for c in a])


cpdef tuple poly_scale(a, c):
    if not c:
        return ()
    return tuple([x * c for x in a])


cpdef tuple poly_mul(a, b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    if not la or not lb:
        return ()
    cdef tuple ta = tuple(a), tb = tuple(b)
    zero = ta[0] - ta[0]
    cdef list res = [zero] * (la + lb - 1)
    for i in range(la):
        ai = ta[i]
        if not ai:
            continue
        for j in range(lb):
            res[i + j] = res[i + j] + ai * tb[j]
    return trim(res)


cpdef tuple poly_divmod(a, b):
    cdef Py_ssize_t k, j, la = len(a), lb = len(b)
    if not lb:
        raise ZeroDivisionError("polynomial division by zero")
    if la < lb:
        return (), tuple(a)
    cdef tuple tb = tuple(b)
    cdef list rem = list(a)
    inv_lead = 1 / tb[lb - 1]
    zero = tb[0] - tb[0]
    cdef list quo = [zero] * (la - lb + 1)
    for k in range(la - lb, -1, -1):
        c = rem[k + lb - 1]
        if not c:
            continue
        c = c * inv_lead
        quo[k] = c
        for j in range(lb):
            rem[k + j] = rem[k + j] - c * tb[j]
    return trim(quo), trim(rem[: lb - 1])


cpdef tuple poly_monic(a):
    if not a:
        return ()
    lead = a[len(a) - 1]
    if lead == 1:
        return tuple(a)
    inv = 1 / lead
    return tuple([c * inv for c in a])


cpdef tuple poly_gcd(a, b):
    a = trim(a)
    b = trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


cpdef tuple series_div(num, den, Py_ssize_t count):
    cdef Py_ssize_t i, j, top, ld = len(den), ln = len(num)
    if count <= 0:
        return ()
    cdef tuple tn = tuple(num), td = tuple(den)
    zero = td[0] - td[0]
    inv0 = 1 / td[0]
    cdef list out = []
    for j in range(count):
        acc = tn[j] if j < ln else zero
        top = j if j < ld - 1 else ld - 1
        for i in range(1, top + 1):
            acc = acc - td[i] * out[j - i]
        out.append(acc * inv0)
    return tuple(out)


cpdef tuple rref(rows, Py_ssize_t ncols):
    cdef list rs = list(rows)
    cdef list pivots = []
    cdef Py_ssize_t nrows = len(rs), r = 0, col, i, j, sel
    cdef list prow, row
    for col in range(ncols):
        if r == nrows:
            break
        sel = -1
        for i in range(r, nrows):
            if (<list>rs[i])[col]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            rs[r], rs[sel] = rs[sel], rs[r]
        prow = <list>rs[r]
        pv = prow[col]
        if pv != 1:
            inv = 1 / pv
            for j in range(col, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        for i in range(nrows):
            if i == r:
                continue
            row = <list>rs[i]
            f = row[col]
            if not f:
                continue
            for j in range(col, ncols):
                pj = prow[j]
                if pj:
                    row[j] = row[j] - f * pj
        pivots.append(col)
        r += 1
    return rs[:r], pivots
