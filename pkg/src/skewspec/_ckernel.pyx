# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernel``; same table layout, same results."""

from math import gcd


cdef inline tuple _reduce(object n, object d):
    cdef object g = gcd(n, d)
    if g != 1:
        n //= g
        d //= g
    return (n, d)


cdef Py_ssize_t _piece_left(tuple tab, object n, object d):
    cdef list xn = tab[0]
    cdef list xd = tab[1]
    cdef Py_ssize_t lo = 0, hi = len(xn) - 2, mid
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if xn[mid] * d <= n * xd[mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


cdef Py_ssize_t _piece_right(tuple tab, object n, object d):
    cdef list xn = tab[0]
    cdef list xd = tab[1]
    cdef Py_ssize_t lo = 0, hi = len(xn) - 2, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if n * xd[mid + 1] <= xn[mid + 1] * d:
            hi = mid
        else:
            lo = mid + 1
    return lo


cdef inline tuple _apply(tuple tab, Py_ssize_t i, object n, object d):
    cdef object sn = (<list>tab[4])[i]
    cdef object sd = (<list>tab[5])[i]
    cdef object cn = (<list>tab[6])[i]
    cdef object cd = (<list>tab[7])[i]
    return _reduce(sn * n * cd + cn * sd * d, sd * d * cd)


cpdef tuple eval_point(tuple tab, object n, object d):
    return _apply(tab, _piece_left(tab, n, d), n, d)


cpdef tuple image(tuple tab, object lon, object lod, object hin, object hid):
    cdef Py_ssize_t i = _piece_left(tab, lon, lod)
    cdef Py_ssize_t j = _piece_right(tab, hin, hid)
    cdef Py_ssize_t k
    cdef object an, ad, bn, bd, mn, md, Mn, Md, vn, vd
    cdef list yn = tab[2]
    cdef list yd = tab[3]
    an, ad = _apply(tab, i, lon, lod)
    bn, bd = _apply(tab, j, hin, hid)
    if an * bd <= bn * ad:
        mn, md, Mn, Md = an, ad, bn, bd
    else:
        mn, md, Mn, Md = bn, bd, an, ad
    for k in range(i + 1, j + 1):
        vn = yn[k]
        vd = yd[k]
        if vn * md < mn * vd:
            mn, md = vn, vd
        elif vn * Md > Mn * vd:
            Mn, Md = vn, vd
    return (mn, md, Mn, Md)


def orbit_trace(tabs, seq, n, d):
    cdef list out = [(n, d)]
    cdef tuple t
    for s in seq:
        t = eval_point(<tuple>tabs[s], n, d)
        n = t[0]
        d = t[1]
        out.append(t)
    return out


def orbit_point(tabs, seq, n, d):
    cdef tuple t = (n, d)
    for s in seq:
        t = eval_point(<tuple>tabs[s], t[0], t[1])
    return t


def image_chain(tabs, seq, lon, lod, hin, hid):
    cdef tuple cur = (lon, lod, hin, hid)
    cdef list out = [cur]
    for s in seq:
        cur = image(<tuple>tabs[s], cur[0], cur[1], cur[2], cur[3])
        out.append(cur)
    return out


def min_chain_length(tabs, seq, lon, lod, hin, hid):
    cdef tuple best = _reduce(hin * lod - lon * hid, hid * lod)
    cdef tuple cur = (lon, lod, hin, hid)
    cdef object ln, ld
    for s in seq:
        cur = image(<tuple>tabs[s], cur[0], cur[1], cur[2], cur[3])
        ln = cur[2] * cur[1] - cur[0] * cur[3]
        ld = cur[3] * cur[1]
        if ln * best[1] < best[0] * ld:
            best = _reduce(ln, ld)
    return best
