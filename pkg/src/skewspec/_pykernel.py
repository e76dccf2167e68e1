"""Pure-Python hot loops over exact rationals stored as (numerator, denominator).

A map table is the tuple ``(xn, xd, yn, yd, sn, sd, cn, cd)`` of lists:
node abscissae, node ordinates, and per-piece slope and intercept, all
reduced with positive denominators. Every function here has a twin in
``_ckernel.pyx`` with the same signature and results.
"""

from math import gcd


def _reduce(n, d):
    g = gcd(n, d)
    if g != 1:
        n //= g
        d //= g
    return n, d


def _piece_left(tab, n, d):
    # last piece i with x_i <= x (a point at 1 goes to the last piece)
    xn, xd = tab[0], tab[1]
    lo, hi = 0, len(xn) - 2
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if xn[mid] * d <= n * xd[mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _piece_right(tab, n, d):
    # first piece i with x < x_{i+1} or x == x_{i+1}
    xn, xd = tab[0], tab[1]
    lo, hi = 0, len(xn) - 2
    while lo < hi:
        mid = (lo + hi) >> 1
        if n * xd[mid + 1] <= xn[mid + 1] * d:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _apply(tab, i, n, d):
    sn, sd, cn, cd = tab[4][i], tab[5][i], tab[6][i], tab[7][i]
    return _reduce(sn * n * cd + cn * sd * d, sd * d * cd)


def eval_point(tab, n, d):
    return _apply(tab, _piece_left(tab, n, d), n, d)


def image(tab, lon, lod, hin, hid):
    i = _piece_left(tab, lon, lod)
    j = _piece_right(tab, hin, hid)
    an, ad = _apply(tab, i, lon, lod)
    bn, bd = _apply(tab, j, hin, hid)
    if an * bd <= bn * ad:
        mn, md, Mn, Md = an, ad, bn, bd
    else:
        mn, md, Mn, Md = bn, bd, an, ad
    yn, yd = tab[2], tab[3]
    for k in range(i + 1, j + 1):
        vn, vd = yn[k], yd[k]
        if vn * md < mn * vd:
            mn, md = vn, vd
        elif vn * Md > Mn * vd:
            Mn, Md = vn, vd
    return mn, md, Mn, Md


def orbit_trace(tabs, seq, n, d):
    out = [(n, d)]
    for s in seq:
        n, d = eval_point(tabs[s], n, d)
        out.append((n, d))
    return out


def orbit_point(tabs, seq, n, d):
    for s in seq:
        n, d = eval_point(tabs[s], n, d)
    return n, d


def image_chain(tabs, seq, lon, lod, hin, hid):
    out = [(lon, lod, hin, hid)]
    for s in seq:
        lon, lod, hin, hid = image(tabs[s], lon, lod, hin, hid)
        out.append((lon, lod, hin, hid))
    return out


def min_chain_length(tabs, seq, lon, lod, hin, hid):
    bn, bd = _reduce(hin * lod - lon * hid, hid * lod)
    for s in seq:
        lon, lod, hin, hid = image(tabs[s], lon, lod, hin, hid)
        ln = hin * lod - lon * hid
        ld = hid * lod
        if ln * bd < bn * ld:
            bn, bd = _reduce(ln, ld)
    return bn, bd
