"""O(n log n) kernels for univariate distance covariance.

With ``a_ij = |x_i - x_j|`` and ``b_ij = |y_i - y_j|`` the empirical dCov is

    S / n^2  +  (sum a / n^2) (sum b / n^2)  -  2 sum_i a_i. b_i. / n^3

where ``S = sum_ij a_ij b_ij``. Row sums ``a_i.`` come from one sort and a
prefix sum. For ``S``, visit the points in increasing ``x``; then

    sum_{i<j} (x_j - x_i) |y_j - y_i| = 2 T - sum_{i<j} (x_j - x_i)(y_j - y_i)

with ``T`` the sum of ``(x_j - x_i)(y_j - y_i)`` over pairs ``i < j`` that
also have ``y_i < y_j``. ``T`` expands into four dominance sums (count,
sum x, sum y, sum xy over earlier points with smaller y). A bottom-up merge
sort on ``y`` collects them: when a right-run element is emitted, the
left-run elements already emitted are exactly its dominated partners in
that merge. Ties in x or y contribute a zero factor, so whichever side of
the tie a pair lands on is irrelevant.
"""

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _merge_dominance(x, y):
    # x, y in increasing-x order. Returns (T, y sorted, x-order index of
    # each sorted y). Merge passes only stream through memory, which keeps
    # the constant factor flat as n outgrows the cache.
    n = x.size
    src_x = x.copy()
    src_y = y.copy()
    src_i = np.arange(n)
    dst_x = np.empty(n)
    dst_y = np.empty(n)
    dst_i = np.empty(n, dtype=np.int64)
    total = 0.0
    comp = 0.0
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            k = lo
            c = 0.0
            qx = 0.0
            qy = 0.0
            qxy = 0.0
            part = 0.0
            while j < hi:
                if i < mid and src_y[i] <= src_y[j]:
                    xi = src_x[i]
                    yi = src_y[i]
                    c += 1.0
                    qx += xi
                    qy += yi
                    qxy += xi * yi
                    dst_x[k] = xi
                    dst_y[k] = yi
                    dst_i[k] = src_i[i]
                    i += 1
                else:
                    xj = src_x[j]
                    yj = src_y[j]
                    part += xj * yj * c - xj * qy - yj * qx + qxy
                    dst_x[k] = xj
                    dst_y[k] = yj
                    dst_i[k] = src_i[j]
                    j += 1
                k += 1
            while i < mid:
                dst_x[k] = src_x[i]
                dst_y[k] = src_y[i]
                dst_i[k] = src_i[i]
                i += 1
                k += 1
            # Kahan summation across merge blocks
            t = part - comp
            s = total + t
            comp = (s - total) - t
            total = s
            lo = hi
        src_x, dst_x = dst_x, src_x
        src_y, dst_y = dst_y, src_y
        src_i, dst_i = dst_i, src_i
        width *= 2
    return total, src_y, src_i


def _sorted_row_sums(vs):
    n = vs.size
    incl = np.cumsum(vs)
    excl = incl - vs
    k = np.arange(n)
    return (vs * k - excl) + ((incl[-1] - incl) - vs * (n - 1 - k))


def row_sums(v, order=None):
    """``a_i. = sum_j |v_i - v_j|`` for every i, in O(n log n)."""
    if order is None:
        order = np.argsort(v)
    out = np.empty(v.size)
    out[order] = _sorted_row_sums(v[order])
    return out


def _normalize(v):
    v = v - v.mean()
    scale = float(v.max() - v.min())
    if scale == 0.0:
        return np.zeros_like(v), 1.0
    return v / scale, scale


def _kernel(x, y):
    """``(S, a, b)`` in increasing-x order for centered, unit-range inputs."""
    n = x.size
    xo = np.argsort(x)
    xs = x[xo]
    t, ys_sorted, pos = _merge_dominance(xs, y[xo])
    a = _sorted_row_sums(xs)
    b = np.empty(n)
    b[pos] = _sorted_row_sums(ys_sorted)
    u = n * np.dot(x, y) - x.sum() * y.sum()
    return 2.0 * (2.0 * t - u), a, b


def sum_abs_products(x, y):
    """``sum_ij |x_i - x_j| |y_i - y_j|`` for centered, unit-range inputs."""
    return _kernel(x, y)[0]


def moments(xs, ys):
    """Empirical moments behind dCov, in the original units.

    Returns ``(e_ab, e_a, e_b, e_cross)``: the means of ``|x-x'||y-y'|``,
    ``|x-x'|``, ``|y-y'|`` and ``|x-x'||y-y''|`` under the empirical law.
    """
    n = xs.size
    x, sx = _normalize(np.asarray(xs, dtype=np.float64))
    y, sy = _normalize(np.asarray(ys, dtype=np.float64))
    s, a, b = _kernel(x, y)
    n2 = float(n) * n
    e_ab = s / n2
    e_a = a.sum() / n2
    e_b = b.sum() / n2
    e_cross = np.dot(a, b) / (n2 * n)
    return e_ab * sx * sy, e_a * sx, e_b * sy, e_cross * sx * sy


def self_dcov(v):
    """dCov(v, v), using ``sum_ij (v_i - v_j)^2 = 2 n sum (v - mean)^2``."""
    n = v.size
    x, s = _normalize(np.asarray(v, dtype=np.float64))
    a = row_sums(x)
    n2 = float(n) * n
    e_aa = 2.0 * n * np.dot(x, x) / n2
    e_a = a.sum() / n2
    return (e_aa + e_a * e_a - 2.0 * np.dot(a, a) / (n2 * n)) * s * s
