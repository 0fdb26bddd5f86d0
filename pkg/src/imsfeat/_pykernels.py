"""Pure numpy versions of the compiled kernels, used when the extension is absent."""

import numpy as np


def ims_weight_counts(w, c):
    w = np.asarray(w, dtype=np.int64)
    c = int(c)
    counts = np.full(c + 1, -np.inf)
    sub = np.full(c + 1, -np.inf)
    suffix = int(w.sum())
    reach = 0
    for i in range(len(w)):
        suffix -= int(w[i])
        if i == 0:
            sub[0] = 0.0
        else:
            wp = int(w[i - 1])
            reach = min(reach + wp, c)
            if reach >= wp:
                # right-hand side is evaluated before assignment, matching the
                # downward in-place sweep
                sub[wp:reach + 1] = np.logaddexp2(sub[0:reach + 1 - wp], sub[wp:reach + 1])
        lo = max(c + 1 - int(w[i]), suffix, 1)
        if lo <= c:
            counts[lo:] = np.logaddexp2(counts[lo:], sub[lo - suffix:c + 1 - suffix])
    return counts


def kmeans_step(prev, w, g):
    prev = np.asarray(prev, dtype=np.float64)
    w = np.asarray(w, dtype=np.int64)
    n = len(w)
    cur = np.full(n + 1, np.inf)
    arg = np.full(n + 1, -1, dtype=np.int64)
    for i in range(g, n + 1):
        # candidate split points j = i-1, i-2, ..., g-1 (descending)
        x = (w[g - 1:i] - w[i - 1]).astype(np.float64)[::-1]
        a1 = np.cumsum(x)
        a2 = np.cumsum(x * x)
        cost = a2 - a1 * a1 / np.arange(1, len(x) + 1, dtype=np.float64)
        np.maximum(cost, 0.0, out=cost)
        cand = prev[g - 1:i][::-1] + cost
        # ties go to the smallest j, i.e. the last position in descending order
        pos = len(cand) - 1 - int(np.argmin(cand[::-1]))
        cur[i] = cand[pos]
        arg[i] = i - 1 - pos
    return cur, arg


def zero_one_max(values, weights, c):
    c = int(c)
    dp = np.zeros(c + 1, dtype=np.int64)
    for v, wt in zip(np.asarray(values, dtype=np.int64), np.asarray(weights, dtype=np.int64)):
        wt = int(wt)
        if wt > c:
            continue
        dp[wt:] = np.maximum(dp[wt:], dp[:c + 1 - wt] + v)
    return int(dp[c])
