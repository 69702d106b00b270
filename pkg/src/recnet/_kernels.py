"""Compiled kernels: Fenwick-tree weighted sampling and the fast growth loop.

All arrays here are 1-based (slot 0 unused) so vertex ids map directly to
positions. The exponential kinds store shifted keys q_i * exp((i - base) / scale)
in the tree; a common positive factor cancels in inverse-CDF sampling, so the
tree never has to be touched to apply per-step decay. When the newest shifted
exponent exceeds ``rescale_cap`` the base is moved forward and the tree is
rebuilt from fresh keys, dropping entries that underflow or fall below
``eps`` relative to the total.

Running totals are kept with Neumaier compensation so the reported total
tracks the sum of the stored weights to well under 2^-40 relative error even
after long push/evict sequences.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# attractiveness kind codes shared with the python layer
WINDOW = 0
EXPONENTIAL = 1
GENERAL = 2
AGE_POWER = 3


@njit(cache=True)
def neumaier_add(total, comp, x):
    """One compensated-summation step; returns the updated (total, comp)."""
    t = total + x
    if abs(total) >= abs(x):
        comp += (total - t) + x
    else:
        comp += (x - t) + total
    return t, comp


@njit(cache=True)
def fenwick_add(tree, i, delta):
    n = tree.shape[0] - 1
    while i <= n:
        tree[i] += delta
        i += i & (-i)


@njit(cache=True)
def fenwick_prefix(tree, i):
    s = 0.0
    while i > 0:
        s += tree[i]
        i -= i & (-i)
    return s


@njit(cache=True)
def fenwick_build(tree, leaf):
    """Rebuild the whole tree from the leaf array in O(capacity)."""
    n = tree.shape[0] - 1
    for i in range(n + 1):
        tree[i] = 0.0
    for i in range(1, n + 1):
        tree[i] += leaf[i]
        j = i + (i & (-i))
        if j <= n:
            tree[j] += tree[i]


@njit(cache=True)
def fenwick_sample(tree, leaf, size, u, total):
    """Smallest vertex whose cumulative weight strictly exceeds u * total.

    Zero-weight vertices are never returned; if rounding pushes the
    threshold past the last prefix, the nearest positive-weight vertex is
    used instead.
    """
    x = u * total
    n = tree.shape[0] - 1
    bit = 1
    while (bit << 1) <= n:
        bit <<= 1
    pos = 0
    rem = x
    while bit > 0:
        nxt = pos + bit
        if nxt <= n and tree[nxt] <= rem:
            rem -= tree[nxt]
            pos = nxt
        bit >>= 1
    j = pos + 1
    if j > size:
        j = size
    if leaf[j] == 0.0:
        k = j + 1
        while k <= size and leaf[k] == 0.0:
            k += 1
        if k <= size:
            j = k
        else:
            k = j - 1
            while k >= 1 and leaf[k] == 0.0:
                k -= 1
            j = k
    return j


@njit(cache=True)
def window_push(tree, leaf, size, q, lifespan, total, comp):
    """Append vertex size+1 with weight q, evicting the vertex that just died."""
    v = size + 1
    fenwick_add(tree, v, q)
    leaf[v] = q
    total, comp = neumaier_add(total, comp, q)
    dead = v - lifespan
    if dead >= 1 and leaf[dead] != 0.0:
        w = leaf[dead]
        fenwick_add(tree, dead, -w)
        leaf[dead] = 0.0
        total, comp = neumaier_add(total, comp, -w)
    return total, comp


@njit(cache=True)
def exp_push(tree, leaf, qual, size, q, scale, base, rescale_cap, eps, total, comp):
    """Append vertex size+1 with shifted key q * exp((v - base) / scale).

    Moves the base and rebuilds once the newest exponent would exceed
    rescale_cap; fresh keys below eps * total are zeroed during the rebuild.
    """
    v = size + 1
    ex = (v - base) / scale
    if ex > rescale_cap:
        base = v
        total = 0.0
        comp = 0.0
        for i in range(1, v):
            s = qual[i] * np.exp((i - v) / scale)
            leaf[i] = s
            total, comp = neumaier_add(total, comp, s)
        if eps > 0.0:
            cut = eps * (total + comp)
            total = 0.0
            comp = 0.0
            for i in range(1, v):
                if leaf[i] < cut:
                    leaf[i] = 0.0
                else:
                    total, comp = neumaier_add(total, comp, leaf[i])
        fenwick_build(tree, leaf)
        ex = 0.0
    s = q * np.exp(ex)
    leaf[v] = s
    fenwick_add(tree, v, s)
    total, comp = neumaier_add(total, comp, s)
    return base, total, comp


@njit(cache=True)
def grow_fast(u, n, m, kind, scale, gamma, a, eps, rescale_cap, record_trace):
    """Run the whole growth process for the window / exponential kinds.

    ``u`` is the pre-drawn uniform stream in the fixed consumption order:
    one quality draw per vertex at creation, then m target draws per step.
    Returns (qualities[0..n], sources, targets, trace); qualities slot 0 is
    unused padding.
    """
    qual = np.empty(n + 1)
    tree = np.zeros(n + 1)
    leaf = np.zeros(n + 1)
    n_edges = 1 + m * (n - 2)
    src = np.empty(n_edges, np.int32)
    tgt = np.empty(n_edges, np.int32)
    trace = np.empty(n - 1 if record_trace else 0)

    inv_g = -1.0 / gamma
    qual[1] = a * (1.0 - u[0]) ** inv_g
    qual[2] = a * (1.0 - u[1]) ** inv_g
    src[0] = 2
    tgt[0] = 1

    total = 0.0
    comp = 0.0
    base = 1
    lifespan = int(scale)

    if kind == WINDOW:
        total, comp = window_push(tree, leaf, 0, qual[1], lifespan, total, comp)
    else:
        base, total, comp = exp_push(
            tree, leaf, qual, 0, qual[1], scale, base, rescale_cap, eps, total, comp
        )
    if record_trace:
        if kind == WINDOW:
            trace[0] = total + comp
        else:
            trace[0] = (total + comp) * np.exp(-(1 - base) / scale)

    k = 2
    e = 1
    for v in range(3, n + 1):
        # vertex v-1 joins the sampling pool before v draws its targets
        if kind == WINDOW:
            total, comp = window_push(tree, leaf, v - 2, qual[v - 1], lifespan, total, comp)
        else:
            base, total, comp = exp_push(
                tree, leaf, qual, v - 2, qual[v - 1], scale, base,
                rescale_cap, eps, total, comp,
            )
        if record_trace:
            if kind == WINDOW:
                trace[v - 2] = total + comp
            else:
                trace[v - 2] = (total + comp) * np.exp(-((v - 1) - base) / scale)
        qual[v] = a * (1.0 - u[k]) ** inv_g
        k += 1
        tot = total + comp
        if not tot > 0.0:
            raise ValueError("total attractiveness is zero")
        for _ in range(m):
            t_id = fenwick_sample(tree, leaf, v - 1, u[k], tot)
            k += 1
            src[e] = v
            tgt[e] = t_id
            e += 1
    return qual, src, tgt, trace
