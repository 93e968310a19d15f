"""Compiled inner loops for the samplers."""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def remy_grow(n, picks, flips):
    """Remy's growth of a full binary tree with n internal nodes.

    ``picks[i-1]`` is uniform on 0..2i-2 and ``flips[i-1]`` is a fair bit.
    Returns (left, right, root) over 2n+1 nodes; leaves have left == -1.
    The internal nodes form a uniform binary tree with n nodes.
    """
    size = 2 * n + 1
    left = np.full(size, -1, np.int64)
    right = np.full(size, -1, np.int64)
    parent = np.full(size, -1, np.int64)
    root = 0
    for i in range(1, n + 1):
        x = picks[i - 1]
        u = 2 * i - 1
        leaf = 2 * i
        par = parent[x]
        parent[u] = par
        if par == -1:
            root = u
        elif left[par] == x:
            left[par] = u
        else:
            right[par] = u
        if flips[i - 1]:
            left[u] = x
            right[u] = leaf
        else:
            left[u] = leaf
            right[u] = x
        parent[x] = u
        parent[leaf] = u
    return left, right, root


@njit(cache=True, nogil=True)
def _postorder(left, right, root):
    size = left.shape[0]
    order = np.empty(size, np.int64)
    stack = np.empty(size, np.int64)
    state = np.zeros(size, np.int8)
    top = 0
    stack[0] = root
    k = 0
    while top >= 0:
        v = stack[top]
        if left[v] == -1 or state[v] == 2:
            order[k] = v
            k += 1
            top -= 1
        elif state[v] == 0:
            state[v] = 1
            top += 1
            stack[top] = left[v]
        else:
            state[v] = 2
            top += 1
            stack[top] = right[v]
    return order[:k]


@njit(cache=True, nogil=True)
def count_full(left, right, root, offsets, pairs, width):
    """Pattern counts at the root of a full binary tree (leaves = empty trees).

    ``offsets``/``pairs`` encode the cross terms of each pattern; -1 in a pair
    stands for the constant 1.
    """
    size = left.shape[0]
    vals = np.zeros((size, width), np.int64)
    order = _postorder(left, right, root)
    for t in range(order.shape[0]):
        v = order[t]
        if left[v] == -1:
            continue
        lv = vals[left[v]]
        rv = vals[right[v]]
        for s in range(width):
            acc = lv[s] + rv[s]
            for j in range(offsets[s], offsets[s + 1]):
                a = pairs[j, 0]
                b = pairs[j, 1]
                x = lv[a] if a >= 0 else 1
                y = rv[b] if b >= 0 else 1
                acc += x * y
            vals[v, s] = acc
    return vals[root].copy()


@njit(cache=True, nogil=True)
def inorder_internal(left, right, root, n):
    """Internal nodes in inorder with depth and left-height, plus tree arrays.

    Returns (ids, h, h_left, lchild, rchild, root_pos) where positions are
    inorder indices 0..n-1 and -1 marks a missing child.
    """
    size = left.shape[0]
    pos = np.full(size, -1, np.int64)
    depth = np.zeros(size, np.int64)
    ldepth = np.zeros(size, np.int64)
    ids = np.empty(n, np.int64)
    stack = np.empty(size, np.int64)
    # depths by preorder
    top = 0
    stack[0] = root
    while top >= 0:
        v = stack[top]
        top -= 1
        if left[v] != -1:
            a = left[v]
            b = right[v]
            depth[a] = depth[v] + 1
            ldepth[a] = ldepth[v] + 1
            depth[b] = depth[v] + 1
            ldepth[b] = ldepth[v]
            top += 1
            stack[top] = b
            top += 1
            stack[top] = a
    # inorder over internal nodes; leaves act as empty subtrees
    k = 0
    top = -1
    v = root
    while True:
        while left[v] != -1:
            top += 1
            stack[top] = v
            v = left[v]
        if top < 0:
            break
        v = stack[top]
        top -= 1
        pos[v] = k
        ids[k] = v
        k += 1
        v = right[v]
    h = np.empty(n, np.int64)
    hl = np.empty(n, np.int64)
    lch = np.full(n, -1, np.int64)
    rch = np.full(n, -1, np.int64)
    for i in range(n):
        v = ids[i]
        h[i] = depth[v]
        hl[i] = ldepth[v]
        a = left[v]
        b = right[v]
        if left[a] != -1:
            lch[i] = pos[a]
        if left[b] != -1:
            rch[i] = pos[b]
    return ids, h, hl, lch, rch, pos[root]


@njit(cache=True, nogil=True)
def left_height_sum(left, right, root):
    """Sum over internal nodes of the number of left steps from the root."""
    size = left.shape[0]
    ld = np.zeros(size, np.int64)
    stack = np.empty(size, np.int64)
    top = 0
    stack[0] = root
    total = 0
    while top >= 0:
        v = stack[top]
        top -= 1
        if left[v] != -1:
            total += ld[v]
            ld[left[v]] = ld[v] + 1
            ld[right[v]] = ld[v]
            top += 1
            stack[top] = left[v]
            top += 1
            stack[top] = right[v]
    return total


@njit(cache=True, nogil=True)
def sum_pair_minima(e):
    """sum over i < j of min(e[i..j]), by a monotonic stack in O(len(e))."""
    n = e.shape[0]
    stack = np.empty(n, np.int64)
    # dp[j] = sum over i <= j of min(e[i..j])
    dp = np.empty(n, np.float64)
    top = -1
    total = 0.0
    for j in range(n):
        while top >= 0 and e[stack[top]] >= e[j]:
            top -= 1
        if top >= 0:
            prev = stack[top]
            dp[j] = dp[prev] + e[j] * (j - prev)
        else:
            dp[j] = e[j] * (j + 1)
        top += 1
        stack[top] = j
        total += dp[j] - e[j]
    return total


@njit(cache=True, nogil=True)
def dyck_from_cycle(steps):
    """Rotate a +/-1 sequence with one more -1 than +1 into a Dyck path.

    The rotation starts just after the first global minimum of the partial
    sums (cycle lemma); the final down step is dropped. Returns heights
    0..len(steps)-1 of the path.
    """
    n = steps.shape[0]
    s = 0
    best = 0
    tau = 0
    for j in range(n):
        s += steps[j]
        if s < best:
            best = s
            tau = j + 1
    heights = np.empty(n, np.int64)
    heights[0] = 0
    h = 0
    for j in range(n - 1):
        h += steps[(tau + j) % n]
        heights[j + 1] = h
    return heights
