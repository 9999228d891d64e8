"""All-paths scan used by the streaming tree verifier.

Plain Python here; :mod:`cfum._jit` compiles the same scan for large trees.
Small trees stay interpreted because loading compiled code costs more than
the scan itself.
"""

KIND_CODES = {"nm": 0, "rb": 1, "um": 2, "cf": 3, "odd": 4}


def _scan_root_py(u, indptr, indices, colors, k, code, node, parent, nxt, maxc, cnt):
    """DFS from ``u`` over the tree; return the smallest ``v >= u`` whose
    ``u``-``v`` path violates the predicate, or -1."""
    for c in range(k + 1):
        cnt[c] = 0
    once = 0
    odd = 0
    multi = 0
    distinct = 0
    best = -1

    top = 0
    node[0] = u
    parent[0] = -1
    nxt[0] = indptr[u]
    c = colors[u]
    cnt[c] = 1
    once = 1
    odd = 1
    distinct = 1
    maxc[0] = c
    # a single vertex satisfies every predicate
    while top >= 0:
        x = node[top]
        i = nxt[top]
        if i < indptr[x + 1]:
            nxt[top] = i + 1
            y = indices[i]
            if y == parent[top]:
                continue
            top += 1
            node[top] = y
            parent[top] = x
            nxt[top] = indptr[y]
            c = colors[y]
            cnt[c] += 1
            a = cnt[c]
            if a == 1:
                once += 1
                distinct += 1
            elif a == 2:
                once -= 1
                multi += 1
            if a & 1:
                odd += 1
            else:
                odd -= 1
            m = maxc[top - 1]
            if c > m:
                m = c
            maxc[top] = m
            if y >= u and (best < 0 or y < best):
                bad = False
                if code == 0:
                    bad = distinct < 2
                elif code == 1:
                    bad = multi > 0
                elif code == 2:
                    bad = cnt[m] != 1
                elif code == 3:
                    bad = once == 0
                else:
                    bad = odd == 0
                if bad:
                    best = y
        else:
            c = colors[x]
            a = cnt[c]
            if a == 1:
                once -= 1
                distinct -= 1
            elif a == 2:
                once += 1
                multi -= 1
            if a & 1:
                odd -= 1
            else:
                odd += 1
            cnt[c] = a - 1
            top -= 1
    return best


def first_violation_py(indptr, indices, colors, k, code):
    """Uncompiled twin of :func:`first_violation` working on Python lists."""
    n = len(indptr) - 1
    scratch = [[0] * n for _ in range(4)]
    cnt = [0] * (k + 1)
    for u in range(n):
        v = _scan_root_py(u, indptr, indices, colors, k, code, *scratch, cnt)
        if v >= 0:
            return u, v
    return -1, -1
