"""Independent reference computations used by the tests.

None of these touch the package's normal-form machinery or row reduction:
dimensions come from graded path counting with sympy ranks, and preorders
from pairwise reachability by breadth-first search.
"""

from collections import deque

import sympy


def paths_of_length(arrows, n):
    """arrows: list of (name, src, tgt); paths as tuples of names in traversal order."""
    if n == 0:
        return []
    out = [(a[0],) for a in arrows]
    tgt = {a[0]: a[2] for a in arrows}
    src = {a[0]: a[1] for a in arrows}
    for _ in range(n - 1):
        out = [p + (a[0],) for p in out for a in arrows if src[a[0]] == tgt[p[-1]]]
    return out


def graded_dimension(vertices, arrows, relations, max_len=12):
    """dim kQ/I for homogeneous relations given as [(coef, path)] lists.

    In degree n the ideal is spanned by p * r * q with total length n, so the
    quotient has dimension #paths_n - rank(those vectors).
    """
    src = {a[0]: a[1] for a in arrows}
    tgt = {a[0]: a[2] for a in arrows}
    total = len(vertices)
    for n in range(1, max_len + 1):
        paths = paths_of_length(arrows, n)
        if not paths:
            return total
        col = {p: k for k, p in enumerate(paths)}
        rows = []
        for rel in relations:
            rlen = len(rel[0][1])
            rs, rt = src[rel[0][1][0]], tgt[rel[0][1][-1]]
            for a in range(n - rlen + 1):
                b = n - rlen - a
                befores = [()] if a == 0 else [p for p in paths_of_length(arrows, a) if tgt[p[-1]] == rs]
                afters = [()] if b == 0 else [p for p in paths_of_length(arrows, b) if src[p[0]] == rt]
                for p in befores:
                    for q in afters:
                        v = [0] * len(paths)
                        for c, path in rel:
                            v[col[p + tuple(path) + q]] += c
                        rows.append(v)
        r = sympy.Matrix(rows).rank() if rows else 0
        if r == len(paths):
            return total
        total += len(paths) - r
    raise AssertionError("not finite dimensional within max_len")


def reachability(elements, step):
    """geq[f] = everything reachable from f along step(f) (BFS, reflexive)."""
    out = {}
    for f in elements:
        seen = {f}
        todo = deque([f])
        while todo:
            x = todo.popleft()
            for y in step(x):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        out[f] = frozenset(seen)
    return out


def star_spec(k):
    vertices = [str(i) for i in range(k + 1)]
    arrows = []
    for i in range(1, k + 1):
        arrows += [(f"a{i}", "0", str(i)), (f"b{i}", str(i), "0")]
    rels = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i != j:
                rels.append([(1, (f"b{i}", f"a{j}"))])
    for i in range(2, k + 1):
        rels.append([(1, ("a1", "b1")), (-1, (f"a{i}", f"b{i}"))])
    for i in range(1, k + 1):
        rels.append([(1, (f"b{i}", f"a{i}", f"b{i}"))])
    if k == 1:
        rels.append([(1, ("a1", "b1", "a1"))])
    return vertices, arrows, rels
