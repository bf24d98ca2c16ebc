"""Slow, independent reference computations used to derive expected values in the tests.

Nothing here imports the package under test; inputs are plain adjacency lists of lists.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque


def adjacency_lists(g) -> list[list[bool]]:
    return [[bool(x) for x in row] for row in g.adjacency.tolist()]


def _dense_ids(keys: dict) -> dict:
    table = {s: i for i, s in enumerate(sorted(set(keys.values())))}
    return {x: table[s] for x, s in keys.items()}


def naive_closure(adj: list[list[bool]]) -> dict[tuple[int, int], int]:
    """Two-dimensional WL on ordered pairs with tuple signatures, until the class count is stable."""
    n = len(adj)
    cells = list(itertools.product(range(n), repeat=2))
    color = _dense_ids({(a, b): (a == b, adj[a][b]) for a, b in cells})
    while True:
        sig = {(a, b): (color[a, b], tuple(sorted((color[a, g], color[g, b]) for g in range(n))))
               for a, b in cells}
        new = _dense_ids(sig)
        if len(set(new.values())) == len(set(color.values())):
            return new
        color = new


def naive_k_wl(adj: list[list[bool]], k: int) -> dict[tuple, int]:
    """k-WL on k-tuples from the closure pair colors, plain dictionaries."""
    n = len(adj)
    pair = naive_closure(adj)
    tuples = list(itertools.product(range(n), repeat=k))
    color = _dense_ids({x: tuple(pair[x[i], x[j]] for i in range(k) for j in range(k)) for x in tuples})
    while True:
        sig = {}
        for x in tuples:
            vecs = []
            for g in range(n):
                vecs.append(tuple(color[x[:i] + (g,) + x[i + 1:]] for i in range(k)))
            sig[x] = (color[x], tuple(sorted(vecs)))
        new = _dense_ids(sig)
        if len(set(new.values())) == len(set(color.values())):
            return new
        color = new


def same_partition(a: dict, b: dict) -> bool:
    fwd, back = {}, {}
    for key in a:
        if fwd.setdefault(a[key], b[key]) != b[key] or back.setdefault(b[key], a[key]) != a[key]:
            return False
    return True


def refines(coarse: dict, fine: dict) -> bool:
    """Every class of ``fine`` lies inside one class of ``coarse``."""
    owner = {}
    return all(owner.setdefault(fine[x], coarse[x]) == coarse[x] for x in fine)


def intersection_numbers(color: list[list[int]]) -> dict[tuple[int, int, int], int]:
    """All c[r, s, t] by counting at every cell; raises if a count is not constant on its class."""
    n = len(color)
    seen: dict[int, Counter] = {}
    for a in range(n):
        for b in range(n):
            cnt = Counter((color[a][g], color[g][b]) for g in range(n))
            t = color[a][b]
            if seen.setdefault(t, cnt) != cnt:
                raise AssertionError(f"counts differ inside color {t}")
    return {(r, s, t): c for t, cnt in seen.items() for (r, s), c in cnt.items()}


def bfs(adj: list[list[bool]]) -> list[list[int]]:
    n = len(adj)
    out = []
    for s in range(n):
        d = [-1] * n
        d[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in range(n):
                if adj[u][v] and d[v] < 0:
                    d[v] = d[u] + 1
                    q.append(v)
        out.append(d)
    return out


def ordered_edges(adj) -> list[tuple[int, int]]:
    n = len(adj)
    return [(a, b) for a in range(n) for b in range(n) if adj[a][b]]


def theta_pairs(adj) -> set[tuple[int, int]]:
    d = bfs(adj)
    e = ordered_edges(adj)
    return {(i, j) for i, (x, y) in enumerate(e) for j, (x2, y2) in enumerate(e)
            if d[x][y2] + d[y][x2] != d[x][x2] + d[y][y2]}


def tau_pairs(adj) -> set[tuple[int, int]]:
    n = len(adj)
    e = ordered_edges(adj)
    out = set()
    for i, (x, y) in enumerate(e):
        for j, (x2, y2) in enumerate(e):
            common = {v for v in range(n) if adj[y][v] and adj[y2][v]}
            if x == x2 and common == {x}:
                out.add((i, j))
    return out


def edge_classes(adj) -> list[frozenset[frozenset[int]]]:
    """Classes of unordered edges under the transitive closure of theta and tau."""
    e = ordered_edges(adj)
    parent = {frozenset(p): frozenset(p) for p in e}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, j in theta_pairs(adj) | tau_pairs(adj):
        a, b = find(frozenset(e[i])), find(frozenset(e[j]))
        if a != b:
            parent[a] = b
    groups: dict = {}
    for p in parent:
        groups.setdefault(find(p), set()).add(p)
    return [frozenset(v) for v in groups.values()]


def decode_graph6_by_hand(text: str) -> tuple[int, set[tuple[int, int]]]:
    """Small-n graph6 decoder written from the format description (n <= 62)."""
    data = [ord(ch) - 63 for ch in text]
    n = data[0]
    bits = []
    for v in data[1:]:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    edges = set()
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.add((i, j))
            pos += 1
    return n, edges


def group_closure(gens: list[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    elems = {tuple(range(n))}
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for g in gens:
                b = tuple(g[a[i]] for i in range(n))
                if b not in elems:
                    elems.add(b)
                    changed = True
    return elems
