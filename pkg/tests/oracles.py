"""Independent models and naive algorithms used to cross-check the package.

Everything here treats a group as an opaque multiplication: either a
hand-built permutation model or any object exposing size / mult / inv.
The algorithms are deliberately the slow, obvious ones.
"""

from __future__ import annotations

from collections import deque


def compose(p, q):
    """Permutation product: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_closure(gens):
    elems = {tuple(range(len(gens[0])))}
    frontier = list(elems)
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                c = compose(e, g)
                if c not in elems:
                    elems.add(c)
                    new.append(c)
        frontier = new
    return sorted(elems)


class TableGroup:
    """Multiplication-table group over 0..n-1 with identity 0."""

    def __init__(self, table):
        self.table = table
        self.size = len(table)
        self._inv = [0] * self.size
        for a in range(self.size):
            for b in range(self.size):
                if table[a][b] == 0:
                    self._inv[a] = b

    @classmethod
    def from_perms(cls, gens):
        elems = perm_closure(gens)
        index = {p: i for i, p in enumerate(elems)}
        table = [[index[compose(a, b)] for b in elems] for a in elems]
        return cls(table)

    def mult(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]


def s3_model():
    return TableGroup.from_perms([(1, 2, 0), (1, 0, 2)])


def d8_model():
    return TableGroup.from_perms([(1, 2, 3, 0), (0, 3, 2, 1)])


def c6_model():
    return TableGroup.from_perms([(1, 2, 3, 4, 5, 0)])


_Q_AXES = "eijk"
_Q_RULES = {
    ("i", "i"): (-1, "e"), ("j", "j"): (-1, "e"), ("k", "k"): (-1, "e"),
    ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
    ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
    ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
}


def q8_model():
    """Quaternion group from the signed-unit multiplication rules, as a
    table over [1, -1, i, -i, j, -j, k, -k]."""
    units = [(s, a) for a in _Q_AXES for s in (1, -1)]
    index = {u: i for i, u in enumerate(units)}

    def q_mult(u, v):
        s1, a1 = u
        s2, a2 = v
        if a1 == "e":
            return (s1 * s2, a2)
        if a2 == "e":
            return (s1 * s2, a1)
        s3, a3 = _Q_RULES[(a1, a2)]
        return (s1 * s2 * s3, a3)

    table = [[index[q_mult(u, v)] for v in units] for u in units]
    return TableGroup(table)


# -- naive algorithms over any group-like object with size/mult/inv --------

def naive_comm(g, a, b):
    return g.mult(g.mult(g.inv(a), g.inv(b)), g.mult(a, b))


def naive_conj(g, a, b):
    return g.mult(g.mult(g.inv(b), a), b)


def naive_order(g, a):
    n, c = 1, a
    while c != 0:
        c = g.mult(c, a)
        n += 1
    return n


def naive_closure(g, gens):
    elems = {0}
    frontier = [0]
    while frontier:
        new = []
        for e in frontier:
            for x in gens:
                c = g.mult(e, x)
                if c not in elems:
                    elems.add(c)
                    new.append(c)
        frontier = new
    return frozenset(elems)


def naive_center(g):
    return frozenset(
        a for a in range(g.size)
        if all(g.mult(a, b) == g.mult(b, a) for b in range(g.size)))


def naive_all_subgroups(g):
    """Every subgroup, as frozensets: cyclic subgroups closed under joins."""
    subs = {naive_closure(g, [a]) for a in range(g.size)}
    while True:
        new = set()
        for h in subs:
            for k in subs:
                j = naive_closure(g, list(h | k))
                if j not in subs:
                    new.add(j)
        if not new:
            return subs
        subs |= new


def naive_is_normal_in(g, h, k):
    """h normal in k, both frozensets with h <= k."""
    return all(naive_conj(g, a, b) in h for a in h for b in k)


def naive_defect(g, h, subgroups=None):
    """Shortest chain h normal-in ... normal-in whole, by lattice search.
    None when no chain exists."""
    if subgroups is None:
        subgroups = naive_all_subgroups(g)
    whole = frozenset(range(g.size))
    dist = {h: 0}
    queue = deque([h])
    while queue:
        cur = queue.popleft()
        if cur == whole:
            return dist[cur]
        for nxt in subgroups:
            if nxt not in dist and cur < nxt and naive_is_normal_in(g, cur, nxt):
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return 0 if h == whole else None


def naive_t2(g, subgroups=None):
    """Subgroup generated by elements whose cyclic subgroup has no chain
    of length at most 2."""
    if subgroups is None:
        subgroups = naive_all_subgroups(g)
    bad = [
        a for a in range(g.size)
        if (lambda d: d is None or d > 2)(
            naive_defect(g, naive_closure(g, [a]), subgroups))
    ]
    return naive_closure(g, bad)


def naive_lower_central_class(g):
    """Nilpotency class from the lower central series, None if it stalls."""
    whole = list(range(g.size))
    gamma = frozenset(whole)
    cls = 0
    while len(gamma) > 1:
        nxt = naive_closure(
            g, [naive_comm(g, a, b) for a in gamma for b in whole])
        if nxt == gamma:
            return None
        gamma = nxt
        cls += 1
    return cls


def eval_word_in(oracle, images, word_obj):
    """Evaluate a package Word in an oracle group, mapping generator names
    through images."""
    e = 0
    for name, exp in word_obj.syllables:
        x = images[name] if exp > 0 else oracle.inv(images[name])
        for _ in range(abs(exp)):
            e = oracle.mult(e, x)
    return e


def find_isomorphism(group, oracle, images):
    """Map every element of the package group through its shortest word and
    check the result is a bijective homomorphism onto the oracle."""
    if group.size != oracle.size:
        return False
    phi = [eval_word_in(oracle, images, group.element_word(e))
           for e in range(group.size)]
    if len(set(phi)) != group.size:
        return False
    return all(
        phi[group.mult(a, b)] == oracle.mult(phi[a], phi[b])
        for a in range(group.size) for b in range(group.size))
