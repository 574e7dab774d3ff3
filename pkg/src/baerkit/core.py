"""Concrete finite groups and structural subgroup computations.

A ConcreteGroup stores a group as its right regular action: elements are
the indices 0..size-1 with 0 the identity, and one permutation column
per generator letter gives right multiplication by that generator.
Every element carries a representative word (found by breadth-first
search from the identity), so a*b is computed by following b's word
through the columns starting at a.  Memory stays O(size * generators);
no full multiplication table is ever built.

Subgroups are plain element sets with a remembered generating list.
The functions below (normal closures, central series, quotients, direct
products, Sylow parts, ...) all work on these two types.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .presentation import GroupPresentation, Word, free_reduce

__all__ = [
    "GroupError",
    "ConcreteGroup",
    "Element",
    "Subgroup",
    "normal_closure",
    "is_normal_in",
    "lower_central_series",
    "nilpotency_class",
    "derived_series",
    "derived_subgroup",
    "derived_length",
    "is_metabelian",
    "center",
    "upper_central_series",
    "centralizer",
    "normalizer",
    "exponent",
    "conjugacy_classes",
    "frattini_p_group",
    "sylow_decomposition",
    "direct_product",
    "quotient",
    "factorize",
]


class GroupError(ValueError):
    """Bad arguments to a group operation (mixed groups, bad subgroups...)."""


class ConcreteGroup:
    """Finite group given by permutation columns for right multiplication."""

    def __init__(self, cols, presentation: GroupPresentation | None = None,
                 gen_names: tuple[str, ...] | None = None, meta: dict | None = None):
        cols = [list(c) for c in cols]
        if not cols or len(cols) % 2 != 0:
            raise GroupError("need one column per generator letter (gen, inverse)")
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise GroupError("ragged column lengths")
        self.size = n
        self.cols = cols
        self.presentation = presentation
        if gen_names is None:
            if presentation is not None:
                gen_names = presentation.generators
            else:
                gen_names = tuple(f"g{i}" for i in range(len(cols) // 2))
        self.gen_names = tuple(gen_names)
        if len(self.gen_names) * 2 != len(cols):
            raise GroupError("generator names do not match columns")
        self.meta = dict(meta or {})
        self._check_columns()
        self._bfs()
        self._cache: dict = {}

    # -- construction internals -------------------------------------------

    def _check_columns(self):
        n = self.size
        for l, col in enumerate(self.cols):
            if sorted(col) != list(range(n)):
                raise GroupError(f"column {l} is not a permutation")
            inv = self.cols[l ^ 1]
            if any(inv[col[e]] != e for e in range(n)):
                raise GroupError(f"columns {l} and {l ^ 1} are not mutually inverse")

    def _bfs(self):
        n = self.size
        rep: list[bytes | None] = [None] * n
        rep[0] = b""
        order = [0]
        edges: list[tuple[int, int, int]] = []  # (child, parent, letter)
        cols = self.cols
        ncols = len(cols)
        for e in order:
            base = rep[e]
            for l in range(ncols):
                c = cols[l][e]
                if rep[c] is None:
                    rep[c] = base + bytes([l])
                    order.append(c)
                    edges.append((c, e, l))
        if any(r is None for r in rep):
            raise GroupError("columns do not generate a transitive action")
        self.rep_word: list[bytes] = rep  # type: ignore[assignment]
        self._bfs_edges = edges

    # -- element arithmetic ------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    def gen_element(self, i: int) -> int:
        return self.cols[2 * i][0]

    def generator_elements(self) -> list[int]:
        return [self.gen_element(i) for i in range(self.ngens)]

    def mult(self, a: int, b: int) -> int:
        cols = self.cols
        for l in self.rep_word[b]:
            a = cols[l][a]
        return a

    def inv_array(self) -> list[int]:
        inv = self._cache.get("inv")
        if inv is None:
            inv = [0] * self.size
            for child, par, l in self._bfs_edges:
                inv[child] = self.letter_left_perm(l ^ 1)[inv[par]]
            self._cache["inv"] = inv
        return inv

    def inv(self, a: int) -> int:
        return self.inv_array()[a]

    def conj(self, a: int, g: int) -> int:
        # g^-1 * a * g
        return self.mult(self.mult(self.inv(g), a), g)

    def comm(self, a: int, b: int) -> int:
        # [a, b] = a^-1 b^-1 a b = (b*a)^-1 * (a*b)
        return self.mult(self.inv(self.mult(b, a)), self.mult(a, b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out, base = 0, a
        while k:
            if k & 1:
                out = self.mult(out, base)
            base = self.mult(base, base)
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        orders = self._cache.setdefault("orders", {})
        got = orders.get(a)
        if got is None:
            c, got = a, 1
            while c != 0:
                c = self.mult(c, a)
                got += 1
            orders[a] = got
        return got

    # -- words --------------------------------------------------------------

    def word_to_element(self, w: Word) -> int:
        gen_col = {g: 2 * i for i, g in enumerate(self.gen_names)}
        c = 0
        for g, e in free_reduce(w).syllables:
            if g not in gen_col:
                raise GroupError(f"word uses unknown generator {g!r}")
            l = gen_col[g] + (0 if e > 0 else 1)
            for _ in range(abs(e)):
                c = self.cols[l][c]
        return c

    def element_word(self, e: int) -> Word:
        syll = []
        for l in self.rep_word[e]:
            g = self.gen_names[l // 2]
            syll.append((g, 1 if l % 2 == 0 else -1))
        return free_reduce(Word(tuple(syll)))

    # -- bulk permutation helpers -------------------------------------------

    def letter_left_perm(self, l: int) -> list[int]:
        """Left multiplication by the element of a single letter."""
        perms = self._cache.setdefault("letter_left", {})
        lam = perms.get(l)
        if lam is None:
            lam = self.left_mult_perm(self.cols[l][0])
            perms[l] = lam
        return lam

    def left_mult_perm(self, g: int) -> list[int]:
        """The permutation e -> g*e, computed in one BFS sweep."""
        lam = [0] * self.size
        lam[0] = g
        cols = self.cols
        for child, par, l in self._bfs_edges:
            lam[child] = cols[l][lam[par]]
        return lam

    def _npcols(self):
        import numpy as np

        npcols = self._cache.get("npcols")
        if npcols is None:
            npcols = np.array(self.cols, dtype=np.int64)
            self._cache["npcols"] = npcols
        return npcols

    def _right_mult_np(self, g: int):
        import numpy as np

        npcols = self._npcols()
        cur = np.arange(self.size, dtype=np.int64)
        for l in self.rep_word[g]:
            cur = npcols[l][cur]
        return cur

    def right_mult_perm(self, g: int) -> list[int]:
        """The permutation e -> e*g."""
        return self._right_mult_np(g).tolist()

    def conj_perm(self, g: int) -> list[int]:
        """The permutation e -> g^-1*e*g."""
        rho = self.right_mult_perm(g)
        lam = self.left_mult_perm(self.inv(g))
        return [lam[x] for x in rho]

    def _gen_conj_perms(self) -> list[list[int]]:
        perms = self._cache.get("gen_conj")
        if perms is None:
            perms = [self.conj_perm(self.gen_element(i)) for i in range(self.ngens)]
            self._cache["gen_conj"] = perms
        return perms

    def _letter_conj_perms(self):
        """Conjugation permutation per generator letter, as numpy arrays."""
        import numpy as np

        perms = self._cache.get("letter_conj")
        if perms is None:
            perms = [
                np.array(self.conj_perm(self.cols[l][0]), dtype=np.int64)
                for l in range(len(self.cols))
            ]
            self._cache["letter_conj"] = perms
        return perms

    def _edge_groups(self):
        """BFS tree edges bucketed by (depth, letter) as index arrays.

        Buckets come out in depth order, so a map defined by the
        recurrence value[child] = f(letter, value[parent]) can be filled
        with one vectorized assignment per bucket."""
        import numpy as np

        groups = self._cache.get("edge_groups")
        if groups is None:
            depth = [0] * self.size
            bucket: dict[tuple[int, int], tuple[list, list]] = {}
            for child, par, l in self._bfs_edges:
                d = depth[par] + 1
                depth[child] = d
                ps, cs = bucket.setdefault((d, l), ([], []))
                ps.append(par)
                cs.append(child)
            groups = [
                (l, np.array(ps, dtype=np.int64), np.array(cs, dtype=np.int64))
                for (d, l), (ps, cs) in sorted(bucket.items())
            ]
            self._cache["edge_groups"] = groups
        return groups

    def comm_with_perm(self, y: int):
        """The full map x -> [x, y] as a numpy array.

        Since [x, y] = (y^-1)^x * y and conjugates of the fixed element
        y^-1 propagate along the BFS tree (an element is parent times
        letter), the whole map costs a handful of vectorized passes.
        Iterating the map computes left-normed brackets: applying it n
        times to x yields [x, y, y, ..., y] with n copies of y."""
        import numpy as np

        perms = self._letter_conj_perms()
        v = np.zeros(self.size, dtype=np.int64)
        v[0] = self.inv(y)
        for l, parents, children in self._edge_groups():
            v[children] = perms[l][v[parents]]
        return self._right_mult_np(y)[v]

    # -- conjugacy ------------------------------------------------------------

    def conjugacy_classes(self) -> list[list[int]]:
        """Classes as sorted element lists, ordered by least member."""
        classes = self._cache.get("classes")
        if classes is None:
            perms = self._gen_conj_perms()
            seen = [False] * self.size
            classes = []
            for e in range(self.size):
                if seen[e]:
                    continue
                orbit = [e]
                seen[e] = True
                for x in orbit:
                    for p in perms:
                        y = p[x]
                        if not seen[y]:
                            seen[y] = True
                            orbit.append(y)
                classes.append(sorted(orbit))
            self._cache["classes"] = classes
        return classes

    def class_reps(self) -> list[int]:
        return [cl[0] for cl in self.conjugacy_classes()]

    def class_of(self, e: int) -> list[int]:
        """The conjugacy class containing e, as a sorted list."""
        idx = self._cache.get("class_index")
        if idx is None:
            idx = [0] * self.size
            for i, cl in enumerate(self.conjugacy_classes()):
                for x in cl:
                    idx[x] = i
            self._cache["class_index"] = idx
        return self.conjugacy_classes()[idx[e]]

    def __repr__(self):
        name = self.meta.get("name")
        label = f" {name!r}" if name else ""
        return f"<ConcreteGroup{label} of order {self.size}>"


@dataclass(frozen=True)
class Element:
    """An element reference; operations refuse to mix groups."""

    group: ConcreteGroup
    index: int

    def _same(self, other: "Element"):
        if self.group is not other.group:
            raise GroupError("elements belong to different groups")

    def __mul__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.group, self.group.mult(self.index, other.index))

    def inverse(self) -> "Element":
        return Element(self.group, self.group.inv(self.index))

    def __pow__(self, k: int) -> "Element":
        return Element(self.group, self.group.power(self.index, k))

    def conjugate(self, by: "Element") -> "Element":
        self._same(by)
        return Element(self.group, self.group.conj(self.index, by.index))

    def commutator(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.group, self.group.comm(self.index, other.index))

    def order(self) -> int:
        return self.group.element_order(self.index)

    def word(self) -> Word:
        return self.group.element_word(self.index)


class Subgroup:
    """A subgroup: closed element set plus the generators that produced it."""

    def __init__(self, group: ConcreteGroup, elements, gens):
        self.group = group
        self.elements = tuple(sorted(elements))
        self.elemset = frozenset(self.elements)
        self.gens = tuple(gens)
        if not self.elements or self.elements[0] != 0:
            raise GroupError("subgroup must contain the identity")
        if group.size % len(self.elements) != 0:
            raise GroupError("subgroup size does not divide the group order")

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, e: int) -> bool:
        return e in self.elemset

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.elemset == other.elemset
        )

    def __hash__(self):
        return hash((id(self.group), self.elemset))

    def __le__(self, other: "Subgroup") -> bool:
        return self.elemset <= other.elemset

    def is_whole(self) -> bool:
        return self.size == self.group.size

    def __repr__(self):
        return f"<Subgroup of order {self.size} in group of order {self.group.size}>"

    @classmethod
    def generated(cls, group: ConcreteGroup, gens) -> "Subgroup":
        gens = [g.index if isinstance(g, Element) else g for g in gens]
        elems = _closure(group, gens)
        return cls(group, elems, gens)

    @classmethod
    def trivial(cls, group: ConcreteGroup) -> "Subgroup":
        return cls(group, [0], [])

    @classmethod
    def whole(cls, group: ConcreteGroup) -> "Subgroup":
        sub = group._cache.get("whole")
        if sub is None:
            gens = group.generator_elements()
            sub = cls(group, range(group.size), gens)
            group._cache["whole"] = sub
        return sub

    @classmethod
    def from_elements(cls, group: ConcreteGroup, elements) -> "Subgroup":
        """Wrap an already-closed element set, picking a small generating list."""
        elemset = frozenset(elements)
        builder = _ClosureBuilder(group)
        for e in sorted(elemset):
            builder.add(e)
            if builder.size > len(elemset):
                raise GroupError("element set is not closed under multiplication")
        if builder.size != len(elemset):
            raise GroupError("element set is not closed under multiplication")
        return cls(group, elemset, builder.gens)

    def as_group(self) -> tuple[ConcreteGroup, tuple[int, ...]]:
        """This subgroup as a group of its own.

        Returns (H, to_parent) where to_parent maps H's element indices
        back to indices in the parent group.  H's generators are this
        subgroup's generating list (whole-group generators if empty).
        """
        gens = list(self.gens) or [0]
        local = {e: i for i, e in enumerate(self.elements)}
        cols = []
        for g in gens:
            word = self.group.rep_word[g]
            fwd = []
            for e in self.elements:
                c = e
                for l in word:
                    c = self.group.cols[l][c]
                fwd.append(local[c])
            back = [0] * self.size
            for i, v in enumerate(fwd):
                back[v] = i
            cols.append(fwd)
            cols.append(back)
        names = tuple(f"s{i}" for i in range(len(gens)))
        pres = GroupPresentation(names, ())
        sub = ConcreteGroup(cols, presentation=pres, gen_names=names)
        return sub, self.elements


class _ClosureBuilder:
    """Grows the closure of a generating list one generator at a time.

    Generators already inside the running closure are dropped, which keeps
    generating lists short (at most log2 of the subgroup order additions).
    Adding a generator extends the existing orbit rather than recomputing
    it: the old elements only need the new generator applied to them, and
    anything new then gets the full generator list.  On large groups the
    frontier expansion runs as vectorized column lookups.
    """

    _NUMPY_MIN = 2048

    def __init__(self, group: ConcreteGroup):
        self.group = group
        self.gens: list[int] = []
        self._words: list[bytes] = []
        if group.size >= self._NUMPY_MIN:
            import numpy as np

            self._visited = np.zeros(group.size, dtype=bool)
            self._visited[0] = True
            self._count = 1
            self._elems = None
        else:
            self._elems = {0}
            self._visited = None

    def __contains__(self, e: int) -> bool:
        if self._elems is not None:
            return e in self._elems
        return bool(self._visited[e])

    @property
    def size(self) -> int:
        return len(self._elems) if self._elems is not None else self._count

    def add(self, g: int) -> bool:
        """Adjoin g as a generator; False if it was already inside."""
        if g in self:
            return False
        word = self.group.rep_word[g]
        self.gens.append(g)
        self._words.append(word)
        if self._elems is not None:
            self._expand_small(word)
        else:
            self._expand_np(word)
        return True

    def _expand_small(self, new_word: bytes) -> None:
        cols = self.group.cols
        elems = self._elems
        frontier = []
        for e in list(elems):
            c = e
            for l in new_word:
                c = cols[l][c]
            if c not in elems:
                elems.add(c)
                frontier.append(c)
        i = 0
        while i < len(frontier):
            e = frontier[i]
            i += 1
            for w in self._words:
                c = e
                for l in w:
                    c = cols[l][c]
                if c not in elems:
                    elems.add(c)
                    frontier.append(c)

    def _expand_np(self, new_word: bytes) -> None:
        import numpy as np

        npcols = self.group._npcols()
        visited = self._visited
        arr = np.flatnonzero(visited)
        for l in new_word:
            arr = npcols[l][arr]
        arr = np.unique(arr)
        frontier = arr[~visited[arr]]
        visited[frontier] = True
        self._count += int(frontier.size)
        while frontier.size:
            images = []
            for w in self._words:
                arr = frontier
                for l in w:
                    arr = npcols[l][arr]
                images.append(arr)
            cand = np.unique(np.concatenate(images))
            new = cand[~visited[cand]]
            visited[new] = True
            self._count += int(new.size)
            frontier = new

    def elements(self) -> list[int]:
        if self._elems is not None:
            return sorted(self._elems)
        import numpy as np

        return np.flatnonzero(self._visited).tolist()


def _closure(group: ConcreteGroup, gens) -> list[int]:
    """Elements of <gens>, in increasing index order."""
    builder = _ClosureBuilder(group)
    for g in gens:
        builder.add(g)
    return builder.elements()


def _grown_subgroup(group: ConcreteGroup, base_gens, candidates) -> Subgroup:
    """Subgroup generated by base_gens plus whichever candidates add anything."""
    builder = _ClosureBuilder(group)
    for g in base_gens:
        builder.add(g)
    for c in candidates:
        builder.add(c)
    return Subgroup(group, builder.elements(), builder.gens)


def _as_subgroup(g) -> Subgroup:
    if isinstance(g, Subgroup):
        return g
    if isinstance(g, ConcreteGroup):
        return Subgroup.whole(g)
    raise GroupError(f"expected a group or subgroup, got {type(g).__name__}")


def normal_closure(h: Subgroup, ambient) -> Subgroup:
    """Smallest subgroup of the ambient containing h and closed under its
    conjugation.  Conjugating generators by generators suffices: both
    sets generate, and conjugation by a fixed element permutes a finite
    subgroup."""
    amb = _as_subgroup(ambient)
    group = h.group
    if amb.group is not group:
        raise GroupError("subgroups belong to different groups")
    if not h.elemset <= amb.elemset:
        raise GroupError("subgroup is not contained in the ambient subgroup")
    builder = _ClosureBuilder(group)
    for g in h.gens:
        builder.add(g)
    kgens = list(dict.fromkeys(amb.gens))
    work = list(builder.gens)
    i = 0
    while i < len(work):
        x = work[i]
        i += 1
        for k in kgens:
            c = group.conj(x, k)
            if builder.add(c):
                work.append(c)
    return Subgroup(group, builder.elements(), builder.gens)


def is_normal_in(h: Subgroup, ambient) -> bool:
    amb = _as_subgroup(ambient)
    if not h.elemset <= amb.elemset:
        return False
    return all(
        h.group.conj(x, k) in h.elemset for x in h.gens for k in amb.gens
    )


def lower_central_series(g) -> list[Subgroup]:
    """G = gamma_1 >= gamma_2 >= ... down to stabilization.

    gamma_{i+1} is the normal closure of the commutators of gamma_i's
    generators with the group's generators."""
    sub = _as_subgroup(g)
    group = sub.group
    series = [sub]
    while True:
        cur = series[-1]
        comms = [group.comm(a, b) for a in cur.gens for b in sub.gens]
        nxt = normal_closure(_grown_subgroup(group, [], comms), sub)
        if nxt.elemset == cur.elemset:
            break
        series.append(nxt)
        if nxt.size == 1:
            break
    return series


def nilpotency_class(g) -> int | None:
    """Nilpotency class, or None when the series stabilizes above 1."""
    sub = _as_subgroup(g)
    key = ("nilpotency_class", sub.elemset)
    cached = sub.group._cache.get(key)
    if cached is None:
        series = lower_central_series(sub)
        cached = len(series) - 1 if series[-1].size == 1 else (None,)
        sub.group._cache[key] = cached
    return None if cached == (None,) else cached


def derived_series(g) -> list[Subgroup]:
    sub = _as_subgroup(g)
    series = [sub]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.elemset == series[-1].elemset:
            break
        series.append(nxt)
        if nxt.size == 1:
            break
    return series


def derived_subgroup(g) -> Subgroup:
    sub = _as_subgroup(g)
    key = ("derived", sub.elemset)
    got = sub.group._cache.get(key)
    if got is None:
        group = sub.group
        comms = [group.comm(a, b) for a in sub.gens for b in sub.gens]
        got = normal_closure(_grown_subgroup(group, [], comms), sub)
        sub.group._cache[key] = got
    return got


def derived_length(g) -> int | None:
    series = derived_series(g)
    return len(series) - 1 if series[-1].size == 1 else None


def is_metabelian(g) -> bool:
    dl = derived_length(g)
    return dl is not None and dl <= 2


def center(group: ConcreteGroup) -> Subgroup:
    got = group._cache.get("center")
    if got is None:
        perms = group._gen_conj_perms()
        elems = [e for e in range(group.size) if all(p[e] == e for p in perms)]
        got = Subgroup.from_elements(group, elems)
        group._cache["center"] = got
    return got


def upper_central_series(group: ConcreteGroup) -> list[Subgroup]:
    """Z_1 = Z(G) <= Z_2 <= ... up to stabilization.

    Uses the pullback description elementwise: g lies in Z_{i+1} exactly
    when [g, s] falls in Z_i for every generator s."""
    series = [center(group)]
    while True:
        cur = series[-1]
        if cur.is_whole():
            break
        gens = group.generator_elements()
        elems = [
            e
            for e in range(group.size)
            if all(group.comm(e, s) in cur.elemset for s in gens)
        ]
        nxt = Subgroup.from_elements(group, elems)
        if nxt.elemset == cur.elemset:
            break
        series.append(nxt)
    return series


def centralizer(group: ConcreteGroup, elements) -> Subgroup:
    elements = [e.index if isinstance(e, Element) else e for e in elements]
    keep = range(group.size)
    for x in elements:
        sigma = group.conj_perm(x)
        keep = [e for e in keep if sigma[e] == e]
    return Subgroup.from_elements(group, list(keep))


def normalizer(group: ConcreteGroup, h: Subgroup) -> Subgroup:
    """Elements g with h^g = h; checking generators of h suffices since
    conjugation by a fixed g is injective on the finite set h."""
    if h.group is not group:
        raise GroupError("subgroup belongs to a different group")
    elems = [
        g
        for g in range(group.size)
        if all(group.conj(x, g) in h.elemset for x in h.gens)
    ]
    return Subgroup.from_elements(group, elems)


def exponent(g) -> int:
    sub = _as_subgroup(g)
    return lcm(*(sub.group.element_order(e) for e in sub.elements))


def conjugacy_classes(group: ConcreteGroup) -> list[list[int]]:
    return group.conjugacy_classes()


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def frattini_p_group(group: ConcreteGroup, p: int) -> Subgroup:
    """Frattini subgroup of a finite p-group: the normal closure of the
    generator commutators together with generator p-th powers."""
    cached = group._cache.get(("frattini", p))
    if cached is not None:
        return cached
    facs = factorize(group.size)
    if group.size > 1 and (len(facs) != 1 or p not in facs):
        raise GroupError(f"group order {group.size} is not a power of {p}")
    gens = group.generator_elements()
    cand = [group.comm(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    cand += [group.power(a, p) for a in gens]
    sub = normal_closure(_grown_subgroup(group, [], cand), group)
    group._cache[("frattini", p)] = sub
    return sub


def sylow_decomposition(group: ConcreteGroup) -> list[tuple[int, Subgroup]]:
    """Sylow parts of a nilpotent group, one per prime, as subgroups.

    For nilpotent groups the elements of p-power order already form a
    subgroup, so this is a partition by element order."""
    if nilpotency_class(group) is None:
        raise GroupError("group is not nilpotent; Sylow parts do not decompose it")
    parts = []
    for p in sorted(factorize(group.size)):
        elems = [
            e
            for e in range(group.size)
            if _is_p_power(group.element_order(e), p)
        ]
        parts.append((p, Subgroup.from_elements(group, elems)))
    sizes = 1
    for _, s in parts:
        sizes *= s.size
    if sizes != group.size:
        raise GroupError("sylow parts do not multiply to the group order")
    return parts


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def direct_product(g: ConcreteGroup, h: ConcreteGroup, max_size: int = 200_000) -> ConcreteGroup:
    """Direct product with componentwise action.

    The result's meta carries "embed_left"/"embed_right" index maps for
    the canonical embeddings, and generators are the factor generators
    (right factor names suffixed on collision)."""
    n, m = g.size, h.size
    if n * m > max_size:
        raise GroupError(f"product order {n * m} exceeds the limit {max_size}")
    cols = []
    for col in g.cols:
        cols.append([col[a] * m + b for a in range(n) for b in range(m)])
    for col in h.cols:
        cols.append([a * m + col[b] for a in range(n) for b in range(m)])
    left_names = list(g.gen_names)
    right_names = []
    for name in h.gen_names:
        new = name
        while new in left_names or new in right_names:
            new += "_2"
        right_names.append(new)
    names = tuple(left_names + right_names)

    pres = None
    if g.presentation is not None and h.presentation is not None:
        rename = dict(zip(h.gen_names, right_names))
        def rn(w: Word) -> Word:
            return Word(tuple((rename[gname], e) for gname, e in w.syllables))
        relators = list(g.presentation.relators)
        relators += [rn(r) for r in h.presentation.relators]
        from .presentation import commutator_word, word
        for a in left_names:
            for b in right_names:
                relators.append(commutator_word(word(a), word(b)))
        pres = GroupPresentation(names, tuple(relators))

    meta = {
        "embed_left": tuple(a * m for a in range(n)),
        "embed_right": tuple(range(m)),
        "factor_sizes": (n, m),
    }
    return ConcreteGroup(cols, presentation=pres, gen_names=names, meta=meta)


def quotient(group: ConcreteGroup, n: Subgroup) -> ConcreteGroup:
    """The group on cosets of a normal subgroup, with the induced action.

    Coset ids are assigned in order of least member, so the identity
    coset is 0 and the numbering is deterministic."""
    if n.group is not group:
        raise GroupError("subgroup belongs to a different group")
    if not is_normal_in(n, group):
        raise GroupError("subgroup is not normal; quotient undefined")
    coset_of = [-1] * group.size
    reps = []
    for e in range(group.size):
        if coset_of[e] != -1:
            continue
        cid = len(reps)
        reps.append(e)
        for x in n.elements:
            coset_of[group.mult(x, e)] = cid
    k = len(reps)
    cols = []
    for i in range(group.ngens):
        gi = group.gen_element(i)
        fwd = [coset_of[group.mult(reps[c], gi)] for c in range(k)]
        back = [0] * k
        for c, v in enumerate(fwd):
            back[v] = c
        cols.append(fwd)
        cols.append(back)

    pres = None
    if group.presentation is not None:
        extra = tuple(group.element_word(x) for x in n.gens)
        pres = GroupPresentation(
            group.presentation.generators, group.presentation.relators + extra
        )
    meta = {"coset_of": tuple(coset_of), "coset_reps": tuple(reps)}
    return ConcreteGroup(cols, presentation=pres, gen_names=group.gen_names, meta=meta)
