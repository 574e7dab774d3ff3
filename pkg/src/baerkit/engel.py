"""Engel element tests and commutator expansion identities.

All brackets are left normed: [x, y, z] means [[x, y], z] and
[x, n*y] abbreviates [x, y, ..., y] with n copies of y.  The workhorse
is ConcreteGroup.comm_with_perm, which tabulates x -> [x, y] for a
fixed y; applying that table n times computes [x, n*y] for every x at
once, so Engel conditions reduce to a few vectorized passes per y.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

import numpy as np

from .core import (
    ConcreteGroup,
    GroupError,
    Subgroup,
    derived_subgroup,
    is_metabelian,
    nilpotency_class,
)

__all__ = [
    "DEFAULT_EXHAUSTIVE_THRESHOLD",
    "EngelReport",
    "IdentityCheck",
    "engel_bracket",
    "is_left_n_engel",
    "is_right_n_engel",
    "right_engel_elements",
    "right_engel_set",
    "is_n_engel_group",
    "check_metabelian_identities",
    "expansion_formula_holds",
    "check_expansion_formula",
]

DEFAULT_EXHAUSTIVE_THRESHOLD = 2048

# Identity checks enumerate every input tuple when the full enumeration
# stays below this many evaluations; above it they sample.
_EXHAUSTIVE_EVALS = 20_000


@dataclass(frozen=True)
class EngelReport:
    """Outcome of an Engel test for one element or the whole group."""

    kind: str
    n: int
    holds: bool
    mode: str
    subject: str = "group"
    witness: tuple[str, str] | None = None

    def __str__(self) -> str:
        verdict = "holds" if self.holds else f"fails at {self.witness}"
        return f"{self.kind} {self.n}-Engel for {self.subject} {verdict} ({self.mode})"


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of one identity, with a witness when it fails.

    holds is None when the identity's hypothesis does not apply to the
    group, in which case mode is "skipped" and the note says why.
    """

    name: str
    holds: bool | None
    mode: str
    trials: int
    witness: str | None = None
    note: str | None = None


def engel_bracket(group: ConcreteGroup, x: int, y: int, n: int) -> int:
    """[x, y, y, ..., y] with n copies of y."""
    if n < 1:
        raise GroupError("bracket needs at least one copy of y")
    c = x
    for _ in range(n):
        c = group.comm(c, y)
    return c


def _iterated(perm: np.ndarray, n: int) -> np.ndarray:
    """perm applied n times, pointwise."""
    cur = perm
    for _ in range(n - 1):
        cur = perm[cur]
    return cur


def is_left_n_engel(group: ConcreteGroup, x: int, n: int) -> EngelReport:
    """Whether [g, x, ..., x] = 1 (n copies of x) for every g.

    One bracket table for x answers the question for all g at once, so
    this is exhaustive at any group size."""
    if n < 1:
        raise GroupError("n must be at least 1")
    subject = str(group.element_word(x))
    bad = np.flatnonzero(_iterated(group.comm_with_perm(x), n))
    if bad.size:
        g = int(bad[0])
        witness = (str(group.element_word(g)), subject)
        return EngelReport("left", n, False, "exhaustive", subject, witness)
    return EngelReport("left", n, True, "exhaustive", subject)


def is_right_n_engel(group: ConcreteGroup, x: int, n: int) -> EngelReport:
    """Whether [x, g, ..., g] = 1 (n copies of g) for every g.

    Conjugating g moves the bracket by [x, n*(g^h)] = [x^(h^-1), n*g]^h,
    so it is equivalent to test class representatives g against every
    conjugate of x; that route wins when x has a small class.  Either
    way the answer is exact; on failure a direct rescan pins a witness
    pair involving x itself."""
    if n < 1:
        raise GroupError("n must be at least 1")
    subject = str(group.element_word(x))
    cls = group.class_of(x)
    reps = group.class_reps()
    if len(reps) * len(cls) <= group.size:
        arr = np.array(cls, dtype=np.int64)
        ok = all(
            not _iterated(group.comm_with_perm(r), n)[arr].any() for r in reps
        )
        mode = "class-reduced"
    else:
        ok = all(engel_bracket(group, x, g, n) == 0 for g in range(group.size))
        mode = "direct"
    if ok:
        return EngelReport("right", n, True, mode, subject)
    g = next(h for h in range(group.size) if engel_bracket(group, x, h, n) != 0)
    witness = (subject, str(group.element_word(g)))
    return EngelReport("right", n, False, mode, subject, witness)


def right_engel_elements(group: ConcreteGroup, n: int) -> list[int]:
    """All x with [x, g, ..., g] = 1 (n copies) for every g.

    For each class representative r the mask of x killed by r comes out
    of one bracket table; an element qualifies exactly when its whole
    conjugacy class survives every representative's mask."""
    if n < 1:
        raise GroupError("n must be at least 1")
    ok = np.ones(group.size, dtype=bool)
    for r in group.class_reps():
        ok &= _iterated(group.comm_with_perm(r), n) == 0
    out = np.zeros(group.size, dtype=bool)
    for cl in group.conjugacy_classes():
        arr = np.array(cl, dtype=np.int64)
        if ok[arr].all():
            out[arr] = True
    return [int(e) for e in np.flatnonzero(out)]


def right_engel_set(group: ConcreteGroup, n: int) -> Subgroup:
    """The right n-Engel elements as a subgroup.

    Raises GroupError when the element set is not closed under
    multiplication, i.e. when it fails to be a subgroup at all."""
    elems = right_engel_elements(group, n)
    try:
        return Subgroup.from_elements(group, elems)
    except GroupError:
        raise GroupError(
            f"the {len(elems)} right {n}-Engel elements do not form a subgroup"
        )


def is_n_engel_group(
    group: ConcreteGroup,
    n: int,
    exhaustive_threshold: int = DEFAULT_EXHAUSTIVE_THRESHOLD,
) -> EngelReport:
    """Whether [x, y, ..., y] = 1 (n copies of y) for all x and y.

    Past the threshold, y runs over class representatives only, which
    decides the same question: [x, n*(y^h)] = [x^(h^-1), n*y]^h and
    x^(h^-1) ranges over the whole group as x does."""
    if n < 1:
        raise GroupError("n must be at least 1")
    if group.size <= exhaustive_threshold:
        ys, mode = range(group.size), "all-pairs"
    else:
        ys, mode = group.class_reps(), "class-reduced"
    for y in ys:
        bad = np.flatnonzero(_iterated(group.comm_with_perm(y), n))
        if bad.size:
            x = int(bad[0])
            witness = (str(group.element_word(x)), str(group.element_word(y)))
            return EngelReport("group", n, False, mode, witness=witness)
    return EngelReport("group", n, True, mode)


# -- identity checks ---------------------------------------------------------


def _pair_words(group: ConcreteGroup, *elems: int) -> str:
    return ", ".join(str(group.element_word(e)) for e in elems)


def check_metabelian_identities(
    group: ConcreteGroup,
    trials: int = 200,
    seed: int = 0,
    engel_ns: tuple[int, ...] = (1, 2, 3),
) -> list[IdentityCheck]:
    """Identities valid in metabelian groups, checked on the group.

    Three families: commuting entries past the first slot
    ([c, x, y] = [c, y, x] for c in the derived subgroup), the product
    expansion [x*y, n*z] = [x, n*z] [x, n*z, y] [y, n*z], and, when the
    nilpotency class is at most 3, power extraction from any slot
    ([x^m, y, z] = [x, y^m, z] = [x, y, z^m] = [x, y, z]^m).  Each
    family enumerates all inputs when that is cheap and otherwise
    samples with the seeded generator.
    """
    if not is_metabelian(group):
        raise GroupError("group is not metabelian; these identities need not hold")
    rng = random.Random(seed)
    size = group.size
    checks: list[IdentityCheck] = []
    derived = derived_subgroup(group).elements

    total = len(derived) * size * size
    if total <= _EXHAUSTIVE_EVALS:
        triples = [(c, x, y) for c in derived for x in range(size) for y in range(size)]
        mode = "exhaustive"
    else:
        triples = [
            (rng.choice(derived), rng.randrange(size), rng.randrange(size))
            for _ in range(trials)
        ]
        mode = "sampled"
    witness = None
    for c, x, y in triples:
        lhs = group.comm(group.comm(c, x), y)
        rhs = group.comm(group.comm(c, y), x)
        if lhs != rhs:
            witness = _pair_words(group, c, x, y)
            break
    checks.append(
        IdentityCheck("swap-entries-after-first", witness is None, mode, len(triples), witness)
    )

    total = size ** 3 * len(engel_ns)
    if total <= _EXHAUSTIVE_EVALS:
        quads = [
            (x, y, z, n)
            for x in range(size)
            for y in range(size)
            for z in range(size)
            for n in engel_ns
        ]
        mode = "exhaustive"
    else:
        quads = [
            (rng.randrange(size), rng.randrange(size), rng.randrange(size), rng.choice(engel_ns))
            for _ in range(trials)
        ]
        mode = "sampled"
    witness = None
    for x, y, z, n in quads:
        lhs = engel_bracket(group, group.mult(x, y), z, n)
        xz = engel_bracket(group, x, z, n)
        rhs = group.mult(group.mult(xz, group.comm(xz, y)), engel_bracket(group, y, z, n))
        if lhs != rhs:
            witness = _pair_words(group, x, y, z) + f", n={n}"
            break
    checks.append(
        IdentityCheck("product-in-first-slot", witness is None, mode, len(quads), witness)
    )

    cls = nilpotency_class(group)
    if cls is None or cls > 3:
        checks.append(
            IdentityCheck(
                "power-in-any-slot",
                None,
                "skipped",
                0,
                note=f"needs nilpotency class at most 3, group has {cls}",
            )
        )
        return checks
    exps = (-2, -1, 2, 3, 5)
    total = size ** 3 * len(exps)
    if total <= _EXHAUSTIVE_EVALS:
        cases = [
            (x, y, z, m)
            for x in range(size)
            for y in range(size)
            for z in range(size)
            for m in exps
        ]
        mode = "exhaustive"
    else:
        cases = [
            (rng.randrange(size), rng.randrange(size), rng.randrange(size), rng.choice(exps))
            for _ in range(trials)
        ]
        mode = "sampled"
    witness = None
    for x, y, z, m in cases:
        want = group.power(group.comm(group.comm(x, y), z), m)
        sides = (
            group.comm(group.comm(group.power(x, m), y), z),
            group.comm(group.comm(x, group.power(y, m)), z),
            group.comm(group.comm(x, y), group.power(z, m)),
        )
        if any(s != want for s in sides):
            witness = _pair_words(group, x, y, z) + f", m={m}"
            break
    checks.append(
        IdentityCheck("power-in-any-slot", witness is None, mode, len(cases), witness)
    )
    return checks


def _expansion_sides(group: ConcreteGroup, x: int, y: int, n: int) -> tuple[int, int]:
    """((x*y^-1)^n, its predicted expansion), both as element indices.

    The prediction is x^n * prod B(i,j)^C(n, i+j+1) * y^-n, the product
    over i >= 1, j >= 0 with 0 < i+j < n, where B(i,j) is the
    left-normed bracket [x, i*y, j*x].  Every factor is a commutator, so
    the product lands in the derived subgroup; that subgroup is abelian
    in the groups this applies to, which is why no factor order needs to
    be fixed.
    """
    lhs = group.power(group.mult(x, group.inv(y)), n)
    rhs = group.power(x, n)
    brackets: dict[tuple[int, int], int] = {}
    for i in range(1, n):
        b = group.comm(x, y) if i == 1 else group.comm(brackets[(i - 1, 0)], y)
        brackets[(i, 0)] = b
        for j in range(1, n - i):
            b = group.comm(b, x)
            brackets[(i, j)] = b
    for (i, j), b in brackets.items():
        rhs = group.mult(rhs, group.power(b, comb(n, i + j + 1)))
    rhs = group.mult(rhs, group.power(y, -n))
    return lhs, rhs


def expansion_formula_holds(group: ConcreteGroup, x: int, y: int, n: int) -> bool:
    """Whether (x*y^-1)^n matches its commutator expansion for one pair."""
    if n < 1:
        raise GroupError("n must be at least 1")
    lhs, rhs = _expansion_sides(group, x, y, n)
    return lhs == rhs


def check_expansion_formula(
    group: ConcreteGroup,
    n_values: tuple[int, ...] = (1, 2, 3, 4, 5, 6),
    trials: int = 200,
    seed: int = 0,
    exhaustive_order_bound: int = 64,
) -> list[IdentityCheck]:
    """The metabelian power expansion of (x*y^-1)^n, one check per n.

    Every pair (x, y) is tried when the group order is within the
    exhaustive bound; larger groups get sampled pairs from the seeded
    generator.
    """
    if not is_metabelian(group):
        raise GroupError("group is not metabelian; the expansion needs not hold")
    rng = random.Random(seed)
    size = group.size
    if size <= exhaustive_order_bound:
        pairs = [(x, y) for x in range(size) for y in range(size)]
        mode = "exhaustive"
    else:
        pairs = [(rng.randrange(size), rng.randrange(size)) for _ in range(trials)]
        mode = "sampled"
    checks = []
    for n in n_values:
        witness = None
        for x, y in pairs:
            lhs, rhs = _expansion_sides(group, x, y, n)
            if lhs != rhs:
                witness = _pair_words(group, x, y)
                break
        checks.append(
            IdentityCheck(f"power-expansion-n{n}", witness is None, mode, len(pairs), witness)
        )
    return checks
