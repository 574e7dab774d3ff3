"""Verification suite: build the benchmark groups and machine-check the
structural claims about 2-subnormality on each of them.

Every check returns a TheoremCheck with a stable id, a pass/fail/skipped
status, and a details dict that is safe to serialize.  Checks whose
hypotheses a group does not satisfy report "skipped" rather than vacuous
passes, so a report always says what was actually tested.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from functools import partial
from typing import Callable

from .core import (
    ConcreteGroup,
    GroupError,
    Subgroup,
    derived_length,
    derived_subgroup,
    direct_product,
    exponent,
    factorize,
    frattini_p_group,
    is_metabelian,
    nilpotency_class,
    normal_closure,
    quotient,
    sylow_decomposition,
    upper_central_series,
)
from .coset import DEFAULT_MAX_COSETS, enumerate_cosets, to_group
from .engel import (
    DEFAULT_EXHAUSTIVE_THRESHOLD,
    check_expansion_formula,
    check_metabelian_identities,
    is_left_n_engel,
    is_n_engel_group,
)
from .presentation import (
    GroupPresentation,
    PresentationError,
    commutator_word,
    parse_presentation,
)
from .subnormal import (
    DEFAULT_CAP,
    GENERALIZED_T2,
    NOT_GENERALIZED_BAER2,
    TWO_BAER,
    classify,
    is_n_subnormal,
    t2_subgroup_cached,
    t_n_within,
)

__all__ = [
    "TheoremCheck",
    "CorpusEntry",
    "cyclic_presentation",
    "dihedral_presentation",
    "quaternion_presentation",
    "symmetric_presentation",
    "alternating4_presentation",
    "class4_2group_presentation",
    "class3_p_group_presentation",
    "build_group",
    "build_class4_2group",
    "build_class3_p_group",
    "two_subnormal_congruence",
    "frattini_coordinates",
    "check_expected_invariants",
    "check_congruence_subnormality",
    "check_frattini_t2_structure",
    "check_cyclic_closure_class",
    "check_generated_subgroup_class",
    "check_metabelian_identity_suite",
    "check_expansion",
    "check_odd_p_metabelian_class",
    "check_solubility_and_engel",
    "check_quotient_two_baer",
    "check_subgroup_inheritance",
    "check_product_decomposition",
    "parse_corpus_text",
    "default_corpus",
    "run_full_suite",
    "run_example_checks",
]

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class TheoremCheck:
    """Outcome of one structural check on one group."""

    id: str
    status: str
    details: dict
    witness: str | None = None

    def to_json_dict(self) -> dict:
        out = {"id": self.id, "status": self.status, "details": self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _skip(check_id: str, reason: str, **extra) -> TheoremCheck:
    details = {"reason": reason}
    details.update(extra)
    return TheoremCheck(check_id, SKIPPED, details)


def _verdict(check_id: str, ok: bool, details: dict,
             witness: str | None = None) -> TheoremCheck:
    return TheoremCheck(check_id, PASS if ok else FAIL, details, witness)


# ---------------------------------------------------------------------------
# Presentation texts for the benchmark corpus.
# ---------------------------------------------------------------------------

def cyclic_presentation(n: int) -> str:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    return f"gens: a; rels: a^{n}"


def dihedral_presentation(order: int) -> str:
    """Dihedral group of the given order (order = 2m, symmetries of an m-gon)."""
    if order < 2 or order % 2:
        raise GroupError("dihedral order must be a positive even integer")
    m = order // 2
    return f"gens: r, s; rels: r^{m}; s^2; (r*s)^2"


def quaternion_presentation() -> str:
    return "gens: a, b; rels: a^4; b^2 = a^2; b^-1*a*b = a^-1"


def symmetric_presentation(n: int) -> str:
    if n == 3:
        return "gens: a, b; rels: a^3; b^2; (a*b)^2"
    if n == 4:
        return "gens: a, b; rels: a^4; b^2; (a*b)^3"
    raise GroupError("only symmetric groups on 3 or 4 points are built in")


def alternating4_presentation() -> str:
    return "gens: a, b; rels: a^3; b^3; (a*b)^2"


def class4_2group_presentation() -> str:
    """Two-generator 2-group of order 128 and class 4 whose non-2-subnormal
    cyclic subgroups generate a proper subgroup of index 2."""
    return ("gens: x, y; rels: x^16 = y^16 = 1; (x*y^-1)^2 = [x,y]^4 = 1; "
            "[x,y,x] = x^4; [x,y,y] = y^4")


def class3_p_group_presentation(p: int) -> str:
    """Two-generator p-group of order p^6 and class 3 in which 2-subnormality
    of <g> is governed by a congruence on the Frattini coordinates of g."""
    if factorize(p) != {p: 1}:
        raise GroupError(f"{p} is not prime")
    q = p * p
    return (f"gens: x, y; rels: x^{p ** 3} = y^{p ** 3} = [x,y]^{p} = "
            f"[x,y,x] = 1; [x,y,y] = x^{q} = y^{q}")


# ---------------------------------------------------------------------------
# Group construction.
# ---------------------------------------------------------------------------

def build_group(text: str, name: str = "",
                max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
    """Parse a presentation and realize it as a concrete group."""
    pres = parse_presentation(text)
    table = enumerate_cosets(pres, max_cosets=max_cosets)
    group = to_group(table)
    if name:
        group.meta["name"] = name
    return group


_BUILD_MEMO: dict[tuple, ConcreteGroup] = {}


def _metabelian_relators(pres: GroupPresentation) -> list:
    """Relators [c, c^g] forcing every generator commutator to commute with
    all of its conjugates, i.e. forcing the derived subgroup abelian once the
    commutators of generators generate it."""
    gens = pres.generators
    rels = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = commutator_word(a, b)
            for g in gens:
                rels.append(commutator_word(c, c.conjugate_by(g)))
    return rels


def _build_expected(name: str, text: str, expected_order: int,
                    max_cosets: int, *, expected: dict, family: str,
                    prime: int) -> ConcreteGroup:
    """Build a benchmark group, recording whether the presentation already
    pinned down the intended finite group or needed metabelian closure
    relators adjoined to cut it down to the expected order."""
    key = ("expected", name, max_cosets)
    memo = _BUILD_MEMO.get(key)
    if memo is not None:
        return memo
    pres = parse_presentation(text)
    table = enumerate_cosets(pres, max_cosets=max_cosets)
    construction = "as-written"
    order_as_written = table.coset_count
    if order_as_written != expected_order:
        extra = _metabelian_relators(pres)
        pres = GroupPresentation(pres.generators,
                                 pres.relators + tuple(extra))
        table = enumerate_cosets(pres, max_cosets=max_cosets)
        construction = "commutator-relators-adjoined"
    group = to_group(table)
    group.meta.update({
        "name": name,
        "family": family,
        "prime": prime,
        "construction": construction,
        "order_as_written": order_as_written,
        "expected": dict(expected),
    })
    _BUILD_MEMO[key] = group
    return group


def build_class4_2group(max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
    return _build_expected(
        "class4-2group", class4_2group_presentation(), 128, max_cosets,
        expected={"order": 128, "class": 4, "derived_length": 2,
                  "t2_order": 64, "classification": GENERALIZED_T2},
        family="class4", prime=2)


def build_class3_p_group(p: int,
                         max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
    n = p ** 6
    return _build_expected(
        f"class3-p{p}", class3_p_group_presentation(p), n, max_cosets,
        expected={"order": n, "class": 3, "derived_length": 2,
                  "t2_order": p ** 5, "classification": GENERALIZED_T2},
        family="class3", prime=p)


# ---------------------------------------------------------------------------
# The congruence rule for the class-3 family.
# ---------------------------------------------------------------------------

def two_subnormal_congruence(p: int, m: int, n: int) -> bool:
    """Predicted 2-subnormality of <g> for g with Frattini coordinates (m, n):
    the cyclic subgroup is 2-subnormal exactly when m = n = 0 or p does not
    divide m + n."""
    if not (0 <= m < p and 0 <= n < p):
        raise GroupError("coordinates must be reduced mod p")
    return (m == 0 and n == 0) or (m + n) % p != 0


def frattini_coordinates(group: ConcreteGroup, g: int) -> tuple[int, int]:
    """Coordinates (m, n) with g = x^m y^n z for some z in the Frattini
    subgroup, where x and y are the two defining generators."""
    p = group.meta["prime"]
    x = group.gen_element(0)
    y = group.gen_element(1)
    frat = frattini_p_group(group, p)
    hits = []
    for m in range(p):
        for n in range(p):
            z = group.mult(group.power(y, -n),
                           group.mult(group.power(x, -m), g))
            if z in frat.elemset:
                hits.append((m, n))
    if len(hits) != 1:
        raise GroupError(
            f"element {g} has {len(hits)} Frattini coordinate pairs")
    return hits[0]


# ---------------------------------------------------------------------------
# Individual checks.  Each takes a built group plus tuning knobs and returns
# a TheoremCheck.
# ---------------------------------------------------------------------------

def check_expected_invariants(group: ConcreteGroup, *,
                              cap: int = DEFAULT_CAP) -> TheoremCheck:
    """Compare the computed order, class, derived length, T_2 order and
    classification against the invariants the construction promises."""
    cid = "expected-invariants"
    expected = group.meta.get("expected")
    if not expected:
        return _skip(cid, "group carries no expected invariants")
    report = classify(group, cap=cap)
    got = {
        "order": report.order,
        "class": report.nilpotency_class,
        "derived_length": report.derived_length,
        "t2_order": report.t2_order,
        "classification": report.classification,
    }
    mismatches = {k: {"expected": v, "got": got[k]}
                  for k, v in expected.items() if got[k] != v}
    details = {
        "expected": dict(expected),
        "got": got,
        "construction": group.meta.get("construction", "as-written"),
        "order_as_written": group.meta.get("order_as_written", report.order),
    }
    if mismatches:
        details["mismatches"] = mismatches
    return _verdict(cid, not mismatches, details)


def check_congruence_subnormality(
        group: ConcreteGroup, *, cap: int = DEFAULT_CAP,
        exhaustive_threshold: int = DEFAULT_EXHAUSTIVE_THRESHOLD,
        seed: int = 0, samples_per_cell: int = 10) -> TheoremCheck:
    """On the class-3 family: <g> is 2-subnormal exactly when the congruence
    rule on the Frattini coordinates of g says so, and the defining bracket
    identities for g = x^m y^n z hold."""
    cid = "congruence-subnormality"
    if group.meta.get("family") != "class3":
        return _skip(cid, "congruence rule only applies to the class-3 family")
    p = group.meta["prime"]
    q = p * p
    x = group.gen_element(0)
    y = group.gen_element(1)
    frat = frattini_p_group(group, p)

    if group.size <= exhaustive_threshold:
        todo = list(range(group.size))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        felems = list(frat.elements)
        todo = []
        for m in range(p):
            for n in range(p):
                base = group.mult(group.power(x, m), group.power(y, n))
                for z in rng.sample(felems, samples_per_cell):
                    todo.append(group.mult(base, z))
        mode = "transversal-sampled"

    checked = 0
    for g in todo:
        m, n = frattini_coordinates(group, g)
        predicted = two_subnormal_congruence(p, m, n)
        actual = is_n_subnormal(group, g, 2, cap=cap)
        if predicted != actual:
            details = {"mode": mode, "coordinates": [m, n],
                       "predicted": predicted, "actual": actual}
            return _verdict(cid, False, details,
                            witness=str(group.element_word(g)))
        if group.comm(group.comm(x, g), g) != group.power(x, (n * n) * q):
            return _verdict(cid, False,
                            {"mode": mode, "identity": "[x,g,g] = x^(n^2 p^2)",
                             "coordinates": [m, n]},
                            witness=str(group.element_word(g)))
        if group.comm(group.comm(y, g), g) != group.power(x, (-m * n) * q):
            return _verdict(cid, False,
                            {"mode": mode, "identity": "[y,g,g] = x^(-mn p^2)",
                             "coordinates": [m, n]},
                            witness=str(group.element_word(g)))
        if group.power(g, q) != group.power(x, (m + n) * q):
            return _verdict(cid, False,
                            {"mode": mode, "identity": "g^(p^2) = x^((m+n) p^2)",
                             "coordinates": [m, n]},
                            witness=str(group.element_word(g)))
        checked += 1
    details = {"mode": mode, "count": checked, "prime": p}
    if mode != "exhaustive":
        details["seed"] = seed
        details["samples_per_cell"] = samples_per_cell
    return _verdict(cid, True, details)


def check_frattini_t2_structure(group: ConcreteGroup, *,
                                cap: int = DEFAULT_CAP) -> TheoremCheck:
    """On the class-3 family: the Frattini subgroup, derived subgroup and
    T_2 have the advertised orders and generating sets, and x y^(p-1) lies
    outside the Frattini subgroup while its p-th power falls inside."""
    cid = "frattini-t2-structure"
    if group.meta.get("family") != "class3":
        return _skip(cid, "structure claims only apply to the class-3 family")
    p = group.meta["prime"]
    q = p * p
    x = group.gen_element(0)
    y = group.gen_element(1)
    xp = group.power(x, p)
    yp = group.power(y, p)
    c = group.comm(x, y)
    frat = frattini_p_group(group, p)
    failures = []

    if frat.size != p ** 4:
        failures.append(f"frattini order {frat.size} != p^4")
    if Subgroup.generated(group, [xp, yp, c]).elemset != frat.elemset:
        failures.append("frattini != <x^p, y^p, [x,y]>")

    der = derived_subgroup(group)
    if exponent(der) != p:
        failures.append(f"derived subgroup exponent {exponent(der)} != {p}")
    if Subgroup.generated(group, [c, group.power(x, q)]).elemset != der.elemset:
        failures.append("derived subgroup != <[x,y], x^(p^2)>")
    series = upper_central_series(group)
    z2 = series[min(1, len(series) - 1)]
    if not der.elemset <= z2.elemset:
        failures.append("derived subgroup not inside second center")

    t2 = t2_subgroup_cached(group, cap=cap)
    w = group.mult(x, group.power(y, p - 1))
    expect_t2 = Subgroup.generated(group, [w, xp, yp, c])
    if expect_t2.elemset != t2.elemset:
        failures.append("T_2 != <x y^(p-1), x^p, y^p, [x,y]>")
    if w in frat.elemset:
        failures.append("x y^(p-1) lies in the Frattini subgroup")
    if group.power(w, p) not in frat.elemset:
        failures.append("(x y^(p-1))^p escapes the Frattini subgroup")
    if group.power(w, q) != 0:
        failures.append("(x y^(p-1))^(p^2) != 1")

    details = {
        "prime": p,
        "frattini_order": frat.size,
        "derived_order": der.size,
        "derived_exponent": exponent(der),
        "t2_order": t2.size,
    }
    if failures:
        details["failures"] = failures
    return _verdict(cid, not failures, details)


def check_cyclic_closure_class(
        group: ConcreteGroup, *, cap: int = DEFAULT_CAP,
        exhaustive_threshold: int = DEFAULT_EXHAUSTIVE_THRESHOLD,
        seed: int = 0, trials: int = 200) -> TheoremCheck:
    """When T_2 is proper, every element outside it generates a normal
    closure of class at most 2 and is a left 3-Engel element."""
    cid = "cyclic-closure-class"
    t2 = t2_subgroup_cached(group, cap=cap)
    if t2.is_whole():
        return _skip(cid, "T_2 is the whole group; no elements lie outside it",
                     t2_order=t2.size)
    outside = [g for g in range(group.size) if g not in t2.elemset]
    if group.size <= exhaustive_threshold:
        todo = outside
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        todo = rng.sample(outside, min(trials, len(outside)))
        mode = "sampled"
    for g in todo:
        ncl = normal_closure(Subgroup.generated(group, [g]), group)
        cls = nilpotency_class(ncl)
        if cls is None or cls > 2:
            return _verdict(cid, False,
                            {"mode": mode, "closure_order": ncl.size,
                             "closure_class": cls},
                            witness=str(group.element_word(g)))
        engel = is_left_n_engel(group, g, 3)
        if not engel.holds:
            return _verdict(cid, False,
                            {"mode": mode, "failed": "left 3-Engel"},
                            witness=str(group.element_word(g)))
    details = {"mode": mode, "count": len(todo), "outside_t2": len(outside)}
    if mode == "sampled":
        details["seed"] = seed
    return _verdict(cid, True, details)


def check_generated_subgroup_class(
        group: ConcreteGroup, *, cap: int = DEFAULT_CAP,
        ds: tuple[int, ...] = (1, 2, 3), trials: int = 12,
        seed: int = 0, exhaustive_evals: int = 2048) -> TheoremCheck:
    """When T_2 is proper, every subgroup generated by d elements is
    nilpotent of class at most 2(d + 1)."""
    cid = "generated-subgroup-class"
    t2 = t2_subgroup_cached(group, cap=cap)
    if t2.is_whole():
        return _skip(cid, "T_2 is the whole group; no elements lie outside it",
                     t2_order=t2.size)
    rng = random.Random(seed)
    counts = {}
    for d in ds:
        bound = 2 * (d + 1)
        if group.size ** d <= exhaustive_evals:
            tuples = _all_tuples(group.size, d)
            mode = "exhaustive"
        else:
            tuples = [tuple(rng.randrange(group.size) for _ in range(d))
                      for _ in range(trials)]
            mode = "sampled"
        for gens in tuples:
            sub = Subgroup.generated(group, list(gens))
            cls = nilpotency_class(sub)
            if cls is None or cls > bound:
                words = ", ".join(str(group.element_word(g)) for g in gens)
                return _verdict(cid, False,
                                {"d": d, "bound": bound, "class": cls,
                                 "subgroup_order": sub.size, "mode": mode},
                                witness=words)
        counts[str(d)] = {"bound": bound, "count": len(tuples), "mode": mode}
    return _verdict(cid, True, {"per_d": counts, "seed": seed})


def _all_tuples(size: int, d: int) -> list[tuple[int, ...]]:
    tuples = [()]
    for _ in range(d):
        tuples = [t + (g,) for t in tuples for g in range(size)]
    return tuples


def check_metabelian_identity_suite(
        group: ConcreteGroup, *, seed: int = 0,
        trials: int = 200) -> TheoremCheck:
    """Commutator identities that hold in every metabelian group."""
    cid = "metabelian-identities"
    if not is_metabelian(group):
        return _skip(cid, "group is not metabelian")
    results = check_metabelian_identities(group, seed=seed, trials=trials)
    failed = [r for r in results if r.holds is False]
    details = {
        "identities": {r.name: {"mode": r.mode, "trials": r.trials}
                       for r in results},
    }
    if failed:
        details["failures"] = [r.name for r in failed]
        witness = failed[0].witness
        return _verdict(cid, False, details,
                        witness=", ".join(witness) if witness else None)
    return _verdict(cid, True, details)


def check_expansion(group: ConcreteGroup, *, seed: int = 0,
                    trials: int = 200) -> TheoremCheck:
    """Power expansion of (x y^-1)^n against the bracket-product formula in
    metabelian groups."""
    cid = "expansion-formula"
    if not is_metabelian(group):
        return _skip(cid, "group is not metabelian")
    small = group.size <= 64
    n_values = (1, 2, 3, 4, 5, 6) if small else (1, 2, 3, 4, 5, 6, 7, 8)
    results = check_expansion_formula(
        group, n_values=n_values, trials=trials, seed=seed,
        exhaustive_order_bound=64)
    failed = [r for r in results if r.holds is False]
    details = {
        "n_values": list(n_values),
        "mode": results[0].mode if results else "exhaustive",
        "pairs": results[0].trials if results else 0,
    }
    if failed:
        details["failures"] = [r.name for r in failed]
        witness = failed[0].witness
        return _verdict(cid, False, details,
                        witness=", ".join(witness) if witness else None)
    return _verdict(cid, True, details)


def check_odd_p_metabelian_class(group: ConcreteGroup, *,
                                 cap: int = DEFAULT_CAP) -> TheoremCheck:
    """Metabelian p-groups with proper nontrivial T_2 have class exactly 3
    when p is odd; for p = 2 the class bound genuinely fails, so the check
    records the observed class instead."""
    cid = "odd-p-class-three"
    facs = factorize(group.size) if group.size > 1 else {}
    if len(facs) != 1:
        return _skip(cid, "group is not a p-group")
    if not is_metabelian(group):
        return _skip(cid, "group is not metabelian")
    report = classify(group, cap=cap)
    if report.classification != GENERALIZED_T2:
        return _skip(cid, "T_2 is trivial or the whole group",
                     classification=report.classification)
    p = next(iter(facs))
    cls = nilpotency_class(group)
    if p == 2:
        return _skip(cid, "class bound requires odd p; observed class recorded",
                     observed_class=cls,
                     sharpness_witness=bool(cls is not None and cls > 3))
    engel = is_n_engel_group(group, 3)
    details = {"prime": p, "class": cls, "engel3": engel.holds,
               "engel_mode": engel.mode}
    return _verdict(cid, cls == 3 and engel.holds, details)


def check_solubility_and_engel(group: ConcreteGroup, *, cap: int = DEFAULT_CAP,
                               seed: int = 0) -> TheoremCheck:
    """p-groups with proper T_2 are soluble 6-Engel groups whose 2-generator
    subgroups have class at most 6 and 5-generator subgroups class at most 12."""
    cid = "solubility-and-engel"
    facs = factorize(group.size) if group.size > 1 else {}
    if len(facs) != 1:
        return _skip(cid, "group is not a p-group")
    t2 = t2_subgroup_cached(group, cap=cap)
    if t2.is_whole():
        return _skip(cid, "T_2 is the whole group; the claim needs it proper")
    failures = []
    dl = derived_length(group)
    if dl is None:
        failures.append("group is not soluble")
    engel = is_n_engel_group(group, 6)
    if not engel.holds:
        failures.append("6-Engel identity fails")
    rng = random.Random(seed)
    type_counts = {}
    for d, bound, trials in ((2, 6, 20), (5, 12, 10)):
        for _ in range(trials):
            gens = [rng.randrange(group.size) for _ in range(d)]
            cls = nilpotency_class(Subgroup.generated(group, gens))
            if cls is None or cls > bound:
                failures.append(
                    f"{d}-generator subgroup of class {cls} exceeds {bound}")
                break
        type_counts[str(d)] = {"bound": bound, "count": trials}
    details = {"derived_length": dl, "engel": 6, "engel_mode": engel.mode,
               "types": type_counts, "seed": seed}
    if failures:
        details["failures"] = failures
    return _verdict(cid, not failures, details)


def check_quotient_two_baer(group: ConcreteGroup, *,
                            cap: int = DEFAULT_CAP) -> TheoremCheck:
    """The quotient by T_2 has trivial T_2 of its own: factoring out the
    2-subnormal part leaves nothing 2-subnormal behind."""
    cid = "quotient-two-baer"
    t2 = t2_subgroup_cached(group, cap=cap)
    if t2.is_whole():
        return _skip(cid, "T_2 is the whole group; quotient is trivial")
    if t2.size == 1:
        report = classify(group, cap=cap)
        ok = report.t2_order == 1
        return _verdict(cid, ok, {"quotient_order": group.size,
                                  "quotient_t2_order": report.t2_order,
                                  "note": "T_2 trivial, group is its own quotient"})
    q = quotient(group, t2)
    report = classify(q, cap=cap)
    details = {"quotient_order": q.size, "quotient_t2_order": report.t2_order,
               "quotient_classification": report.classification}
    return _verdict(cid, report.t2_order == 1, details)


def check_subgroup_inheritance(group: ConcreteGroup, *, cap: int = DEFAULT_CAP,
                               trials: int = 20, seed: int = 0) -> TheoremCheck:
    """T_2 measured inside a subgroup H lands inside T_2(G) intersected
    with H."""
    cid = "subgroup-t2-inheritance"
    t2g = t2_subgroup_cached(group, cap=cap)
    rng = random.Random(seed)
    checked = 0
    for i in range(trials):
        d = 1 + (i % 2)
        gens = [rng.randrange(group.size) for _ in range(d)]
        sub = Subgroup.generated(group, gens)
        t2h = t_n_within(sub, 2, cap=cap)
        if not (t2h.elemset <= t2g.elemset and t2h.elemset <= sub.elemset):
            words = ", ".join(str(group.element_word(g)) for g in gens)
            return _verdict(cid, False,
                            {"subgroup_order": sub.size,
                             "subgroup_t2_order": t2h.size},
                            witness=words)
        checked += 1
    return _verdict(cid, True, {"count": checked, "seed": seed})


def check_product_decomposition(h: ConcreteGroup, k: ConcreteGroup, *,
                                cap: int = DEFAULT_CAP,
                                product: ConcreteGroup | None = None) -> TheoremCheck:
    """T_2 of a direct product H x K, with K a 2-Baer group of order coprime
    to the prime of H, is sandwiched between T_2(H) x 1 and T_2(H) x K.

    Both bounds are attainable: any element pairing a non-2-subnormal part
    of H with a nontrivial part of K stays non-2-subnormal (chains project
    to the factors), which can pull all of K into T_2."""
    cid = "product-decomposition"
    hfacs = factorize(h.size) if h.size > 1 else {}
    if len(hfacs) != 1:
        return _skip(cid, "left factor is not a p-group")
    p = next(iter(hfacs))
    if k.size % p == 0:
        return _skip(cid, "factor orders are not coprime")
    kreport = classify(k, cap=cap)
    if kreport.t2_order != 1:
        return _skip(cid, "right factor is not a 2-Baer group")
    hreport = classify(h, cap=cap)
    if hreport.classification == NOT_GENERALIZED_BAER2:
        return _skip(cid, "left factor has no proper T_2")

    g = product if product is not None else direct_product(h, k)
    m = g.meta["factor_sizes"][1]
    embed_left = g.meta["embed_left"]
    t2h = t2_subgroup_cached(h, cap=cap)
    t2g = t2_subgroup_cached(g, cap=cap)
    lower = {embed_left[a] for a in t2h.elements}
    upper = {a * m + b for a in t2h.elements for b in range(k.size)}
    failures = []
    if not lower <= t2g.elemset:
        failures.append("T_2(H) x 1 escapes T_2 of the product")
    if not t2g.elemset <= upper:
        failures.append("T_2 of the product escapes T_2(H) x K")
    greport = classify(g, cap=cap)
    expected_cls = (GENERALIZED_T2 if t2h.size > 1 else TWO_BAER)
    if greport.classification != expected_cls:
        failures.append(
            f"classification {greport.classification} != {expected_cls}")
    if nilpotency_class(g) is not None:
        syl = dict(sylow_decomposition(g))
        if syl[p].size != h.size:
            failures.append("Sylow p-part of the product has the wrong order")
    details = {
        "prime": p,
        "factor_orders": [h.size, k.size],
        "product_t2_order": t2g.size,
        "left_t2_order": t2h.size,
        "classification": greport.classification,
    }
    if failures:
        details["failures"] = failures
    return _verdict(cid, not failures, details)


# ---------------------------------------------------------------------------
# Corpus and suite drivers.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    """A named group the suite knows how to build on demand."""

    name: str
    build: Callable[[int], ConcreteGroup]
    factors: tuple[Callable[[int], ConcreteGroup], ...] | None = None


def _presentation_builder(name: str, text: str) -> Callable[[int], ConcreteGroup]:
    def build(max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
        key = ("pres", text, max_cosets)
        memo = _BUILD_MEMO.get(key)
        if memo is None:
            memo = build_group(text, name=name, max_cosets=max_cosets)
            _BUILD_MEMO[key] = memo
        return memo

    return build


def _product_builder(name: str, left: Callable[[int], ConcreteGroup],
                     right: Callable[[int], ConcreteGroup]) -> Callable[[int], ConcreteGroup]:
    def build(max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
        key = ("product", name, max_cosets)
        memo = _BUILD_MEMO.get(key)
        if memo is None:
            memo = direct_product(left(max_cosets), right(max_cosets))
            memo.meta["name"] = name
            _BUILD_MEMO[key] = memo
        return memo

    return build


def parse_corpus_text(text: str, source: str = "<corpus>") -> list[CorpusEntry]:
    """Parse a corpus file: one group per line as 'name | presentation',
    with blank lines and # comments ignored."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, body = line.partition("|")
        name = name.strip()
        body = body.strip()
        if not sep or not name or not body:
            raise GroupError(
                f"{source}:{lineno}: expected 'name | presentation'")
        try:
            parse_presentation(body)
        except PresentationError as exc:
            raise GroupError(f"{source}:{lineno}: {exc}") from exc
        entries.append(CorpusEntry(name, _presentation_builder(name, body)))
    return entries


def default_corpus() -> list[CorpusEntry]:
    """The benchmark corpus, in report order."""
    entries = []
    for n in range(2, 13):
        entries.append(CorpusEntry(
            f"C{n}", _presentation_builder(f"C{n}", cyclic_presentation(n))))
    for order in (8, 10, 12, 14, 16):
        entries.append(CorpusEntry(
            f"D{order}",
            _presentation_builder(f"D{order}", dihedral_presentation(order))))
    entries.append(CorpusEntry(
        "Q8", _presentation_builder("Q8", quaternion_presentation())))
    entries.append(CorpusEntry(
        "S3", _presentation_builder("S3", symmetric_presentation(3))))
    entries.append(CorpusEntry(
        "S4", _presentation_builder("S4", symmetric_presentation(4))))
    entries.append(CorpusEntry(
        "A4", _presentation_builder("A4", alternating4_presentation())))
    entries.append(CorpusEntry("class4-2group", build_class4_2group))
    for p in (2, 3, 5):
        entries.append(CorpusEntry(f"class3-p{p}",
                                   partial(build_class3_p_group, p)))
    c2 = _presentation_builder("C2", cyclic_presentation(2))
    entries.append(CorpusEntry(
        "class3-p3 x C2",
        _product_builder("class3-p3 x C2",
                         partial(build_class3_p_group, 3), c2),
        factors=(partial(build_class3_p_group, 3), c2)))
    return entries


def _derived_seed(seed: int, group_name: str, check_id: str) -> int:
    digest = hashlib.sha256(
        f"{seed}|{group_name}|{check_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _checks_for(entry: CorpusEntry, group: ConcreteGroup, *, seed: int,
                cap: int, exhaustive_threshold: int,
                max_cosets: int) -> list[TheoremCheck]:
    name = entry.name

    def sub_seed(cid: str) -> int:
        return _derived_seed(seed, name, cid)

    checks = [
        check_expected_invariants(group, cap=cap),
        check_congruence_subnormality(
            group, cap=cap, exhaustive_threshold=exhaustive_threshold,
            seed=sub_seed("congruence-subnormality")),
        check_frattini_t2_structure(group, cap=cap),
        check_cyclic_closure_class(
            group, cap=cap, exhaustive_threshold=exhaustive_threshold,
            seed=sub_seed("cyclic-closure-class")),
        check_generated_subgroup_class(
            group, cap=cap, seed=sub_seed("generated-subgroup-class")),
        check_metabelian_identity_suite(
            group, seed=sub_seed("metabelian-identities")),
        check_expansion(group, seed=sub_seed("expansion-formula")),
        check_odd_p_metabelian_class(group, cap=cap),
        check_solubility_and_engel(group, cap=cap,
                                   seed=sub_seed("solubility-and-engel")),
        check_quotient_two_baer(group, cap=cap),
        check_subgroup_inheritance(group, cap=cap,
                                   seed=sub_seed("subgroup-t2-inheritance")),
    ]
    if entry.factors is not None:
        left, right = entry.factors
        checks.append(check_product_decomposition(
            left(max_cosets), right(max_cosets), cap=cap, product=group))
    return sorted(checks, key=lambda c: c.id)


def _report_for(entry: CorpusEntry, group: ConcreteGroup, *, seed: int,
                cap: int, exhaustive_threshold: int, max_cosets: int) -> dict:
    checks = _checks_for(entry, group, seed=seed, cap=cap,
                         exhaustive_threshold=exhaustive_threshold,
                         max_cosets=max_cosets)
    report = classify(group, cap=cap)
    gdict = {"name": entry.name}
    gdict.update(report.to_json_dict())
    return {"group": gdict, "checks": [c.to_json_dict() for c in checks]}


def run_full_suite(corpus: list[CorpusEntry] | None = None, *, seed: int = 0,
                   max_cosets: int = DEFAULT_MAX_COSETS,
                   defect_cap: int = DEFAULT_CAP,
                   exhaustive_threshold: int = DEFAULT_EXHAUSTIVE_THRESHOLD) -> dict:
    """Build every corpus group and run every applicable check, returning a
    JSON-ready report."""
    if corpus is None:
        corpus = default_corpus()
    reports = []
    for entry in corpus:
        group = entry.build(max_cosets)
        reports.append(_report_for(
            entry, group, seed=seed, cap=defect_cap,
            exhaustive_threshold=exhaustive_threshold, max_cosets=max_cosets))
    return {
        "config": {
            "seed": seed,
            "limits": {
                "max_cosets": max_cosets,
                "defect_cap": defect_cap,
                "exhaustive_threshold": exhaustive_threshold,
            },
        },
        "reports": reports,
    }


_EXAMPLE_CHECK_IDS = (
    "expected-invariants",
    "frattini-t2-structure",
    "congruence-subnormality",
    "odd-p-class-three",
)


def run_example_checks(primes: tuple[int, ...] = (2, 3, 5), *, seed: int = 0,
                       max_cosets: int = DEFAULT_MAX_COSETS,
                       defect_cap: int = DEFAULT_CAP,
                       exhaustive_threshold: int = DEFAULT_EXHAUSTIVE_THRESHOLD,
                       allow_p7: bool = False) -> dict:
    """Verify the two worked example families: the order-128 class-4 group
    and the class-3 p-group family at the requested primes."""
    for p in primes:
        if p not in (2, 3, 5, 7):
            raise GroupError(f"supported primes are 2, 3, 5 and 7; got {p}")
        if p == 7 and not allow_p7:
            raise GroupError(
                "p = 7 builds a group of order 117649 and is disabled by "
                "default; pass --allow-p7 to run it")
    entries = [CorpusEntry("class4-2group", build_class4_2group)]
    for p in primes:
        entries.append(CorpusEntry(f"class3-p{p}",
                                   partial(build_class3_p_group, p)))
    reports = []
    for entry in entries:
        group = entry.build(max_cosets)
        checks = _checks_for(entry, group, seed=seed, cap=defect_cap,
                             exhaustive_threshold=exhaustive_threshold,
                             max_cosets=max_cosets)
        keep = [c for c in checks if c.id in _EXAMPLE_CHECK_IDS]
        report = classify(group, cap=defect_cap)
        gdict = {"name": entry.name}
        gdict.update(report.to_json_dict())
        reports.append({"group": gdict,
                        "checks": [c.to_json_dict() for c in keep]})
    return {
        "config": {
            "seed": seed,
            "limits": {
                "max_cosets": max_cosets,
                "defect_cap": defect_cap,
                "exhaustive_threshold": exhaustive_threshold,
            },
        },
        "reports": reports,
    }
