"""Words over named generators and the presentation input language.

Presentation text looks like

    gens: x, y; rels: x^16 = y^16 = 1; (x*y^-1)^2 = [x,y]^4 = 1; [x,y,x] = x^4

Commutator brackets are left-normed ([a,b,c] means [[a,b],c]) and are
expanded while parsing, so relators come out as plain freely reduced
words.  A relation ``u = v`` is stored as the single relator ``u*v^-1``;
a chain ``u = v = w`` pairs every earlier word with the last one, giving
one relator per equated word.  ``1`` denotes the identity word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "PresentationError",
    "Word",
    "word",
    "GroupPresentation",
    "free_reduce",
    "commutator_word",
    "engel_word",
    "parse_presentation",
    "parse_word",
]

GEN_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PresentationError(ValueError):
    """Raised for malformed presentation text or inconsistent words."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


def _reduced(syllables) -> tuple[tuple[str, int], ...]:
    out: list[list] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class Word:
    """A word in the free group, as (generator, exponent) syllables.

    Instances are not forced into reduced form; the arithmetic below
    always returns reduced results, and free_reduce() normalizes.
    """

    syllables: tuple[tuple[str, int], ...] = ()

    def __mul__(self, other: "Word") -> "Word":
        return Word(_reduced(self.syllables + other.syllables))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self.syllables if n > 0 else self.inverse().syllables
        return Word(_reduced(base * abs(n)))

    def generators(self) -> set[str]:
        return {g for g, _ in self.syllables}

    def letter_count(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_identity_word(self) -> bool:
        return not _reduced(self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return "*".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)


def word(name: str, exp: int = 1) -> Word:
    """Single-syllable word, a convenience for tests and builders."""
    return Word(_reduced(((name, exp),)))


def free_reduce(w: Word) -> Word:
    """The unique freely reduced word equal to w.  Idempotent."""
    return Word(_reduced(w.syllables))


def commutator_word(*items: Word) -> Word:
    """Left-normed commutator [w1, w2, ..., wk] = [[w1, w2], ..., wk].

    [a, b] expands to a^-1 * b^-1 * a * b and the result is reduced.
    """
    if len(items) < 2:
        raise PresentationError("commutator needs at least two arguments")
    acc = items[0]
    for nxt in items[1:]:
        acc = acc.inverse() * nxt.inverse() * acc * nxt
    return free_reduce(acc)


def engel_word(x: Word, y: Word, n: int) -> Word:
    """Iterated bracket [x, y, y, ..., y] with n trailing copies of y."""
    if n < 1:
        raise PresentationError("bracket depth must be at least 1")
    acc = x
    for _ in range(n):
        acc = commutator_word(acc, y)
    return acc


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if not GEN_NAME.match(g):
                raise PresentationError(f"bad generator name {g!r}")
            if g in seen:
                raise PresentationError(f"duplicate generator {g!r}")
            seen.add(g)
        if not self.generators:
            raise PresentationError("presentation needs at least one generator")
        for r in self.relators:
            stray = r.generators() - seen
            if stray:
                raise PresentationError(
                    f"undeclared generator {sorted(stray)[0]!r} in relator {r}"
                )
            if free_reduce(r) != r:
                raise PresentationError(f"relator {r} is not freely reduced")

    def serialize(self) -> str:
        gens = ", ".join(self.generators)
        rels = "; ".join(str(r) for r in self.relators)
        return f"gens: {gens}; rels: {rels}"


_TOKEN = re.compile(
    r"(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[,;=*^()\[\]:])|(?P<bad>\S)"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "bad":
            raise PresentationError(f"unexpected character {m.group()!r}", m.start())
        tokens.append((kind, m.group(), m.start()))
    return tokens


class _Parser:
    def __init__(self, text: str, generators: set[str] | None = None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.generators = generators

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise PresentationError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    # word := term ("*" term)*
    def word(self) -> Word:
        acc = self.term()
        while self.peek()[1] == "*":
            self.next()
            acc = acc * self.term()
        return acc

    # term := atom ("^" int)?
    def term(self) -> Word:
        atom = self.atom()
        if self.peek()[1] == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "int":
                raise PresentationError(f"expected an exponent, found {val!r}", pos)
            exp = int(val)
            if exp == 0:
                raise PresentationError("zero exponent literal", pos)
            return atom**exp
        return atom

    # atom := name | "1" | "(" word ")" | "[" word ("," word)+ "]"
    def atom(self) -> Word:
        kind, val, pos = self.next()
        if kind == "name":
            if self.generators is not None and val not in self.generators:
                raise PresentationError(f"undeclared generator {val!r}", pos)
            return Word(((val, 1),))
        if kind == "int":
            if val == "1":
                return Word()
            raise PresentationError(f"unexpected number {val!r}", pos)
        if val == "(":
            inner = self.word()
            self.expect(")")
            return inner
        if val == "[":
            parts = [self.word()]
            while self.peek()[1] == ",":
                self.next()
                parts.append(self.word())
            self.expect("]")
            if len(parts) < 2:
                raise PresentationError("commutator needs at least two arguments", pos)
            return commutator_word(*parts)
        raise PresentationError(f"unexpected {val or 'end of input'!r}", pos)

    # relation := word ("=" word)*
    def relation(self) -> list[Word]:
        words = [self.word()]
        while self.peek()[1] == "=":
            self.next()
            words.append(self.word())
        return words


def parse_presentation(text: str) -> GroupPresentation:
    """Parse presentation text into a GroupPresentation.

    Raises PresentationError (offset-annotated) on syntax errors,
    undeclared generators, and zero exponent literals.
    """
    p = _Parser(text)
    kind, val, pos = p.next()
    if val != "gens":
        raise PresentationError("input must start with 'gens:'", pos)
    p.expect(":")
    gens = []
    while True:
        kind, val, pos = p.next()
        if kind != "name":
            raise PresentationError(f"expected a generator name, found {val!r}", pos)
        gens.append(val)
        if p.peek()[1] == ",":
            p.next()
            continue
        break
    if len(set(gens)) != len(gens):
        raise PresentationError("duplicate generator name", pos)
    p.expect(";")
    kind, val, pos = p.next()
    if val != "rels":
        raise PresentationError("expected 'rels:'", pos)
    p.expect(":")
    p.generators = set(gens)

    relators: list[Word] = []
    while True:
        chain = p.relation()
        if len(chain) == 1:
            relators.append(free_reduce(chain[0]))
        else:
            last = chain[-1]
            for w in chain[:-1]:
                relators.append(free_reduce(w * last.inverse()))
        if p.peek()[1] == ";":
            p.next()
            continue
        break
    if not p.at_end():
        kind, val, pos = p.peek()
        raise PresentationError(f"trailing input {val!r}", pos)
    return GroupPresentation(tuple(gens), tuple(relators))


def parse_word(text: str, generators) -> Word:
    """Parse a single word expression over the given generator names."""
    p = _Parser(text, set(generators))
    if p.at_end():
        raise PresentationError("empty word expression", 0)
    w = p.word()
    if not p.at_end():
        kind, val, pos = p.peek()
        raise PresentationError(f"trailing input {val!r}", pos)
    return free_reduce(w)
