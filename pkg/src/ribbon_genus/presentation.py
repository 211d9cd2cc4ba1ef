"""Finite ordered group presentations.

Words are stored fully expanded, one letter per unit of exponent, because the
ribbon construction consumes individual occurrences rather than syllables.
A letter is a pair ``(generator_index, sign)`` with ``sign`` in ``{+1, -1}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby
from typing import Sequence, Union

Letter = tuple[int, int]
Word = tuple[Letter, ...]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class PresentationError(ValueError):
    """Invalid presentation data or an inapplicable rewrite."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")


def expand(syllables: Sequence[tuple[int, int]]) -> Word:
    """Expand ``[(gen, exponent), ...]`` into unit letters."""
    out: list[Letter] = []
    for g, m in syllables:
        s = 1 if m > 0 else -1
        out.extend([(g, s)] * abs(m))
    return tuple(out)


def syllables(word: Word) -> list[tuple[int, int]]:
    """Maximal runs of equal letters as ``(gen, exponent)`` pairs (not cyclic)."""
    return [(g, s * len(list(run))) for (g, s), run in groupby(word)]


def invert(word: Word) -> Word:
    return tuple((g, -s) for g, s in reversed(word))


def free_reduce(word: Word) -> Word:
    stack: list[Letter] = []
    for g, s in word:
        if stack and stack[-1] == (g, -s):
            stack.pop()
        else:
            stack.append((g, s))
    return tuple(stack)


def cyclic_reduce(word: Word) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def _min_rotation(word: Word) -> Word:
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def cyclic_normal_form(word: Word) -> Word:
    return _min_rotation(cyclic_reduce(word))


@dataclass(frozen=True)
class OccurrenceStats:
    per_relator: tuple[tuple[int, ...], ...]  # per_relator[i][j] = occurrences of x_i in r_j
    generator_degrees: tuple[int, ...]
    relator_lengths: tuple[int, ...]
    total_degree: int
    total_length: int


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(tuple(l) for l in r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError(f"duplicate generator in {self.generators}")
        for name in self.generators:
            if not _IDENT.fullmatch(name):
                raise PresentationError(f"invalid generator name {name!r}")
        n = len(self.generators)
        for j, r in enumerate(self.relators):
            for g, s in r:
                if not 0 <= g < n or s not in (1, -1):
                    raise PresentationError(f"relator {j} has invalid letter {(g, s)}")

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def k(self) -> int:
        return len(self.relators)

    @property
    def length(self) -> int:
        return sum(len(r) for r in self.relators)

    @property
    def short_relators(self) -> list[int]:
        """Indices of relators of length <= 1; the ribbon builder handles these specially."""
        return [j for j, r in enumerate(self.relators) if len(r) <= 1]

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def word(self, text: str) -> Word:
        """Parse a word over this presentation's generators."""
        return _Parser(text, self.generators).parse_word_only()

    def __str__(self) -> str:
        return render_presentation(self)

    @classmethod
    def from_syllables(cls, generators: Sequence[str], relators: Sequence[Sequence[tuple[int, int]]]):
        return cls(tuple(generators), tuple(expand(r) for r in relators))


# ---------------------------------------------------------------------------
# text format

class _Parser:
    _token = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[<>⟨⟩|,=^]))")

    def __init__(self, text: str, generators: Sequence[str] | None = None):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = self._token.match(text, pos)
            if not m:
                rest = text[pos:]
                if rest.strip():
                    raise PresentationSyntaxError("unexpected character", text, pos + len(rest) - len(rest.lstrip()))
                break
            kind = m.lastgroup
            val = m.group(kind)
            if kind == "sym":
                val = {"⟨": "<", "⟩": ">"}.get(val, val)
            self.toks.append((kind, val, m.start(kind)))
            pos = m.end()
        self.i = 0
        self.gens = list(generators) if generators is not None else None

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, val: str | None = None, kind: str | None = None):
        tok = self.peek()
        if (val is not None and tok[1] != val) or (kind is not None and tok[0] != kind) or tok[0] == "eof":
            want = repr(val) if val is not None else kind
            raise PresentationSyntaxError(f"expected {want}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Presentation:
        self.take("<")
        gens: list[str] = []
        while True:
            _, name, pos = self.take(kind="ident")
            if name in gens:
                raise PresentationSyntaxError(f"duplicate generator {name!r}", self.text, pos)
            gens.append(name)
            if self.peek()[1] == ",":
                self.take(",")
                continue
            break
        self.gens = gens
        self.take("|")
        relators: list[Word] = []
        if self.peek()[1] != ">":
            while True:
                relators.append(self.relator())
                if self.peek()[1] == ",":
                    self.take(",")
                    continue
                break
        self.take(">")
        if self.peek()[0] != "eof":
            raise PresentationSyntaxError("trailing input", self.text, self.peek()[2])
        return Presentation(tuple(gens), tuple(relators))

    def parse_word_only(self) -> Word:
        w = self.word()
        if self.peek()[0] != "eof":
            raise PresentationSyntaxError("trailing input", self.text, self.peek()[2])
        return w

    def relator(self) -> Word:
        lhs = self.word()
        if self.peek()[1] == "=":
            self.take("=")
            rhs = self.word()
            return lhs + invert(rhs)
        return lhs

    def word(self) -> Word:
        tok = self.peek()
        if tok[0] == "int" and tok[1] == "1":
            self.take()
            return ()
        if tok[0] != "ident":
            raise PresentationSyntaxError(f"expected a word, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        letters: list[Letter] = []
        while self.peek()[0] == "ident":
            _, name, pos = self.take(kind="ident")
            if name not in self.gens:
                raise PresentationSyntaxError(f"undeclared generator {name!r}", self.text, pos)
            exp = 1
            if self.peek()[1] == "^":
                self.take("^")
                exp = int(self.take(kind="int")[1])
            letters.extend(expand([(self.gens.index(name), exp)]))
        return tuple(letters)


def parse_presentation(text: str) -> Presentation:
    """Parse ``<a,b | a b^2 a^-1 b^-3, ...>``; ``u = v`` becomes ``u v^-1``."""
    return _Parser(text).parse()


def render_word(word: Word, generators: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    for g, m in syllables(word):
        parts.append(generators[g] if m == 1 else f"{generators[g]}^{m}")
    return " ".join(parts)


def render_presentation(p: Presentation) -> str:
    rels = ", ".join(render_word(r, p.generators) for r in p.relators)
    return f"<{','.join(p.generators)} | {rels}>"


def occurrence_stats(p: Presentation) -> OccurrenceStats:
    table = [[0] * p.k for _ in range(p.n)]
    for j, r in enumerate(p.relators):
        for g, _ in r:
            table[g][j] += 1
    degrees = tuple(sum(row) for row in table)
    lengths = tuple(len(r) for r in p.relators)
    return OccurrenceStats(
        per_relator=tuple(tuple(row) for row in table),
        generator_degrees=degrees,
        relator_lengths=lengths,
        total_degree=sum(degrees),
        total_length=sum(lengths),
    )


# ---------------------------------------------------------------------------
# Tietze moves

@dataclass(frozen=True)
class InvertRelator:
    i: int


@dataclass(frozen=True)
class CyclicPermuteRelator:
    i: int
    shift: int = 1


@dataclass(frozen=True)
class ConjugateRelator:
    """Replace ``r_i`` by ``w r_i w^-1`` (no free reduction)."""
    i: int
    conjugator: Word


@dataclass(frozen=True)
class MultiplyRelators:
    """Replace ``r_i`` by ``r_i r_j`` (or ``r_i r_j^-1``)."""
    i: int
    j: int
    inverse: bool = False


@dataclass(frozen=True)
class AddRedundantRelator:
    """Append a copy of ``r_i``."""
    i: int


@dataclass(frozen=True)
class RemoveRedundantRelator:
    """Drop ``r_i``; only allowed when it is a syntactic duplicate of another relator."""
    i: int


@dataclass(frozen=True)
class AddGeneratorWithDefinition:
    """Add generator ``name`` and relator ``name * definition^-1``."""
    name: str
    definition: Word


@dataclass(frozen=True)
class RemoveDefinedGenerator:
    """Use relator ``relator`` (in which ``generator`` occurs exactly once) to eliminate ``generator``."""
    relator: int
    generator: int


@dataclass(frozen=True)
class ReorderGenerators:
    order: tuple[int, ...]  # new position t holds old generator order[t]


@dataclass(frozen=True)
class ReorderRelators:
    order: tuple[int, ...]


TietzeMove = Union[
    InvertRelator, CyclicPermuteRelator, ConjugateRelator, MultiplyRelators,
    AddRedundantRelator, RemoveRedundantRelator, AddGeneratorWithDefinition,
    RemoveDefinedGenerator, ReorderGenerators, ReorderRelators,
]


def _check_relator(p: Presentation, i: int) -> None:
    if not 0 <= i < p.k:
        raise PresentationError(f"relator index {i} out of range (k={p.k})")


def _check_word(p: Presentation, w: Word) -> None:
    for g, s in w:
        if not 0 <= g < p.n or s not in (1, -1):
            raise PresentationError(f"word letter {(g, s)} out of range")


def _replace(rels: tuple[Word, ...], i: int, w: Word) -> tuple[Word, ...]:
    return rels[:i] + (w,) + rels[i + 1:]


def apply_tietze(p: Presentation, move: TietzeMove) -> Presentation:
    rels = p.relators
    match move:
        case InvertRelator(i):
            _check_relator(p, i)
            return Presentation(p.generators, _replace(rels, i, invert(rels[i])))
        case CyclicPermuteRelator(i, shift):
            _check_relator(p, i)
            r = rels[i]
            t = shift % len(r) if r else 0
            return Presentation(p.generators, _replace(rels, i, r[t:] + r[:t]))
        case ConjugateRelator(i, w):
            _check_relator(p, i)
            _check_word(p, w)
            return Presentation(p.generators, _replace(rels, i, tuple(w) + rels[i] + invert(tuple(w))))
        case MultiplyRelators(i, j, inverse):
            _check_relator(p, i)
            _check_relator(p, j)
            if i == j:
                raise PresentationError("cannot multiply a relator by itself")
            other = invert(rels[j]) if inverse else rels[j]
            return Presentation(p.generators, _replace(rels, i, rels[i] + other))
        case AddRedundantRelator(i):
            _check_relator(p, i)
            return Presentation(p.generators, rels + (rels[i],))
        case RemoveRedundantRelator(i):
            _check_relator(p, i)
            target = cyclic_normal_form(rels[i])
            if not any(j != i and cyclic_normal_form(r) == target for j, r in enumerate(rels)):
                raise PresentationError(f"relator {i} is not a syntactic duplicate; redundancy unverifiable")
            return Presentation(p.generators, rels[:i] + rels[i + 1:])
        case AddGeneratorWithDefinition(name, w):
            _check_word(p, w)
            x = p.n
            return Presentation(p.generators + (name,), rels + (((x, 1),) + invert(tuple(w)),))
        case RemoveDefinedGenerator(i, x):
            _check_relator(p, i)
            if not 0 <= x < p.n:
                raise PresentationError(f"generator index {x} out of range")
            r = rels[i]
            spots = [t for t, (g, _) in enumerate(r) if g == x]
            if len(spots) != 1:
                raise PresentationError(f"generator {p.generators[x]} must occur exactly once in relator {i}")
            t = spots[0]
            r = r[t:] + r[:t]  # x^s w'
            if r[0][1] == -1:
                r = invert(r)
                r = r[-1:] + r[:-1]
            # r = x w'  =>  x = w'^-1
            value = invert(r[1:])
            renum = {g: (g if g < x else g - 1) for g in range(p.n) if g != x}
            out = []
            for j, w in enumerate(rels):
                if j == i:
                    continue
                new: list[Letter] = []
                for g, s in w:
                    if g == x:
                        new.extend((renum[h], e) for h, e in (value if s == 1 else invert(value)))
                    else:
                        new.append((renum[g], s))
                out.append(tuple(new))
            gens = p.generators[:x] + p.generators[x + 1:]
            return Presentation(gens, tuple(out))
        case ReorderGenerators(order):
            if sorted(order) != list(range(p.n)):
                raise PresentationError(f"{order} is not a permutation of the generators")
            new_index = {old: t for t, old in enumerate(order)}
            gens = tuple(p.generators[o] for o in order)
            return Presentation(gens, tuple(tuple((new_index[g], s) for g, s in r) for r in rels))
        case ReorderRelators(order):
            if sorted(order) != list(range(p.k)):
                raise PresentationError(f"{order} is not a permutation of the relators")
            return Presentation(p.generators, tuple(rels[o] for o in order))
    raise PresentationError(f"unknown move {move!r}")


# ---------------------------------------------------------------------------
# genus-motivated rewrites

def fresh_name(taken: Sequence[str], stem: str = "x") -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    t = 1
    while f"{stem}{t}" in taken:
        t += 1
    return f"{stem}{t}"


def _next_generator_name(gens: Sequence[str]) -> str:
    """``a,b -> c``; ``x1,x2 -> x3``; otherwise a fresh ``x``-name."""
    if all(len(g) == 1 and g.islower() for g in gens):
        for c in "abcdefghijklmnopqrstuvwxyz":
            if c > max(gens) and c not in gens:
                return c
    m = [re.fullmatch(r"([A-Za-z_]+?)(\d+)", g) for g in gens]
    if all(m) and len({x.group(1) for x in m}) == 1:
        stem = m[0].group(1)
        return fresh_name(gens, f"{stem}{max(int(x.group(2)) for x in m) + 1}")
    return fresh_name(gens, "x")


def connectify(p: Presentation) -> Presentation:
    """Add ``x_{n+1}`` with relator ``x_{n+1} (x_1^2 ... x_n^2)^-1``; the result has a connected surface."""
    if p.n < 1:
        raise PresentationError("connectify needs at least one generator")
    name = _next_generator_name(p.generators)
    squares = expand([(i, 2) for i in range(p.n)])
    return apply_tietze(p, AddGeneratorWithDefinition(name, squares))


def _reduce_run(m: int, target: int) -> int:
    return target * (1 if m > 0 else -1)


def reduce_exponents(p: Presentation, strict: bool = False) -> Presentation:
    """Shorten each maximal run ``x^m`` with ``|m| > 2`` to an exponent of the same sign and parity.

    Runs are taken as written, not cyclically. The group may change.

    Even runs become ``x^{+-2}``. With ``strict=True`` odd runs become ``x^{+-1}``
    unconditionally, which can lower the canonical genus when the two faces on
    either side of the collapsed band coincide. By default an odd run is only
    collapsed to ``x^{+-1}`` if the canonical genus survives; otherwise it is left
    at ``x^{+-3}``. The default result is a fixpoint, so the function is idempotent.
    """
    sylls = [[list(s) for s in syllables(r)] for r in p.relators]
    for rel in sylls:
        for s in rel:
            m = s[1]
            if abs(m) > 2:
                if m % 2 == 0:
                    s[1] = _reduce_run(m, 2)
                else:
                    s[1] = _reduce_run(m, 1 if strict else 3)

    def build() -> Presentation:
        return Presentation(p.generators, tuple(expand([tuple(s) for s in rel]) for rel in sylls))

    if strict:
        return build()
    from .ribbon import DEFAULT_CONVENTION, build_canonical_surface, surface_summary

    def genus(q: Presentation) -> int:
        return surface_summary(build_canonical_surface(q, DEFAULT_CONVENTION)).genus

    target = genus(p)
    changed = True
    while changed:
        changed = False
        for rel in sylls:
            for s in rel:
                if abs(s[1]) == 3:
                    s[1] = _reduce_run(s[1], 1)
                    if genus(build()) == target:
                        changed = True
                    else:
                        s[1] = _reduce_run(s[1], 3)
    return build()


def degree3_normalize(p: Presentation) -> Presentation:
    """Split every generator into one generator per occurrence, chained by ``x^j (x^{j-1})^-1``.

    The p-th occurrence of ``x_i`` (counted left to right through all relators)
    becomes the generator ``x_i^p``; each new generator then occurs exactly three
    times.
    """
    stats = occurrence_stats(p)
    if any(d == 0 for d in stats.generator_degrees):
        missing = [p.generators[i] for i, d in enumerate(stats.generator_degrees) if d == 0]
        raise PresentationError(f"generators {missing} occur in no relator")
    names: list[str] = []
    first: list[int] = []
    for i, name in enumerate(p.generators):
        first.append(len(names))
        for j in range(1, stats.generator_degrees[i] + 1):
            names.append(f"{name}{j}")
    if len(set(names)) != len(names):
        names = []
        for i, name in enumerate(p.generators):
            names.extend(f"{name}_{j}" for j in range(1, stats.generator_degrees[i] + 1))
    seen = [0] * p.n
    rels: list[Word] = []
    for r in p.relators:
        new = []
        for g, s in r:
            new.append((first[g] + seen[g], s))
            seen[g] += 1
        rels.append(tuple(new))
    for i in range(p.n):
        d = stats.generator_degrees[i]
        for j in range(d):
            rels.append(((first[i] + j, 1), (first[i] + (j - 1) % d, -1)))
    return Presentation(tuple(names), tuple(rels))
