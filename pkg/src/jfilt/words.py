"""Free group words and truncated Magnus expansions with exact integer
coefficients.

Words live over one of three alphabets on a fixed genus g: the full alphabet
x1 < ... < xg < y1 < ... < yg, or the single-letter alphabets y1 < ... < yg
and x1 < ... < xg.  A word is a reduced sequence of (generator, exponent)
letters.  The Magnus expansion sends a generator z to 1 + Z in the ring of
noncommutative integer power series truncated below a degree cutoff q; it is
injective on the quotient by the q-th lower central series subgroup, which is
what makes nilpotent_equal and lcs_weight exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .errors import PreconditionError, ValidationError

FULL = "full"
Y_ONLY = "y"
X_ONLY = "x"

_KINDS = (FULL, Y_ONLY, X_ONLY)


@dataclass(frozen=True)
class Alphabet:
    genus: int
    kind: str = FULL

    def __post_init__(self):
        if self.genus < 1:
            raise ValidationError("genus must be at least 1")
        if self.kind not in _KINDS:
            raise ValidationError("unknown alphabet kind %r" % (self.kind,))

    @property
    def size(self) -> int:
        return 2 * self.genus if self.kind == FULL else self.genus

    def name(self, index: int) -> str:
        if not 0 <= index < self.size:
            raise ValidationError("generator index out of range")
        if self.kind == FULL:
            if index < self.genus:
                return "x%d" % (index + 1)
            return "y%d" % (index - self.genus + 1)
        letter = "y" if self.kind == Y_ONLY else "x"
        return "%s%d" % (letter, index + 1)

    def index(self, name: str) -> int:
        m = re.fullmatch(r"([xy])([0-9]+)", name)
        if not m:
            raise ValidationError("bad generator name %r" % (name,))
        letter, num = m.group(1), int(m.group(2))
        if not 1 <= num <= self.genus:
            raise ValidationError("generator %r out of range for genus %d" % (name, self.genus))
        if self.kind == FULL:
            return num - 1 if letter == "x" else self.genus + num - 1
        if (self.kind == Y_ONLY) != (letter == "y"):
            raise ValidationError("generator %r not in this alphabet" % (name,))
        return num - 1


Letter = Tuple[int, int]


def _reduce_letters(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[List[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class GroupWord:
    """A reduced word.  Construction merges adjacent letters on the same
    generator and drops zero exponents, so equal group elements built from
    letter sequences that only differ by free cancellation compare equal."""

    alphabet: Alphabet
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for gen, exp in self.letters:
            if not 0 <= gen < self.alphabet.size:
                raise ValidationError("letter index %d out of range" % (gen,))
            if not isinstance(exp, int):
                raise ValidationError("exponent must be an integer")
        object.__setattr__(self, "letters", _reduce_letters(self.letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.alphabet != other.alphabet:
            raise ValidationError("alphabet mismatch")
        return GroupWord(self.alphabet, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.alphabet, tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inverse()
        out = GroupWord(self.alphabet)
        for _ in range(abs(n)):
            out = out * base
        return out

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def abelianization(self) -> Tuple[int, ...]:
        vec = [0] * self.alphabet.size
        for gen, exp in self.letters:
            vec[gen] += exp
        return tuple(vec)


def word(alphabet: Alphabet, *letters: Letter) -> GroupWord:
    return GroupWord(alphabet, tuple(letters))


def generator(alphabet: Alphabet, index: int) -> GroupWord:
    return GroupWord(alphabet, ((index, 1),))


def commutator(u: GroupWord, v: GroupWord) -> GroupWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def conjugate(u: GroupWord, by: GroupWord) -> GroupWord:
    return by * u * by.inverse()


def omega(g: int) -> GroupWord:
    """The boundary word (y1 ... yg)^-1 (x1 y1 x1^-1 ... xg yg xg^-1) on the
    full alphabet of genus g.  Every generator has total exponent zero."""
    ab = Alphabet(g, FULL)
    head = GroupWord(ab, tuple((g + i, 1) for i in range(g))).inverse()
    tail = GroupWord(ab)
    for i in range(g):
        xi = generator(ab, i)
        yi = generator(ab, g + i)
        tail = tail * xi * yi * xi.inverse()
    return head * tail


def embed_word(w: GroupWord, full: Alphabet) -> GroupWord:
    """Include a word over a single-letter alphabet into the full alphabet of
    the same genus.  y-generators shift up by g, x-generators keep their
    indices."""
    if full.kind != FULL or w.alphabet.genus != full.genus:
        raise ValidationError("embedding requires the full alphabet of the same genus")
    if w.alphabet.kind == FULL:
        return GroupWord(full, w.letters)
    shift = full.genus if w.alphabet.kind == Y_ONLY else 0
    return GroupWord(full, tuple((g + shift, e) for g, e in w.letters))


def project_y(w: GroupWord) -> GroupWord:
    """Letterwise projection of a full-alphabet word that kills every
    x-generator and keeps the y-generators."""
    if w.alphabet.kind != FULL:
        raise ValidationError("projection expects a full-alphabet word")
    g = w.alphabet.genus
    target = Alphabet(g, Y_ONLY)
    return GroupWord(target, tuple((gen - g, e) for gen, e in w.letters if gen >= g))


class TruncatedSeries:
    """Noncommutative integer power series truncated below degree `cutoff`.
    Terms map monomials (tuples of generator indices) to nonzero integers."""

    __slots__ = ("alphabet", "cutoff", "terms")

    def __init__(self, alphabet: Alphabet, cutoff: int, terms: Dict[Tuple[int, ...], int] = None):
        if cutoff < 1:
            raise ValidationError("cutoff must be at least 1")
        self.alphabet = alphabet
        self.cutoff = cutoff
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0 and len(m) < cutoff}

    @classmethod
    def one(cls, alphabet: Alphabet, cutoff: int) -> "TruncatedSeries":
        return cls(alphabet, cutoff, {(): 1})

    def _check(self, other: "TruncatedSeries"):
        if self.alphabet != other.alphabet or self.cutoff != other.cutoff:
            raise ValidationError("series alphabet or cutoff mismatch")

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        q = self.cutoff
        out: Dict[Tuple[int, ...], int] = {}
        for m1, c1 in self.terms.items():
            room = q - len(m1)
            for m2, c2 in other.terms.items():
                if len(m2) < room:
                    key = m1 + m2
                    val = out.get(key, 0) + c1 * c2
                    if val:
                        out[key] = val
                    elif key in out:
                        del out[key]
        result = TruncatedSeries(self.alphabet, q)
        result.terms = out
        return result

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            val = out.get(m, 0) + c
            if val:
                out[m] = val
            elif m in out:
                del out[m]
        result = TruncatedSeries(self.alphabet, self.cutoff)
        result.terms = out
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.alphabet == other.alphabet
            and self.cutoff == other.cutoff
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("TruncatedSeries is mutable in spirit; do not hash")

    def homogeneous(self, degree: int) -> Dict[Tuple[int, ...], int]:
        return {m: c for m, c in self.terms.items() if len(m) == degree}

    @property
    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def lowest_positive_degree(self):
        degrees = [len(m) for m in self.terms if m]
        return min(degrees) if degrees else None

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0]))
        body = " + ".join("%d*%s" % (c, ".".join(self.alphabet.name(i) for i in m) or "1") for m, c in items)
        return "TruncatedSeries(q=%d: %s)" % (self.cutoff, body or "0")


def _letter_series(alphabet: Alphabet, gen: int, exp: int, q: int) -> TruncatedSeries:
    # Coefficient of Z^j in (1 + Z)^exp, valid for negative exponents too.
    terms: Dict[Tuple[int, ...], int] = {}
    for j in range(q):
        if exp >= 0:
            if j > exp:
                break
            coeff = math.comb(exp, j)
        else:
            coeff = (-1) ** j * math.comb(-exp + j - 1, j)
        if coeff:
            terms[(gen,) * j] = coeff
    return TruncatedSeries(alphabet, q, terms)


def magnus_expand(w: GroupWord, q: int) -> TruncatedSeries:
    """Image of w under z -> 1 + Z, truncated below degree q (q >= 2)."""
    if q < 2:
        raise PreconditionError("cutoff must be at least 2")
    series = TruncatedSeries.one(w.alphabet, q)
    for gen, exp in w.letters:
        series = series * _letter_series(w.alphabet, gen, exp, q)
    return series


def nilpotent_equal(u: GroupWord, v: GroupWord, q: int) -> bool:
    """Exact equality in the free nilpotent quotient of class q - 1."""
    if u.alphabet != v.alphabet:
        raise ValidationError("alphabet mismatch")
    return magnus_expand(u, q) == magnus_expand(v, q)


def lcs_weight(w: GroupWord, qmax: int) -> int:
    """Largest k <= qmax with w in the k-th lower central series subgroup.
    Returns qmax itself when the truncated expansion is trivial, meaning the
    weight is at least qmax."""
    if qmax < 2:
        raise PreconditionError("qmax must be at least 2")
    degree = magnus_expand(w, qmax).lowest_positive_degree()
    return qmax if degree is None else degree


_TOKEN = re.compile(r"\s*(?:([xy][0-9]+)|(\^-?[0-9]+)|(\[)|(\])|(\()|(\))|(,))")


def parse_word(text: str, alphabet: Alphabet) -> GroupWord:
    """Parse the word grammar: generators x<i> / y<i>, optional ^<int>
    exponents, juxtaposition for products, [u,v] for commutators, and
    parentheses for grouping.  The empty string is the identity."""
    tokens: List[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValidationError("unexpected input at %r" % (text[pos:].strip()[:12],))
            break
        tokens.append(m.group(0).strip())
        pos = m.end()
    tokens = [t for t in tokens if t]
    state = {"i": 0}

    def peek():
        return tokens[state["i"]] if state["i"] < len(tokens) else None

    def take():
        tok = peek()
        state["i"] += 1
        return tok

    def parse_sequence(stop: Tuple[str, ...]) -> GroupWord:
        out = GroupWord(alphabet)
        while True:
            tok = peek()
            if tok is None or tok in stop:
                return out
            out = out * parse_term()

    def parse_term() -> GroupWord:
        tok = take()
        if tok == "[":
            left = parse_sequence((",",))
            if take() != ",":
                raise ValidationError("commutator is missing a comma")
            right = parse_sequence(("]",))
            if take() != "]":
                raise ValidationError("commutator is missing a closing bracket")
            base = commutator(left, right)
        elif tok == "(":
            base = parse_sequence((")",))
            if take() != ")":
                raise ValidationError("unbalanced parenthesis")
        elif tok and tok[0] in "xy":
            base = generator(alphabet, alphabet.index(tok))
        else:
            raise ValidationError("unexpected token %r" % (tok,))
        nxt = peek()
        if nxt and nxt.startswith("^"):
            take()
            base = base ** int(nxt[1:])
        return base

    result = parse_sequence(())
    if state["i"] != len(tokens):
        raise ValidationError("trailing tokens in word")
    return result


def render_word(w: GroupWord) -> str:
    parts = []
    for gen, exp in w.letters:
        name = w.alphabet.name(gen)
        parts.append(name if exp == 1 else "%s^%d" % (name, exp))
    return " ".join(parts)
