"""Free Lie algebras over the integers in the Lyndon word basis.

Degree-k basis elements are Lyndon words of length k over the ordered
generators 0 < 1 < ... < n-1; a word brackets recursively through its
standard factorization (the lexicographically least proper suffix is the
right factor).  Expanding a basis element into the tensor algebra yields the
word itself plus lexicographically larger monomials, so conversion from a
tensor to basis coordinates is a triangular elimination and doubles as an
exact membership test for the Lie subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from .errors import PreconditionError, ValidationError
from .words import Alphabet, GroupWord, magnus_expand

Monomial = Tuple[int, ...]
Tensor = Dict[Monomial, int]


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        else:
            p += 1
    if n > 1:
        result = -result
    return result


def witt_dimension(n: int, k: int) -> int:
    """Rank of the degree-k part of the free Lie ring on n generators:
    (1/k) * sum over d | k of mobius(d) * n^(k/d)."""
    if n < 1 or k < 1:
        raise ValidationError("witt_dimension needs n >= 1 and k >= 1")
    total = sum(_mobius(d) * n ** (k // d) for d in range(1, k + 1) if k % d == 0)
    assert total % k == 0
    return total // k


@lru_cache(maxsize=None)
def lyndon_words(n: int, k: int) -> Tuple[Monomial, ...]:
    """All Lyndon words of length exactly k over n letters, in lexicographic
    order (Duval's generation)."""
    if n < 1 or k < 1:
        raise ValidationError("lyndon_words needs n >= 1 and k >= 1")
    out: List[Monomial] = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == k:
            out.append(tuple(w))
        m = len(w)
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return tuple(out)


def standard_factorization(w: Monomial) -> Tuple[Monomial, Monomial]:
    if len(w) < 2:
        raise ValidationError("only words of length >= 2 factor")
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


@lru_cache(maxsize=None)
def _expand(w: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    # Tensor algebra expansion of the standard bracketing of a Lyndon word.
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    left = dict(_expand(u))
    right = dict(_expand(v))
    out: Tensor = {}
    for mu, cu in left.items():
        for mv, cv in right.items():
            for key, sign in ((mu + mv, 1), (mv + mu, -1)):
                val = out.get(key, 0) + sign * cu * cv
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
    return tuple(sorted(out.items()))


def basis_expansion(w: Monomial) -> Tensor:
    return dict(_expand(w))


@dataclass(frozen=True)
class HallBasis:
    n: int
    degree: int
    words: Tuple[Monomial, ...]

    def index(self, w: Monomial) -> int:
        return _basis_index(self.n, self.degree)[w]


@lru_cache(maxsize=None)
def hall_basis(n: int, degree: int) -> HallBasis:
    words = lyndon_words(n, degree)
    assert len(words) == witt_dimension(n, degree)
    for w in words:
        expansion = basis_expansion(w)
        # Triangularity: the word itself has coefficient 1 and every other
        # monomial in the expansion is lexicographically larger.
        assert expansion.get(w) == 1
        assert all(m == w or m > w for m in expansion)
    return HallBasis(n, degree, words)


@lru_cache(maxsize=None)
def _basis_index(n: int, degree: int) -> Dict[Monomial, int]:
    return {w: i for i, w in enumerate(hall_basis(n, degree).words)}


@dataclass(frozen=True)
class LieElement:
    n: int
    degree: int
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != witt_dimension(self.n, self.degree):
            raise ValidationError("coordinate length does not match the basis")

    @classmethod
    def zero(cls, n: int, degree: int) -> "LieElement":
        return cls(n, degree, (0,) * witt_dimension(n, degree))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check(self, other: "LieElement"):
        if self.n != other.n or self.degree != other.degree:
            raise ValidationError("mixed ranks or degrees")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        return LieElement(self.n, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        return LieElement(self.n, self.degree, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def scale(self, c: int) -> "LieElement":
        return LieElement(self.n, self.degree, tuple(c * a for a in self.coords))


def generator_element(n: int, index: int) -> LieElement:
    if not 0 <= index < n:
        raise ValidationError("generator index out of range")
    coords = [0] * n
    coords[index] = 1
    return LieElement(n, 1, tuple(coords))


def vector_element(n: int, vector) -> LieElement:
    return LieElement(n, 1, tuple(vector))


def lie_to_tensor(elem: LieElement) -> Tensor:
    out: Tensor = {}
    basis = hall_basis(elem.n, elem.degree)
    for coeff, w in zip(elem.coords, basis.words):
        if coeff == 0:
            continue
        for m, c in basis_expansion(w).items():
            val = out.get(m, 0) + coeff * c
            if val:
                out[m] = val
            elif m in out:
                del out[m]
    return out


def tensor_to_lyndon(tensor: Tensor, n: int, degree: int) -> LieElement:
    """Triangular change of basis.  Raises if the tensor does not lie in the
    span of the bracketed basis, i.e. is not a Lie element."""
    work = {m: c for m, c in tensor.items() if c != 0}
    for m in work:
        if len(m) != degree or not all(0 <= letter < n for letter in m):
            raise ValidationError("tensor monomials must be homogeneous over the n letters")
    coords = []
    for w in hall_basis(n, degree).words:
        c = work.get(w, 0)
        coords.append(c)
        if c:
            for m, cm in basis_expansion(w).items():
                val = work.get(m, 0) - c * cm
                if val:
                    work[m] = val
                elif m in work:
                    del work[m]
    if work:
        raise ValidationError("tensor is not a Lie element")
    return LieElement(n, degree, tuple(coords))


def lie_bracket(u: LieElement, v: LieElement) -> LieElement:
    if u.n != v.n:
        raise ValidationError("mixed ranks")
    tu = lie_to_tensor(u)
    tv = lie_to_tensor(v)
    out: Tensor = {}
    for mu, cu in tu.items():
        for mv, cv in tv.items():
            for key, sign in ((mu + mv, 1), (mv + mu, -1)):
                val = out.get(key, 0) + sign * cu * cv
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
    return tensor_to_lyndon(out, u.n, u.degree + v.degree)


def graded_class(w: GroupWord, k: int) -> LieElement:
    """Class of a weight >= k word in the degree-k graded piece of the lower
    central series, read off from the degree-k Magnus part."""
    if k < 1:
        raise ValidationError("degree must be at least 1")
    n = w.alphabet.size
    if k == 1:
        return LieElement(n, 1, w.abelianization())
    series = magnus_expand(w, k + 1)
    low = series.lowest_positive_degree()
    if low is not None and low < k:
        raise PreconditionError("word has weight %d, below the requested degree %d" % (low, k))
    return tensor_to_lyndon(series.homogeneous(k), n, k)


def dynkin_image(tensor: Tensor) -> Tensor:
    """Left-normed bracketing map on the tensor algebra.  On a homogeneous
    Lie element of degree k it acts as multiplication by k."""
    out: Tensor = {}
    for m, c in tensor.items():
        part: Tensor = {(m[0],): 1} if m else {}
        for letter in m[1:]:
            nxt: Tensor = {}
            for pm, pc in part.items():
                for key, sign in ((pm + (letter,), 1), ((letter,) + pm, -1)):
                    val = nxt.get(key, 0) + sign * pc
                    if val:
                        nxt[key] = val
                    elif key in nxt:
                        del nxt[key]
            part = nxt
        for pm, pc in part.items():
            val = out.get(pm, 0) + c * pc
            if val:
                out[pm] = val
            elif pm in out:
                del out[pm]
    return out


def lie_map(matrix, elem: LieElement, n_target: int) -> LieElement:
    """Functorial action of a linear substitution on a Lie element.  Column j
    of `matrix` (n_target rows, elem.n columns) gives the image of source
    generator j as a vector of target generators."""
    tensor = lie_to_tensor(elem)
    out: Tensor = {}
    for m, c in tensor.items():
        stage: Tensor = {(): c}
        for letter in m:
            nxt: Tensor = {}
            for prefix, pc in stage.items():
                for i in range(n_target):
                    entry = matrix[i][letter]
                    if entry:
                        key = prefix + (i,)
                        val = nxt.get(key, 0) + pc * entry
                        if val:
                            nxt[key] = val
                        elif key in nxt:
                            del nxt[key]
            stage = nxt
        for pm, pc in stage.items():
            val = out.get(pm, 0) + pc
            if val:
                out[pm] = val
            elif pm in out:
                del out[pm]
    return tensor_to_lyndon(out, n_target, elem.degree)


def embed_lie(elem: LieElement, n_target: int, shift: int) -> LieElement:
    """Reindex generators through i -> i + shift.  Order-preserving, so basis
    words map to basis words."""
    if shift < 0 or elem.n + shift > n_target:
        raise ValidationError("embedding does not fit in the target rank")
    target = hall_basis(n_target, elem.degree)
    index = _basis_index(n_target, elem.degree)
    coords = [0] * len(target.words)
    for c, w in zip(elem.coords, hall_basis(elem.n, elem.degree).words):
        if c:
            shifted = tuple(letter + shift for letter in w)
            coords[index[shifted]] = c
    return LieElement(n_target, elem.degree, tuple(coords))


def group_bracketing(w: Monomial, alphabet: Alphabet) -> GroupWord:
    """Group commutator word with the same bracketing shape as the standard
    factorization of w.  Its graded class in degree len(w) is the basis
    element of w."""
    from .words import commutator, generator

    if len(w) == 1:
        return generator(alphabet, w[0])
    u, v = standard_factorization(w)
    return commutator(group_bracketing(u, alphabet), group_bracketing(v, alphabet))


def lift_lie_element(elem: LieElement, alphabet: Alphabet) -> GroupWord:
    """A word of weight >= elem.degree whose graded class is elem: the product
    of bracketing words raised to the coordinate exponents."""
    if alphabet.size != elem.n:
        raise ValidationError("alphabet size must match the Lie rank")
    out = GroupWord(alphabet)
    for c, w in zip(elem.coords, hall_basis(elem.n, elem.degree).words):
        if c:
            out = out * group_bracketing(w, alphabet) ** c
    return out


def bracket_string(elem: LieElement, alphabet: Alphabet) -> str:
    if alphabet.size != elem.n:
        raise ValidationError("alphabet size must match the Lie rank")

    def render(w: Monomial) -> str:
        if len(w) == 1:
            return alphabet.name(w[0])
        u, v = standard_factorization(w)
        return "[%s,%s]" % (render(u), render(v))

    parts = []
    for c, w in zip(elem.coords, hall_basis(elem.n, elem.degree).words):
        if c == 0:
            continue
        prefix = "" if c == 1 else ("-" if c == -1 else "%d*" % c)
        parts.append(prefix + render(w))
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def lie_to_json(elem: LieElement) -> dict:
    return {"n": elem.n, "k": elem.degree, "coords": list(elem.coords)}


def lie_from_json(data: dict) -> LieElement:
    try:
        return LieElement(int(data["n"]), int(data["k"]), tuple(int(c) for c in data["coords"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError("bad Lie element payload: %s" % (exc,))
