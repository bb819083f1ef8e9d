"""The bracket contraction on generator-tensor-Lie elements and its kernel.

An element of level ``k`` is a sum of simple tensors ``e_a (x) P`` where
``e_a`` is one of the ``n`` degree-one generators and ``P`` is a homogeneous
Lie element of degree ``k + 1`` over the same generators.  The bracket
contraction sends ``e_a (x) P`` to ``[e_a, P]`` in degree ``k + 2``; its
kernel is the lattice the rest of the package keeps landing in (tree images,
obstruction classes of automorphisms, string-link invariants), so this module
provides exact rank and basis computations for that kernel by two independent
routes:

* a closed-form count ``n * W(n, k+1) - W(n, k+2)`` using the graded
  dimensions ``W`` of the free Lie ring, valid because the contraction is
  surjective (left-normed brackets are in the image); and
* explicit integer linear algebra on the contraction matrix (Smith normal
  form), which also yields a saturated integer basis of the kernel.

Coordinates are generator-major: the coefficient of ``e_a (x) P_u`` lives at
index ``a * W(n, k+1) + (index of u)`` over the ordered Lyndon basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import ValidationError
from .lie import (
    LieElement,
    embed_lie,
    generator_element,
    hall_basis,
    lie_bracket,
    lie_map,
    witt_dimension,
)
from .snf import Matrix, integer_rank, smith_normal_form


@dataclass(frozen=True)
class TensorElement:
    """Element of (rank-``n`` lattice) tensor (degree ``k+1`` Lie part)."""

    n: int
    level: int
    coords: Tuple[int, ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValidationError("level must be at least 1")
        expected = self.n * witt_dimension(self.n, self.level + 1)
        if len(self.coords) != expected:
            raise ValidationError(
                "coordinate length %d does not match n*W = %d" % (len(self.coords), expected)
            )

    @property
    def lie_degree(self) -> int:
        return self.level + 1

    @classmethod
    def zero(cls, n: int, level: int) -> "TensorElement":
        return cls(n, level, (0,) * (n * witt_dimension(n, level + 1)))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check(self, other: "TensorElement"):
        if self.n != other.n or self.level != other.level:
            raise ValidationError("mixed ranks or levels")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(
            self.n, self.level, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(
            self.n, self.level, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "TensorElement":
        return self.scale(-1)

    def scale(self, c: int) -> "TensorElement":
        return TensorElement(self.n, self.level, tuple(c * a for a in self.coords))

    def component(self, a: int) -> LieElement:
        """The Lie part tensored with generator ``a``."""
        w = witt_dimension(self.n, self.level + 1)
        return LieElement(self.n, self.level + 1, self.coords[a * w : (a + 1) * w])

    def components(self) -> List[LieElement]:
        return [self.component(a) for a in range(self.n)]


def tensor_from_components(n: int, level: int, parts: Dict[int, LieElement]) -> TensorElement:
    """Build an element from a map ``generator index -> Lie part``."""
    w = witt_dimension(n, level + 1)
    coords = [0] * (n * w)
    for a, elem in parts.items():
        if not 0 <= a < n:
            raise ValidationError("generator index out of range")
        if elem.n != n or elem.degree != level + 1:
            raise ValidationError("Lie part has wrong rank or degree")
        for i, c in enumerate(elem.coords):
            coords[a * w + i] += c
    return TensorElement(n, level, tuple(coords))


def simple_tensor(n: int, level: int, a: int, elem: LieElement) -> TensorElement:
    return tensor_from_components(n, level, {a: elem})


def bracket_map(t: TensorElement) -> LieElement:
    """Contract ``e_a (x) P  ->  [e_a, P]``, landing in degree ``level + 2``."""
    out = LieElement.zero(t.n, t.level + 2)
    for a in range(t.n):
        part = t.component(a)
        if part.is_zero:
            continue
        out = out + lie_bracket(generator_element(t.n, a), part)
    return out


def bracket_matrix(n: int, k: int) -> Matrix:
    """Matrix of the contraction in the ordered bases.

    Rows are indexed by the degree ``k+2`` Lyndon basis, columns by the
    generator-major pairs ``(a, u)`` with ``u`` in the degree ``k+1`` basis.
    """
    if k < 1:
        raise ValidationError("level must be at least 1")
    rows = witt_dimension(n, k + 2)
    src = hall_basis(n, k + 1)
    cols = n * len(src.words)
    matrix = [[0] * cols for _ in range(rows)]
    for a in range(n):
        gen = generator_element(n, a)
        for j in range(len(src.words)):
            unit = [0] * len(src.words)
            unit[j] = 1
            image = lie_bracket(gen, LieElement(n, k + 1, tuple(unit)))
            col = a * len(src.words) + j
            for r, c in enumerate(image.coords):
                if c:
                    matrix[r][col] = c
    return matrix


def dk_rank(n: int, k: int, method: str = "formula") -> int:
    """Rank of the contraction kernel at level ``k`` over ``n`` generators.

    ``method="formula"`` uses the closed form ``n*W(n,k+1) - W(n,k+2)``;
    ``method="matrix"`` recomputes it from the rank of the explicit matrix.
    The two agree because the contraction is onto (checked in the tests and
    the acceptance gate, never assumed by the matrix route).
    """
    if n < 1 or k < 1:
        raise ValidationError("need n >= 1 and k >= 1")
    if method == "formula":
        return n * witt_dimension(n, k + 1) - witt_dimension(n, k + 2)
    if method == "matrix":
        matrix = bracket_matrix(n, k)
        cols = len(matrix[0]) if matrix else n * witt_dimension(n, k + 1)
        return cols - integer_rank(matrix)
    raise ValidationError("unknown method %r" % (method,))


def dk_basis(n: int, k: int) -> List[TensorElement]:
    """Saturated integer basis of the contraction kernel at level ``k``."""
    matrix = bracket_matrix(n, k)
    dec = smith_normal_form(matrix)
    out = [TensorElement(n, k, tuple(vec)) for vec in dec.kernel_basis()]
    for elem in out:
        image = bracket_map(elem)
        assert image.is_zero, "kernel basis vector fails the contraction"
    return out


def a1_dimensions(g: int) -> Tuple[int, int]:
    """Level-one kernel rank over ``2g`` generators, paired with the rank of
    the codomain it injects into for the classical comparison table:
    ``binom(2g,2) + 2g + 1``."""
    if g < 1:
        raise ValidationError("genus must be positive")
    return dk_rank(2 * g, 1), comb(2 * g, 2) + 2 * g + 1


def dk_table(pairs: Iterable[Tuple[int, int]]) -> List[Dict[str, int]]:
    """Rank table rows for the CLI: one dict per ``(n, k)`` pair."""
    rows = []
    for n, k in pairs:
        rows.append(
            {
                "n": n,
                "k": k,
                "tensor_dim": n * witt_dimension(n, k + 1),
                "target_dim": witt_dimension(n, k + 2),
                "kernel_rank": dk_rank(n, k),
            }
        )
    return rows


def embed_tensor(t: TensorElement, n_target: int, shift: int) -> TensorElement:
    """Push a tensor element along the inclusion ``e_a -> e_(a+shift)``."""
    parts: Dict[int, LieElement] = {}
    for a in range(t.n):
        comp = t.component(a)
        if comp.is_zero:
            continue
        parts[a + shift] = embed_lie(comp, n_target, shift)
    return tensor_from_components(n_target, t.level, parts)


def map_tensor_first(matrix: Sequence[Sequence[int]], t: TensorElement) -> TensorElement:
    """Transform the generator factor by the transpose action of ``matrix``.

    ``matrix`` is the ``n x n`` integer matrix of a lattice map written on
    generators (row ``i`` lists the coordinates of the image of ``e_i``); the
    induced substitution on the first tensor factor sends the coefficient
    vector ``c_a`` to ``sum_a matrix[a][m] c_a`` at slot ``m``.
    """
    n = t.n
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValidationError("matrix shape does not match the tensor rank")
    w = witt_dimension(n, t.level + 1)
    coords = [0] * (n * w)
    for a in range(n):
        block = t.coords[a * w : (a + 1) * w]
        if not any(block):
            continue
        for m in range(n):
            f = matrix[a][m]
            if f == 0:
                continue
            base = m * w
            for i, c in enumerate(block):
                if c:
                    coords[base + i] += f * c
    return TensorElement(n, t.level, tuple(coords))


def map_tensor_second(matrix: Sequence[Sequence[int]], t: TensorElement) -> TensorElement:
    """Transform the Lie factor by the ring map induced by ``matrix``."""
    parts: Dict[int, LieElement] = {}
    for a in range(t.n):
        comp = t.component(a)
        if comp.is_zero:
            continue
        parts[a] = lie_map(matrix, comp, t.n)
    return tensor_from_components(t.n, t.level, parts)


def tensor_to_json(t: TensorElement) -> dict:
    return {"n": t.n, "k": t.level, "coords": list(t.coords)}


def tensor_from_json(data: dict) -> TensorElement:
    try:
        return TensorElement(
            int(data["n"]), int(data["k"]), tuple(int(c) for c in data["coords"])
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError("bad tensor element payload: %s" % (exc,))
