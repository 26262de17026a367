import collections
import fractions
import logging
import re
from collections.abc import Iterable
from collections.abc import Iterator
from typing import Self

import numpy
import pydantic
import sympy

from .errors import UnsupportedCartanType
from .errors import WeylCapExceeded


logger = logging.getLogger(__name__)

Matrix = tuple[tuple[int, ...], ...]
Root = tuple[int, ...]

DEFAULT_RANK_CAP = 8
DEFAULT_WEYL_CAP = 10**6

_MIN_RANK = {'A': 1, 'B': 2, 'C': 2, 'D': 4}
_EXCEPTIONAL = {'E': (6, 7, 8), 'F': (4,), 'G': (2,)}
_CARTAN_TYPE = re.compile(r'^\s*([A-Ga-g])\s*(\d+)\s*$')


def _as_matrix(array: numpy.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in array.tolist())


@pydantic.dataclasses.dataclass(frozen=True, eq=False)
class WeylElement:
    """
    An element of W, identified by its action on the root space.

    Fields:
        word: simple-reflection indices, ``(i, j)`` meaning ``s_i s_j``
        matrix: integer action on simple-root coordinates (column images)
    """

    word: tuple[int, ...]
    matrix: Matrix

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __mul__(self, other: 'WeylElement') -> 'WeylElement':
        product = self.array @ other.array
        return WeylElement(
            word=self.word + other.word,
            matrix=_as_matrix(product),
        )

    def __str__(self) -> str:
        return format_word(self.word)

    @property
    def array(self) -> numpy.ndarray:
        return numpy.array(self.matrix, dtype=numpy.int64)

    @property
    def is_identity(self) -> bool:
        return bool((self.array == numpy.eye(len(self.matrix))).all())

    def apply(self, root: Iterable[int]) -> Root:
        image = self.array @ numpy.array(tuple(root), dtype=numpy.int64)
        return tuple(int(x) for x in image)


def format_word(word: tuple[int, ...]) -> str:
    if not word:
        return 'e'
    return '·'.join(f's{i}' for i in word)


class RootSystem(pydantic.BaseModel):
    family: str
    rank: int
    cartan_matrix: Matrix
    positive_roots: tuple[Root, ...]
    form: Matrix

    model_config = pydantic.ConfigDict(frozen=True)

    @pydantic.model_validator(mode='after')
    def check_cartan_matrix(self) -> Self:
        c = self.cartan_matrix
        for i in range(self.rank):
            if c[i][i] != 2:
                raise ValueError(f'diagonal entry {i + 1} is {c[i][i]}, not 2')
            for j in range(self.rank):
                if i != j and c[i][j] > 0:
                    raise ValueError(
                        f'off-diagonal entry ({i + 1},{j + 1}) > 0',
                    )
        return self

    @property
    def cartan_type(self) -> str:
        return f'{self.family}{self.rank}'

    @property
    def cartan(self) -> numpy.ndarray:
        return numpy.array(self.cartan_matrix, dtype=numpy.int64)

    @property
    def gram(self) -> numpy.ndarray:
        return numpy.array(self.form, dtype=numpy.int64)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(
            tuple(int(i == j) for j in range(self.rank))
            for i in range(self.rank)
        )

    @property
    def negative_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(-x for x in root) for root in self.positive_roots)

    @property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + self.negative_roots

    def inner(self, x: Iterable[int], y: Iterable[int]) -> int:
        return int(numpy.array(tuple(x)) @ self.gram @ numpy.array(tuple(y)))

    def coroot_pairing(
            self,
            root: Iterable[int],
            coroot_of: Iterable[int],
    ) -> fractions.Fraction:
        """<root, beta^vee> = 2 (root, beta) / (beta, beta)."""
        beta = tuple(coroot_of)
        return fractions.Fraction(
            2 * self.inner(root, beta), self.inner(beta, beta),
        )

    def height(self, root: Iterable[int]) -> int:
        return sum(root)

    @property
    def rho(self) -> tuple[fractions.Fraction, ...]:
        """Half the sum of the positive roots."""
        return tuple(
            fractions.Fraction(sum(column), 2)
            for column in zip(*self.positive_roots)
        )

    def is_positive(self, root: Iterable[int]) -> bool:
        return tuple(root) in self._positive_set

    def is_negative(self, root: Iterable[int]) -> bool:
        return tuple(-x for x in root) in self._positive_set

    @property
    def _positive_set(self) -> frozenset[Root]:
        return frozenset(self.positive_roots)

    def identity(self) -> WeylElement:
        return WeylElement(
            word=(), matrix=_as_matrix(numpy.eye(self.rank, dtype=int)),
        )

    def subsystem(self, subset: Iterable[int]) -> tuple[Root, ...]:
        """Positive roots supported on the given simple indices (1-based)."""
        keep = {i - 1 for i in subset}
        return tuple(
            root for root in self.positive_roots
            if all(x == 0 for k, x in enumerate(root) if k not in keep)
        )


def parse_cartan_type(text: str) -> tuple[str, int]:
    match = _CARTAN_TYPE.match(text)
    if match is None:
        raise UnsupportedCartanType(text, 0, 'expected e.g. "A2" or "B3"')
    return match.group(1).upper(), int(match.group(2))


def _dynkin_cartan(family: str, rank: int) -> numpy.ndarray:
    c = 2 * numpy.eye(rank, dtype=numpy.int64)

    def bond(i: int, j: int, ij: int = -1, ji: int = -1) -> None:
        c[i - 1, j - 1] = ij
        c[j - 1, i - 1] = ji

    if family in {'A', 'B', 'C'}:
        for i in range(1, rank):
            bond(i, i + 1)
        if family == 'B':
            # alpha_r short
            bond(rank - 1, rank, ij=-1, ji=-2)
        elif family == 'C':
            # alpha_r long
            bond(rank - 1, rank, ij=-2, ji=-1)
    elif family == 'D':
        for i in range(1, rank - 1):
            bond(i, i + 1)
        bond(rank - 2, rank)
    elif family == 'E':
        bond(1, 3)
        bond(2, 4)
        for i in range(3, rank):
            bond(i, i + 1)
    elif family == 'F':
        bond(1, 2)
        bond(2, 3, ij=-1, ji=-2)
        bond(3, 4)
    elif family == 'G':
        # alpha_1 short
        bond(1, 2, ij=-3, ji=-1)
    return c


def _symmetrizer(cartan: numpy.ndarray) -> list[int]:
    # d_i C_ij = d_j C_ji; propagate along the (connected) Dynkin graph
    rank = cartan.shape[0]
    d: list[fractions.Fraction | None] = [None] * rank
    d[0] = fractions.Fraction(1)
    queue = collections.deque([0])
    while queue:
        i = queue.popleft()
        di = d[i]
        assert di is not None
        for j in range(rank):
            if j != i and cartan[i, j] != 0 and d[j] is None:
                d[j] = di * int(cartan[i, j]) / int(cartan[j, i])
                queue.append(j)
    if any(x is None for x in d):
        raise UnsupportedCartanType('?', rank, 'Dynkin diagram not connected')
    smallest = min(x for x in d if x is not None)
    scaled = [x / smallest for x in d if x is not None]
    if any(x.denominator != 1 for x in scaled):
        raise UnsupportedCartanType(
            '?', rank, 'Cartan matrix not symmetrizable',
        )
    return [int(x) for x in scaled]


def _reflection_closure(cartan: numpy.ndarray) -> list[Root]:
    rank = cartan.shape[0]
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    queue = collections.deque(simple)
    while queue:
        beta = numpy.array(queue.popleft(), dtype=numpy.int64)
        for i in range(rank):
            image = beta.copy()
            image[i] -= int(cartan[i] @ beta)
            root = tuple(int(x) for x in image)
            if all(x >= 0 for x in root) and root not in found:
                found.add(root)
                queue.append(root)
    return sorted(found)


def build_root_system(
        family: str,
        rank: int,
        *,
        rank_cap: int = DEFAULT_RANK_CAP,
) -> RootSystem:
    """
    Build the root system of type ``family``/``rank`` in Bourbaki numbering.

    Roots are integer vectors in simple-root coordinates and the Cartan
    matrix follows the row-coroot convention
    ``C[i][j] = <alpha_j, alpha_i^vee>``, so ``s_i`` sends ``alpha_j`` to
    ``alpha_j - C[i][j] alpha_i``. B_r ends in a short root, C_r in a long
    one, the D_r fork is ``r-1, r`` and E_r has node 2 attached to node 4.

    ``sympy.liealgebras`` is not used for the roots themselves: it works in
    orthonormal epsilon coordinates, while Satake involutions act on simple
    roots and need integer simple-root coordinates. sympy still decides
    positive-definiteness of the symmetrized Cartan matrix.

    Args:
        family: Cartan family letter, A to G
        rank: number of simple roots
        rank_cap: largest rank accepted

    Raises:
        UnsupportedCartanType: the pair is not a finite type, or the rank
            exceeds ``rank_cap``
    """
    family = family.upper()
    if rank < 1 or rank > rank_cap:
        raise UnsupportedCartanType(family, rank, f'rank cap is {rank_cap}')
    if family in _EXCEPTIONAL:
        if rank not in _EXCEPTIONAL[family]:
            raise UnsupportedCartanType(family, rank)
    elif family in _MIN_RANK:
        if rank < _MIN_RANK[family]:
            raise UnsupportedCartanType(family, rank)
    else:
        raise UnsupportedCartanType(family, rank)

    cartan = _dynkin_cartan(family, rank)
    d = _symmetrizer(cartan)
    form = numpy.diag(d) @ cartan
    gram = sympy.Matrix(form.tolist())
    for k in range(1, rank + 1):
        if gram[:k, :k].det() <= 0:
            raise UnsupportedCartanType(family, rank, 'not of finite type')

    positive = _reflection_closure(cartan)
    logger.debug(
        'build_root_system(%s%d): positive_roots=%d', family, rank,
        len(positive),
    )
    return RootSystem(
        family=family,
        rank=rank,
        cartan_matrix=_as_matrix(cartan),
        positive_roots=tuple(positive),
        form=_as_matrix(form),
    )


def reflect(rs: RootSystem, i: int) -> WeylElement:
    if not 1 <= i <= rs.rank:
        raise ValueError(f'simple index {i} outside 1..{rs.rank}')
    matrix = numpy.eye(rs.rank, dtype=numpy.int64)
    matrix[i - 1] -= rs.cartan[i - 1]
    return WeylElement(word=(i,), matrix=_as_matrix(matrix))


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    element = rs.identity()
    for i in word:
        element = element * reflect(rs, i)
    return element


def inverse(rs: RootSystem, w: WeylElement) -> WeylElement:
    return from_word(rs, reversed(w.word))


def length(rs: RootSystem, w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    images = w.array @ numpy.array(rs.positive_roots, dtype=numpy.int64).T
    return int(sum(
        1 for column in images.T if rs.is_negative(int(x) for x in column)
    ))


def longest_element(rs: RootSystem, subset: Iterable[int]) -> WeylElement:
    """
    Longest element of the parabolic subgroup generated by ``subset``.

    Grows a reduced word one reflection at a time, always appending the
    smallest index whose simple root ``w`` still sends to a positive root;
    stops once every simple root of the subset is sent negative.
    """
    indices = sorted(set(subset))
    w = rs.identity()
    while True:
        for i in indices:
            if rs.is_positive(w.apply(rs.simple_roots[i - 1])):
                w = w * reflect(rs, i)
                break
        else:
            return w


def enumerate_weyl(
        rs: RootSystem,
        cap: int = DEFAULT_WEYL_CAP,
) -> Iterator[WeylElement]:
    """
    Breadth-first closure of the identity under right multiplication.

    Each element is yielded once, with the first word found for it; that
    word is reduced because breadth-first order visits words by length.
    """
    generators = [reflect(rs, i) for i in range(1, rs.rank + 1)]
    identity = rs.identity()
    seen = {identity.matrix}
    queue = collections.deque([identity])
    yield identity
    while queue:
        w = queue.popleft()
        for s in generators:
            v = w * s
            if v.matrix in seen:
                continue
            if len(seen) >= cap:
                raise WeylCapExceeded(cap, len(seen))
            seen.add(v.matrix)
            queue.append(v)
            yield v
    logger.debug('enumerate_weyl(%s): order=%d', rs.cartan_type, len(seen))


def kernel_dim(matrix: numpy.ndarray) -> int:
    """Exact nullity of an integer matrix."""
    return int(matrix.shape[1]) - int(sympy.Matrix(matrix.tolist()).rank())
