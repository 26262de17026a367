import enum
import functools
import logging
import re
from collections.abc import Callable
from typing import assert_never
from typing import Self

import numpy
import pydantic
import scipy.linalg

from ..errors import NoRealization
from ..rootsys import Matrix


logger = logging.getLogger(__name__)

DEFAULT_MAX_N = 4

_SPLIT = re.compile(r'^sl\((\d+),R\)$')
_UNITARY = re.compile(r'^su\((\d+),(\d+)\)$')


class Kind(str, enum.Enum):
    split = 'sl(n,R)'
    unitary = 'su(p,q)'

    def __str__(self) -> str:
        return self.value


class MatrixRealForm(pydantic.BaseModel):
    """
    A real form ``g0`` inside ``sl(n, C)``, with ``u = su(n)``.

    ``sl(n,R)`` uses ``tau(X) = conj(X)``; ``su(p,q)`` uses
    ``tau(X) = -J X^H J`` where J pairs the first q and last q indices along
    the anti-diagonal around a (p - q) identity block. With these choices
    the upper-triangular Borel is Iwasawa for ``g0``.

    Fields:
        label: the catalog label, e.g. ``su(2,1)``
        kind: split or unitary
        n: matrix size
        p: signature, unitary kind only
        q: signature, unitary kind only
    """

    label: str
    kind: Kind
    n: int
    p: int = 0
    q: int = 0

    model_config = pydantic.ConfigDict(frozen=True)

    @pydantic.model_validator(mode='after')
    def check_signature(self) -> Self:
        if self.n < 2:
            raise ValueError(f'n must be at least 2, got {self.n}')
        if self.kind == Kind.unitary:
            if self.p + self.q != self.n or not self.p >= self.q >= 1:
                raise ValueError(
                    f'su(p,q) needs p >= q >= 1 and p + q = n, got '
                    f'p={self.p} q={self.q} n={self.n}',
                )
        return self

    @property
    def dim(self) -> int:
        return self.n * self.n - 1

    @property
    def is_hermitian(self) -> bool:
        return self.kind == Kind.unitary

    @property
    def signature(self) -> numpy.ndarray:
        """J, a real symmetric involution; the identity for sl(n,R)."""
        j = numpy.eye(self.n)
        if self.kind == Kind.unitary:
            for i in range(self.q):
                k = self.n - 1 - i
                j[i, i] = j[k, k] = 0.
                j[i, k] = j[k, i] = 1.
        return j

    def tau(self, x: numpy.ndarray) -> numpy.ndarray:
        if self.kind == Kind.split:
            return x.conj()
        if self.kind == Kind.unitary:
            j = self.signature
            return -j @ x.conj().T @ j
        assert_never(self.kind)

    def tau_group(self, g: numpy.ndarray) -> numpy.ndarray:
        if self.kind == Kind.split:
            return g.conj()
        if self.kind == Kind.unitary:
            j = self.signature
            return j @ numpy.linalg.inv(g.conj().T) @ j
        assert_never(self.kind)


def theta(x: numpy.ndarray) -> numpy.ndarray:
    return -x.conj().T


def parse_realization(
        label: str,
        max_n: int = DEFAULT_MAX_N,
) -> MatrixRealForm:
    label = label.replace(' ', '')
    if (match := _SPLIT.match(label)) is not None:
        n = int(match.group(1))
        if 2 <= n <= max_n:
            return MatrixRealForm(label=label, kind=Kind.split, n=n)
    elif (match := _UNITARY.match(label)) is not None:
        p, q = int(match.group(1)), int(match.group(2))
        if p >= q >= 1 and p + q <= max_n:
            return MatrixRealForm(
                label=label, kind=Kind.unitary, n=p + q, p=p, q=q,
            )
    raise NoRealization(label)


def killing(n: int, x: numpy.ndarray, y: numpy.ndarray) -> complex:
    """<<X, Y>> = 2n tr(XY)."""
    return complex(2 * n * numpy.trace(x @ y))


@pydantic.dataclasses.dataclass(
    frozen=True, config=pydantic.ConfigDict(arbitrary_types_allowed=True),
)
class RootVector:
    """
    Normalized root vectors for the positive root ``e_i - e_j`` (i < j).

    Fields:
        i: row index, 0-based
        j: column index, 0-based
        e: E_a
        e_neg: E_-a = -theta(E_a)
        x: X_a = E_a - E_-a
        y: Y_a = i (E_a + E_-a)
    """

    i: int
    j: int
    e: numpy.ndarray
    e_neg: numpy.ndarray
    x: numpy.ndarray
    y: numpy.ndarray


def elementary(n: int, i: int, j: int) -> numpy.ndarray:
    m = numpy.zeros((n, n), dtype=complex)
    m[i, j] = 1.
    return m


def root_vectors(n: int) -> list[RootVector]:
    """E_a = c E_ij with c = 1/sqrt(2n), so <<E_a, theta(E_a)>> = -1."""
    c =1 / numpy.sqrt(2 * n)
    vectors = []
    for i in range(n):
        for j in range(i + 1, n):
            e = c * elementary(n, i, j)
            e_neg = -theta(e)
            vectors.append(RootVector(
                i=i, j=j, e=e, e_neg=e_neg, x=e - e_neg, y=1j * (e + e_neg),
            ))
    return vectors


def gellmann_diagonal(n: int) -> list[numpy.ndarray]:
    """Real traceless diagonals h_k with tr h_k^2 = 1."""
    out = []
    for k in range(1, n):
        d = numpy.zeros(n)
        d[:k] = 1.
        d[k] = -k
        out.append(numpy.diag(d / numpy.sqrt(k * (k + 1))).astype(complex))
    return out


@functools.cache
def basis_u(n: int) -> numpy.ndarray:
    """
    Array of shape (n^2 - 1, n, n): the ordered real basis of su(n).

    ``i h_k / sqrt(n)`` first, then ``X_a, Y_a`` for i < j in lexicographic
    order. The basis is orthogonal with ``-<<e, e>> = 2``, so
    ``coords(Z)_b = Re(-n tr(Z e_b))``.
    """
    torus = [1j * h / numpy.sqrt(n) for h in gellmann_diagonal(n)]
    roots = [m for rv in root_vectors(n) for m in (rv.x, rv.y)]
    basis = numpy.array(torus + roots)
    basis.flags.writeable = False
    return basis


def torus_size(n: int) -> int:
    return n - 1


def coords(n: int, z: numpy.ndarray) -> numpy.ndarray:
    return numpy.real(-n * numpy.einsum('ij,bji->b', z, basis_u(n)))


def from_coords(n: int, c: numpy.ndarray) -> numpy.ndarray:
    return numpy.einsum('b,bij->ij', c, basis_u(n))


def operator_matrix(
        n: int,
        f: Callable[[numpy.ndarray], numpy.ndarray],
) -> numpy.ndarray:
    """Matrix of a real-linear map of su(n) into itself, in basis_u."""
    return numpy.column_stack([coords(n, f(e)) for e in basis_u(n)])


def ad_matrix(u: numpy.ndarray) -> numpy.ndarray:
    """Ad_u on basis_u coordinates; orthogonal for unitary u."""
    n = u.shape[0]
    conjugated = u[None] @ basis_u(n) @ u.conj().T[None]
    return numpy.real(
        -n * numpy.einsum('bij,cji->cb', conjugated, basis_u(n)),
    )


def pr_u(z: numpy.ndarray) -> numpy.ndarray:
    """Component in su(n) of the splitting sl(n,C) = su(n) + (a + n)."""
    lower = numpy.tril(z, -1)
    return lower - lower.conj().T + 1j * numpy.diag(numpy.imag(numpy.diag(z)))


def an_basis(n: int) -> list[numpy.ndarray]:
    """Real basis of a + n: real traceless diagonals, then E_ij and iE_ij."""
    out = list(gellmann_diagonal(n))
    for i in range(n):
        for j in range(i + 1, n):
            out += [elementary(n, i, j), 1j * elementary(n, i, j)]
    return out


def realify(x: numpy.ndarray) -> numpy.ndarray:
    return numpy.concatenate([x.real.ravel(), x.imag.ravel()])


@pydantic.dataclasses.dataclass(
    frozen=True, config=pydantic.ConfigDict(arbitrary_types_allowed=True),
)
class Frames:
    """
    Sub-bases of su(n) adapted to a real form, in basis_u coordinates.

    Fields:
        tau: matrix of tau on su(n)
        k0: orthonormal columns spanning k0 = su(n) cap g0
        ip0: orthonormal columns spanning i p0
    """

    tau: numpy.ndarray
    k0: numpy.ndarray
    ip0: numpy.ndarray

    def g0_basis(self, n: int) -> list[numpy.ndarray]:
        ks = [from_coords(n, c) for c in self.k0.T]
        ps = [1j * from_coords(n, c) for c in self.ip0.T]
        return ks + ps


@functools.cache
def frames(rf: MatrixRealForm) -> Frames:
    tau = operator_matrix(rf.n, rf.tau)
    identity = numpy.eye(rf.dim)
    k0 = scipy.linalg.orth((identity + tau) / 2)
    ip0 = scipy.linalg.orth((identity - tau) / 2)
    logger.debug(
        'frames(%s): dim_k0=%d dim_p0=%d', rf.label, k0.shape[1], ip0.shape[1],
    )
    return Frames(tau=tau, k0=k0, ip0=ip0)


def epsilon_difference(a: int, b: int, rank: int) -> tuple[int, ...]:
    """Simple-root coordinates of e_a - e_b in type A (0-based a, b)."""
    out = [0] * rank
    lo, hi, sign = (a, b, 1) if a < b else (b, a, -1)
    for k in range(lo, hi):
        out[k] = sign
    return tuple(out)


def weyl_from_permutation(perm: tuple[int, ...]) -> Matrix:
    """The Weyl element ``e_c -> e_perm[c]`` as a simple-root matrix."""
    rank = len(perm) - 1
    columns = [
        epsilon_difference(perm[k], perm[k + 1], rank) for k in range(rank)
    ]
    return tuple(tuple(col[r] for col in columns) for r in range(rank))


def torus_involution(rf: MatrixRealForm) -> Matrix:
    """tau* on simple roots, read off tau(E_{k,k+1})."""
    rank = rf.n - 1
    columns = []
    for k in range(rank):
        image = rf.tau(elementary(rf.n, k, k + 1))
        a, b = numpy.unravel_index(numpy.argmax(numpy.abs(image)), image.shape)
        columns.append(epsilon_difference(int(a), int(b), rank))
    return tuple(tuple(col[r] for col in columns) for r in range(rank))
