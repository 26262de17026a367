import itertools
import logging
from collections.abc import Iterator

import numpy
import pydantic
import scipy.linalg

from ..config import Tolerances
from ..errors import IllConditioned
from ..errors import NoRepresentativeFound
from ..rootsys import Matrix
from ..rootsys import WeylElement
from .bivector import numerical_rank
from .bivector import pi_0_matrix
from .realization import ad_matrix
from .realization import coords
from .realization import frames
from .realization import MatrixRealForm
from .realization import pr_u
from .realization import torus_size
from .realization import weyl_from_permutation


logger = logging.getLogger(__name__)

DEFAULT_MAX_CANDIDATES = 5000

# (generator, sign) choices for a Cayley factor exp(sign * pi/4 * G)
_CAYLEY = (('sym', 1), ('sym', -1), ('skew', 1), ('skew', -1))


def iwasawa(
        m: numpy.ndarray,
        tolerances: Tolerances = Tolerances(),
) -> tuple[numpy.ndarray, numpy.ndarray]:
    """
    Split ``m = b u1`` with b upper triangular, positive real diagonal, and
    u1 unitary.

    Uses an RQ factorization and moves the diagonal phases of R into Q.
    """
    condition = float(numpy.linalg.cond(m))
    if not numpy.isfinite(condition) or condition > tolerances.condition:
        raise IllConditioned(condition)
    r, q = scipy.linalg.rq(m)
    diagonal = numpy.diag(r)
    phases = diagonal / numpy.abs(diagonal)
    b = r / phases[None, :]
    u1 = phases[:, None] * q
    return b, u1


def g_act(
        u: numpy.ndarray,
        g: numpy.ndarray,
        tolerances: Tolerances = Tolerances(),
) -> numpy.ndarray:
    """u^g, the unitary factor of ug."""
    return iwasawa(u @ g, tolerances)[1]


def _g0_images(u: numpy.ndarray, rf: MatrixRealForm) -> list[numpy.ndarray]:
    # d/ds u^{exp(sX)} right-trivialized, one per basis element of g0
    return [
        pr_u(u @ x @ u.conj().T) for x in frames(rf).g0_basis(rf.n)
    ]


def orbit_tangents(u: numpy.ndarray, rf: MatrixRealForm) -> numpy.ndarray:
    """Columns: tangents of the G0-orbit at u, pushed to U/K0, in i p0."""
    back = ad_matrix(u.conj().T)
    q = frames(rf).ip0
    columns = [q.T @ back @ coords(rf.n, z) for z in _g0_images(u, rf)]
    return numpy.column_stack(columns)


def _span(m: numpy.ndarray, cutoff: float) -> numpy.ndarray:
    if m.size == 0:
        return m
    left, singular, _ = numpy.linalg.svd(m)
    threshold = cutoff * max(float(singular[0]), 1.)
    return left[:, :int((singular > threshold).sum())]


@pydantic.dataclasses.dataclass(frozen=True)
class Tangency:
    residual: float
    pi_dim: int
    orbit_dim: int


def leaf_tangency_check(
        u: numpy.ndarray,
        rf: MatrixRealForm,
        tolerances: Tolerances = Tolerances(),
) -> Tangency:
    """Compare the image of pi_0 at uK0 with the projected G0-orbit tangent."""
    image = _span(pi_0_matrix(u, rf), tolerances.rank)
    orbit = _span(orbit_tangents(u, rf), tolerances.rank)
    pi_dim, orbit_dim = image.shape[1], orbit.shape[1]
    if pi_dim != orbit_dim:
        residual = 1.
    elif pi_dim == 0:
        residual = 0.
    else:
        angles = scipy.linalg.subspace_angles(image, orbit)
        residual = float(numpy.sin(angles.max()))
    return Tangency(residual=residual, pi_dim=pi_dim, orbit_dim=orbit_dim)


def stabilizer_dim(
        u: numpy.ndarray,
        rf: MatrixRealForm,
        *,
        with_torus: bool = False,
        tolerances: Tolerances = Tolerances(),
) -> int:
    """
    dim {X in g0 : Ad_u X in a + n}, or in t + a + n with ``with_torus``.
    """
    columns = [coords(rf.n, z) for z in _g0_images(u, rf)]
    m = numpy.column_stack(columns)
    if with_torus:
        m = m[torus_size(rf.n):]
    rank, _ = numerical_rank(m, tolerances.stabilizer)
    return m.shape[1] - rank


def _matchings(
        nodes: tuple[int, ...],
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Every set of disjoint pairs, the empty one first."""
    if len(nodes) < 2:
        yield ()
        return
    first, rest = nodes[0], nodes[1:]
    yield from _matchings(rest)
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in _matchings(remaining):
            yield ((first, partner),) + tail


def _cayley(n: int, i: int, j: int, kind: str, sign: int) -> numpy.ndarray:
    g = numpy.zeros((n, n), dtype=complex)
    if kind == 'sym':
        g[i, j] = g[j, i] = 1j
    else:
        g[i, j], g[j, i] = 1., -1.
    return scipy.linalg.expm(sign * numpy.pi / 4 * g)


def _permutation(n: int, perm: tuple[int, ...]) -> numpy.ndarray:
    p = numpy.zeros((n, n), dtype=complex)
    for c, r in enumerate(perm):
        p[r, c] = 1.
    if numpy.linalg.det(p).real < 0:
        p[:, 0] *= -1
    return p


def _candidates(n: int) -> Iterator[numpy.ndarray]:
    by_size = sorted(_matchings(tuple(range(n))), key=len)
    for pairs in by_size:
        for perm in itertools.permutations(range(n)):
            p = _permutation(n, perm)
            for choice in itertools.product(_CAYLEY, repeat=len(pairs)):
                c = numpy.eye(n, dtype=complex)
                for (i, j), (kind, sign) in zip(pairs, choice):
                    c = c @ _cayley(n, i, j, kind, sign)
                yield p @ c


def psi_of(
        u: numpy.ndarray,
        rf: MatrixRealForm,
        tolerance: float,
) -> Matrix | None:
    """The Weyl element of ``u tau(u)^-1`` when it normalizes the torus."""
    m = u @ numpy.linalg.inv(rf.tau_group(u))
    perm = tuple(int(r) for r in numpy.argmax(numpy.abs(m), axis=0))
    if sorted(perm) != list(range(rf.n)):
        return None
    mask = numpy.zeros(m.shape, dtype=bool)
    for c, r in enumerate(perm):
        mask[r, c] = True
    if numpy.abs(m[~mask]).max(initial=0.) > tolerance:
        return None
    return weyl_from_permutation(perm)


def representative_for(
        rf: MatrixRealForm,
        psi: WeylElement,
        *,
        max_candidates: int = DEFAULT_MAX_CANDIDATES,
        tolerances: Tolerances = Tolerances(),
) -> numpy.ndarray:
    """
    A unitary u whose ``u tau(u)^-1`` lies in the torus normalizer and
    induces psi.

    Searches permutation matrices times products of Cayley factors on
    disjoint index pairs; the first match is returned.
    """
    tried = 0
    for u in _candidates(rf.n):
        if tried >= max_candidates:
            break
        tried += 1
        if psi_of(u, rf, tolerances.unitary) == psi.matrix:
            logger.debug(
                'representative_for(%s, %s): found after %d candidates',
                rf.label, psi, tried,
            )
            return u
    raise NoRepresentativeFound(psi.word, tried)
