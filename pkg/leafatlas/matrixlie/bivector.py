import functools
import logging

import numpy
import pydantic

from ..config import Tolerances
from ..errors import NonUnitary
from .realization import ad_matrix
from .realization import frames
from .realization import MatrixRealForm
from .realization import root_vectors
from .realization import torus_size


logger = logging.getLogger(__name__)

# near-threshold singular values within this factor of the cutoff are flagged
BORDERLINE_FACTOR = 10.


@pydantic.dataclasses.dataclass(
    frozen=True, config=pydantic.ConfigDict(arbitrary_types_allowed=True),
)
class Bivector:
    """
    Antisymmetric coefficients over a frame, stored as the upper triangle.

    Fields:
        base_point: the unitary matrix the coefficients are attached to
        dim: size of the frame
        upper: strict upper-triangle entries in row-major order
    """

    base_point: numpy.ndarray
    dim: int
    upper: numpy.ndarray

    @classmethod
    def from_matrix(
            cls,
            base_point: numpy.ndarray,
            m: numpy.ndarray,
    ) -> 'Bivector':
        rows, cols = numpy.triu_indices(m.shape[0], k=1)
        return cls(
            base_point=base_point, dim=m.shape[0], upper=m[rows, cols].copy(),
        )

    @property
    def matrix(self) -> numpy.ndarray:
        m = numpy.zeros((self.dim, self.dim))
        rows, cols = numpy.triu_indices(self.dim, k=1)
        m[rows, cols] = self.upper
        return m - m.T

    def rank(self, cutoff: float = Tolerances().rank) -> tuple[int, bool]:
        """Numerical rank, and whether a singular value sat near the cutoff."""
        return numerical_rank(self.matrix, cutoff)

    def norm(self) -> float:
        return float(numpy.abs(self.upper).max(initial=0.))


@pydantic.dataclasses.dataclass(
    frozen=True, config=pydantic.ConfigDict(arbitrary_types_allowed=True),
)
class PoissonSample:
    """
    pi_0 evaluated at one point of U/K0.

    Fields:
        point: the unitary representative u of uK0
        bivector: pi_0 at uK0 over the i p0 frame
        rank: numerical rank of the bivector
        borderline: a singular value fell within a decade of the cutoff
    """

    point: numpy.ndarray
    bivector: Bivector
    rank: int
    borderline: bool


def numerical_rank(m: numpy.ndarray, cutoff: float) -> tuple[int, bool]:
    if m.size == 0:
        return 0, False
    singular = numpy.linalg.svd(m, compute_uv=False)
    threshold = cutoff * max(float(singular[0]), 1.)
    rank = int((singular > threshold).sum())
    borderline = bool(
        ((singular > threshold / BORDERLINE_FACTOR)
         & (singular < threshold * BORDERLINE_FACTOR)).any(),
    )
    return rank, borderline


def check_unitary(u: numpy.ndarray, tolerance: float) -> None:
    n = u.shape[0]
    residual = max(
        float(numpy.abs(u @ u.conj().T - numpy.eye(n)).max()),
        abs(complex(numpy.linalg.det(u)) - 1),
    )
    if residual > tolerance:
        raise NonUnitary(residual)


@functools.cache
def _lambda(n: int) -> numpy.ndarray:
    dim = n * n - 1
    m = numpy.zeros((dim, dim))
    offset = torus_size(n)
    for k, _ in enumerate(root_vectors(n)):
        x, y = offset + 2 * k, offset + 2 * k + 1
        m[x, y] = .25
        m[y, x] = -.25
    m.flags.writeable = False
    return m


def lambda_bivector(n: int) -> Bivector:
    """Lambda = 1/4 sum X_a ^ Y_a, at the identity."""
    return Bivector.from_matrix(numpy.eye(n, dtype=complex), _lambda(n))


def right_trivialized(u: numpy.ndarray) -> numpy.ndarray:
    """pi_U at u over basis_u, right-trivialized."""
    lam = _lambda(u.shape[0])
    a = ad_matrix(u)
    return lam - a @ lam @ a.T


def left_trivialized(u: numpy.ndarray) -> numpy.ndarray:
    lam = _lambda(u.shape[0])
    a_inv = ad_matrix(u.conj().T)
    return a_inv @ lam @ a_inv.T - lam


def pi_U_at(  # noqa: N802
        u: numpy.ndarray,
        tolerances: Tolerances = Tolerances(),
) -> Bivector:
    check_unitary(u, tolerances.unitary)
    return Bivector.from_matrix(u, right_trivialized(u))


def pi_0_matrix(u: numpy.ndarray, rf: MatrixRealForm) -> numpy.ndarray:
    """pi_0 at uK0, left-trivialized and restricted to the i p0 frame."""
    q = frames(rf).ip0
    return q.T @ left_trivialized(u) @ q


def pi_0_at(
        u: numpy.ndarray,
        rf: MatrixRealForm,
        tolerances: Tolerances = Tolerances(),
) -> Bivector:
    check_unitary(u, tolerances.unitary)
    return Bivector.from_matrix(u, pi_0_matrix(u, rf))


def sample_pi_0(
        u: numpy.ndarray,
        rf: MatrixRealForm,
        tolerances: Tolerances = Tolerances(),
) -> PoissonSample:
    bivector = pi_0_at(u, rf, tolerances)
    rank, borderline = bivector.rank(tolerances.rank)
    if borderline:
        logger.debug('sample_pi_0(%s): borderline rank %d', rf.label, rank)
    return PoissonSample(
        point=u,
        bivector=bivector,
        rank=rank,
        borderline=borderline,
    )
