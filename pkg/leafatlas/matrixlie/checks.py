import logging
from collections.abc import Callable
from collections.abc import Sequence

import numpy
import pydantic
import scipy.linalg
import scipy.stats

from ..config import Tolerances
from ..errors import ChartSingularity
from ..errors import NotHermitian
from .bivector import left_trivialized
from .bivector import numerical_rank
from .bivector import pi_0_matrix
from .bivector import right_trivialized
from .realization import ad_matrix
from .realization import an_basis
from .realization import coords
from .realization import frames
from .realization import from_coords
from .realization import gellmann_diagonal
from .realization import killing
from .realization import MatrixRealForm
from .realization import operator_matrix
from .realization import realify
from .realization import theta


logger = logging.getLogger(__name__)

Field = Callable[[numpy.ndarray], numpy.ndarray]


# Sampling


def spawn_rngs(
        seed: int,
        count: int,
        stream: int = 0,
) -> list[numpy.random.Generator]:
    """Independent generators, one per sample, all derived from ``seed``."""
    children = numpy.random.SeedSequence([seed, stream]).spawn(count)
    return [numpy.random.default_rng(child) for child in children]


def sample_unitary(n: int, rng: numpy.random.Generator) -> numpy.ndarray:
    u = scipy.stats.unitary_group.rvs(n, random_state=rng)
    return u / complex(numpy.linalg.det(u)) ** (1 / n)


def sample_sl(n: int, rng: numpy.random.Generator) -> numpy.ndarray:
    m = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    m /= numpy.sqrt(2)
    return m / complex(numpy.linalg.det(m)) ** (1 / n)


def sample_torus(n: int, rng: numpy.random.Generator) -> numpy.ndarray:
    angles = rng.uniform(-numpy.pi, numpy.pi, n - 1)
    return numpy.diag(numpy.exp(1j * numpy.append(angles, -angles.sum())))


def sample_k0(
        rf: MatrixRealForm,
        rng: numpy.random.Generator,
) -> numpy.ndarray:
    k0 = frames(rf).k0
    x = from_coords(rf.n, k0 @ rng.standard_normal(k0.shape[1]))
    return scipy.linalg.expm(x)


def _sup(x: numpy.ndarray) -> float:
    return float(numpy.abs(x).max(initial=0.))


# Structure of the realization


@pydantic.dataclasses.dataclass(frozen=True)
class Annihilator:
    distance: float
    annihilator_dim: int
    expected_dim: int


def annihilator_check(rf: MatrixRealForm) -> Annihilator:
    """
    Distance between the Im-Killing annihilator of k0 in a + n and
    a0 + n0 = (a + n) cap g0, as a projector difference.
    """
    n = rf.n
    an = an_basis(n)
    k0 = [from_coords(n, c) for c in frames(rf).k0.T]
    pairing = numpy.array([[killing(n, k, x).imag for x in an] for k in k0])
    annihilator = scipy.linalg.null_space(pairing)
    fixed = scipy.linalg.null_space(
        numpy.column_stack([realify(rf.tau(x) - x) for x in an]),
    )
    distance = float(numpy.linalg.norm(
        annihilator @ annihilator.T - fixed @ fixed.T, 2,
    ))
    return Annihilator(
        distance=distance,
        annihilator_dim=annihilator.shape[1],
        expected_dim=fixed.shape[1],
    )


def iwasawa_borel_check(rf: MatrixRealForm) -> tuple[int, float]:
    """
    dim((a + n) cap g0), to be compared with dim p0, and the largest
    off-diagonal entry of tau(h), theta(h) over the diagonal Cartan.
    """
    an = an_basis(rf.n)
    fixed = scipy.linalg.null_space(
        numpy.column_stack([realify(rf.tau(x) - x) for x in an]),
    )
    off_diagonal = 0.
    for h in gellmann_diagonal(rf.n):
        for image in (rf.tau(h), theta(h), rf.tau(1j * h)):
            off_diagonal = max(
                off_diagonal, _sup(image - numpy.diag(numpy.diag(image))),
            )
    return fixed.shape[1], off_diagonal


def involution_residual(
        rf: MatrixRealForm,
        rngs: Sequence[numpy.random.Generator],
) -> float:
    """tau^2 = 1, theta^2 = 1 and tau theta = theta tau on random elements."""
    worst = 0.
    for rng in rngs:
        x = rng.standard_normal((rf.n, rf.n)) \
            + 1j * rng.standard_normal((rf.n, rf.n))
        x -= numpy.trace(x) / rf.n * numpy.eye(rf.n)
        worst = max(
            worst,
            _sup(rf.tau(rf.tau(x)) - x),
            _sup(theta(theta(x)) - x),
            _sup(rf.tau(theta(x)) - theta(rf.tau(x))),
        )
    return worst


# Invariance of pi_U and pi_0


def invariance_residuals(
        rf: MatrixRealForm,
        rngs: Sequence[numpy.random.Generator],
) -> dict[str, float]:
    n = rf.n
    out = {
        'identity': _sup(right_trivialized(numpy.eye(n, dtype=complex))),
        'left_torus': 0.,
        'right_torus': 0.,
        'multiplicativity': 0.,
        'coset': 0.,
    }
    q = frames(rf).ip0
    for rng in rngs:
        u, v = sample_unitary(n, rng), sample_unitary(n, rng)
        t = sample_torus(n, rng)
        k = sample_k0(rf, rng)
        ru, rv = right_trivialized(u), right_trivialized(v)
        at, au = ad_matrix(t), ad_matrix(u)

        out['left_torus'] = max(
            out['left_torus'], _sup(right_trivialized(t @ u) - at @ ru @ at.T),
        )
        out['right_torus'] = max(
            out['right_torus'], _sup(right_trivialized(u @ t) - ru),
        )
        out['multiplicativity'] = max(
            out['multiplicativity'],
            _sup(right_trivialized(u @ v) - (au @ rv @ au.T + ru)),
        )
        shift = q.T @ ad_matrix(k.conj().T) @ q
        out['coset'] = max(
            out['coset'],
            _sup(
                pi_0_matrix(u @ k, rf)
                - shift @ pi_0_matrix(u, rf) @ shift.T,
            ),
        )
    return out


# Jacobi identity


def jacobiator(field: Field, x: numpy.ndarray, h: float) -> float:
    """
    Largest component of the cyclic sum pi^il d_l pi^jk + (cyclic) at x,
    with second-order central differences of step h.
    """
    pi = field(x)
    steps = numpy.eye(x.shape[0]) * h
    dpi = numpy.array([
        (field(x + step) - field(x - step)) / (2 * h) for step in steps
    ])
    jac = (
        numpy.einsum('il,ljk->ijk', pi, dpi)
        + numpy.einsum('jl,lki->ijk', pi, dpi)
        + numpy.einsum('kl,lij->ijk', pi, dpi)
    )
    return _sup(jac)


def exponential_chart(
        rf: MatrixRealForm,
        u0: numpy.ndarray,
        tolerances: Tolerances = Tolerances(),
) -> Field:
    """pi_0 in the chart x -> u0 exp(sum x_k Z_k) K0, Z_k the i p0 frame."""
    n = rf.n
    q = frames(rf).ip0
    generators = [from_coords(n, c) for c in q.T]

    def field(x: numpy.ndarray) -> numpy.ndarray:
        s = numpy.einsum('k,kij->ij', x, numpy.array(generators))
        back = scipy.linalg.expm(-s)
        jacobian = numpy.column_stack([
            q.T @ coords(n, back @ scipy.linalg.expm_frechet(
                s, z, compute_expm=False,
            ))
            for z in generators
        ])
        det = abs(float(numpy.linalg.det(jacobian)))
        if det < tolerances.chart:
            raise ChartSingularity(det)
        inverse = numpy.linalg.inv(jacobian)
        p = pi_0_matrix(u0 @ scipy.linalg.expm(s), rf)
        return inverse @ p @ inverse.T

    return field


def jacobi_check(
        rf: MatrixRealForm,
        u0: numpy.ndarray,
        tolerances: Tolerances = Tolerances(),
) -> float:
    field = exponential_chart(rf, u0, tolerances)
    dim = frames(rf).ip0.shape[1]
    return jacobiator(field, numpy.zeros(dim), tolerances.fd_step)


# SU(2)/SO(2)


def chart_su2(
        u: numpy.ndarray,
        tolerances: Tolerances = Tolerances(),
) -> complex:
    """z = (-Im a + i Im b) / (Re a + i Re b) for u = [[a, b], [-b*, a*]]."""
    a, b = complex(u[0, 0]), complex(u[0, 1])
    denominator = complex(a.real, b.real)
    if abs(denominator) < tolerances.chart:
        raise ChartSingularity(abs(denominator))
    return complex(-a.imag, b.imag) / denominator


def equator_chart(
        u: numpy.ndarray,
        tolerances: Tolerances = Tolerances(),
) -> complex:
    """
    Stereographic coordinate of Ad_u X (X spanning so(2)) from the +H pole.

    The equator ``|w| = 1`` is the zero set of pi_0 and ``w(e) = 1``.
    """
    a, b = complex(u[0, 0]), complex(u[0, 1])
    denominator = 1 - 2 * (a * b.conjugate()).imag
    if abs(denominator) < tolerances.chart:
        raise ChartSingularity(abs(denominator))
    return (a * a + b * b) / denominator


def _equator_derivatives(
        u: numpy.ndarray,
        rf: MatrixRealForm,
) -> tuple[complex, numpy.ndarray]:
    a, b = complex(u[0, 0]), complex(u[0, 1])
    num = a * a + b * b
    den = 1 - 2 * (a * b.conjugate()).imag
    out = []
    for c in frames(rf).ip0.T:
        du = u @ from_coords(rf.n, c)
        da, db = complex(du[0, 0]), complex(du[0, 1])
        dnum = 2 * a * da + 2 * b * db
        dden = -2 * (da * b.conjugate() + a * db.conjugate()).imag
        out.append((dnum * den - num * dden) / den ** 2)
    return num / den, numpy.array(out)


def closed_form_su2(w: complex) -> float:
    """
    The dx ^ dy coefficient of pi_0 at w = x + iy, i.e. -1/8 of
    i (1 - |w|^4) d/dw ^ d/dw*.
    """
    return (1 - abs(w) ** 4) / 16


def example_su2(
        u: numpy.ndarray,
        rf: MatrixRealForm,
) -> tuple[complex, float, float]:
    """
    Compare pi_0 at uK0 with the SU(2)/SO(2) closed form.

    The comparison runs in ``equator_chart``, not ``chart_su2``: the latter
    moves under right multiplication by K0 (``z -> z e^{-2it}``), so it is
    not a coordinate on U/K0. In the stereographic chart the dx ^ dy
    coefficient of pi_0 is ``(1 - |w|^4) / 16``, which is -1/8 times the
    coefficient of ``i (1 - |w|^4) d/dw ^ d/dw*``. The error is divided by
    ``(1 + |w|^2)^2 / 16`` so points near infinity are not over-weighted.

    Returns:
        chart point, transported coefficient, and relative error
    """
    w, dw = _equator_derivatives(u, rf)
    coefficient = float(dw.real @ pi_0_matrix(u, rf) @ dw.imag)
    scale = (1 + abs(w) ** 2) ** 2 / 16
    return w, coefficient, abs(coefficient - closed_form_su2(w)) / scale


def equator_point(phi: float) -> numpy.ndarray:
    """diag(e^{i phi}, e^{-i phi}), sent to w = e^{2 i phi}."""
    return numpy.diag([numpy.exp(1j * phi), numpy.exp(-1j * phi)])


def slice_su2(z: complex) -> numpy.ndarray:
    """The AN-leaf slice (1 / sqrt(1 + |z|^2)) [[z, 1], [-1, z*]]."""
    return numpy.array(
        [[z, 1], [-1, z.conjugate()]], dtype=complex,
    ) / numpy.sqrt(1 + abs(z) ** 2)


def hemisphere(u: numpy.ndarray, tolerance: float = 1e-12) -> int:
    """+1 north, -1 south, 0 on the equator."""
    height = 2 * (complex(u[0, 0]) * complex(u[0, 1]).conjugate()).imag
    if abs(height) <= tolerance:
        return 0
    return 1 if height > 0 else -1


# Hermitian symmetric case


@pydantic.dataclasses.dataclass(frozen=True)
class HermitianFit:
    b: float
    residual: float
    refit_b: float
    inv_rank: int


def _center_of_k0(rf: MatrixRealForm) -> numpy.ndarray:
    n = rf.n
    k0 = frames(rf).k0
    elements = [from_coords(n, c) for c in k0.T]
    rows = [
        numpy.column_stack([coords(n, z @ k - k @ z) for z in elements])
        for k in elements
    ]
    null = scipy.linalg.null_space(numpy.vstack(rows))
    center = k0 @ null[:, 0]
    center /= numpy.linalg.norm(center)
    pivot = center[numpy.argmax(numpy.abs(center) > 1e-8)]
    return from_coords(n, center if pivot > 0 else -center)


def _parabolic_frame(
        rf: MatrixRealForm,
) -> tuple[numpy.ndarray, numpy.ndarray]:
    # u0 diagonalizes J, so u0 K0 u0^-1 is block diagonal: U cap P
    _, vectors = numpy.linalg.eigh(rf.signature)
    u0 = vectors.T.astype(complex)
    if numpy.linalg.det(u0).real < 0:
        u0[0] *= -1
    return u0, ad_matrix(u0) @ frames(rf).ip0


def pi_infinity(
        u: numpy.ndarray,
        rf: MatrixRealForm,
) -> numpy.ndarray:
    u0, frame = _parabolic_frame(rf)
    return frame.T @ left_trivialized(u @ u0.conj().T) @ frame


def pi_invariant(rf: MatrixRealForm) -> numpy.ndarray:
    """The U-invariant bivector ad_Z on i p0, Z spanning the center of k0."""
    z = _center_of_k0(rf)
    q = frames(rf).ip0
    return q.T @ operator_matrix(rf.n, lambda x: z @ x - x @ z) @ q


def _fit(
        rf: MatrixRealForm,
        points: Sequence[numpy.ndarray],
        invariant: numpy.ndarray,
) -> tuple[float, float]:
    differences = [pi_0_matrix(u, rf) - pi_infinity(u, rf) for u in points]
    norm = float((invariant * invariant).sum())
    b = sum(float((d * invariant).sum()) for d in differences)
    b /= norm * len(differences)
    residual = max(_sup(d - b * invariant) for d in differences)
    return b, residual


def hermitian_fit(
        rf: MatrixRealForm,
        points: Sequence[numpy.ndarray],
        refit_points: Sequence[numpy.ndarray],
        tolerances: Tolerances = Tolerances(),
) -> HermitianFit:
    """Least-squares b in pi_0 = pi_infinity + b pi_inv, fitted twice."""
    if not rf.is_hermitian:
        raise NotHermitian(rf.label)
    invariant = pi_invariant(rf)
    b, residual = _fit(rf, points, invariant)
    refit_b, refit_residual = _fit(rf, refit_points, invariant)
    inv_rank, _ = numerical_rank(invariant, tolerances.rank)
    logger.debug(
        'hermitian_fit(%s): b=%.12g refit=%.12g residual=%.3e',
        rf.label, b, refit_b, max(residual, refit_residual),
    )
    return HermitianFit(
        b=b,
        residual=max(residual, refit_residual),
        refit_b=refit_b,
        inv_rank=inv_rank,
    )
