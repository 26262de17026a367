import collections
import enum
import logging
from collections.abc import Iterable

import numpy

from . import __version__
from . import schemas
from .atlas import classify
from .atlas import OrbitClass
from .config import Tolerances
from .errors import ChartSingularity
from .errors import IllConditioned
from .errors import NoRepresentativeFound
from .matrixlie import action
from .matrixlie import checks
from .matrixlie.bivector import sample_pi_0
from .matrixlie.realization import DEFAULT_MAX_N
from .matrixlie.realization import Kind
from .matrixlie.realization import MatrixRealForm
from .matrixlie.realization import parse_realization
from .matrixlie.realization import torus_involution
from .rootsys import DEFAULT_RANK_CAP
from .rootsys import DEFAULT_WEYL_CAP
from .satake import RealFormData
from .satake import real_form
from .satake import SatakeDiagram


logger = logging.getLogger(__name__)

Check = schemas.CheckResult

# the Jacobiator is expensive; a handful of chart points is enough
JACOBI_POINTS = 10
EQUATOR_POINTS = 16


class Stream(int, enum.Enum):
    """
    One seeded stream per group of checks, spawned per sample from the
    master seed; a report depends on (form, samples, seed, tolerances) only.
    """

    ranks = 0
    iwasawa = 1
    action = 2
    invariance = 3
    jacobi = 4
    example = 5
    hermitian = 6
    hermitian_refit = 7
    involution = 8


def _rngs(
        seed: int,
        count: int,
        stream: Stream,
) -> list[numpy.random.Generator]:
    return checks.spawn_rngs(seed, count, stream.value)


def _skip(name: str, detail: str) -> schemas.CheckResult:
    return Check(name=name, status=schemas.CheckStatus.skipped, detail=detail)


def realization_checks(
        rf: RealFormData,
        mrf: MatrixRealForm,
        seed: int,
        tolerances: Tolerances,
) -> list[schemas.CheckResult]:
    torus = torus_involution(mrf)
    dim_fixed, off_diagonal = checks.iwasawa_borel_check(mrf)
    annihilator = checks.annihilator_check(mrf)
    involutions = checks.involution_residual(
        mrf, _rngs(seed, 8, Stream.involution),
    )
    same = torus == rf.tau_star
    return [
        Check(
            name='realization.tau_star',
            status=(
                schemas.CheckStatus.passed if same
                else schemas.CheckStatus.failed
            ),
            detail=f'realization {torus}, catalog {rf.tau_star}',
        ),
        Check.within('realization.involutions', involutions, tolerances.exact),
        Check.equal('realization.iwasawa_borel.dim', dim_fixed, rf.dim_p0),
        Check.within(
            'realization.iwasawa_borel.cartan', off_diagonal, tolerances.exact,
        ),
        Check.within(
            'annihilator', annihilator.distance, tolerances.exact,
            detail=(
                f'annihilator dim {annihilator.annihilator_dim}, '
                f'a0 + n0 dim {annihilator.expected_dim}'
            ),
        ),
    ]


def action_checks(
        mrf: MatrixRealForm,
        samples: int,
        seed: int,
        tolerances: Tolerances,
) -> list[schemas.CheckResult]:
    n = mrf.n
    reconstruction = 0.
    diagonal = 0.
    for rng in _rngs(seed, samples, Stream.iwasawa):
        m = checks.sample_sl(n, rng)
        b, u1 = action.iwasawa(m, tolerances)
        reconstruction = max(
            reconstruction, float(numpy.abs(b @ u1 - m).max()),
        )
        d = numpy.diag(b)
        diagonal = max(
            diagonal,
            float(numpy.abs(d.imag).max()),
            float(max(0., -d.real.min())),
            float(numpy.abs(u1 @ u1.conj().T - numpy.eye(n)).max()),
        )

    axiom = 0.
    for rng in _rngs(seed, samples, Stream.action):
        u = checks.sample_unitary(n, rng)
        g, h = checks.sample_sl(n, rng), checks.sample_sl(n, rng)
        lhs = action.g_act(action.g_act(u, g, tolerances), h, tolerances)
        rhs = action.g_act(u, g @ h, tolerances)
        axiom = max(axiom, float(numpy.abs(lhs - rhs).max()))

    return [
        Check.within(
            'iwasawa.reconstruction', reconstruction, tolerances.exact,
        ),
        Check.within(
            'iwasawa.normalization', diagonal, tolerances.exact,
            detail='positive real diagonal of b, unitarity of u1',
        ),
        Check.within('action.axiom', axiom, tolerances.action),
    ]


def poisson_checks(
        mrf: MatrixRealForm,
        samples: int,
        seed: int,
        tolerances: Tolerances,
) -> list[schemas.CheckResult]:
    residuals = checks.invariance_residuals(
        mrf, _rngs(seed, samples, Stream.invariance),
    )
    out = [
        Check.within('pi_U.identity', residuals['identity'], tolerances.exact),
        Check.within(
            'pi_U.left_torus', residuals['left_torus'], tolerances.invariance,
        ),
        Check.within(
            'pi_U.right_torus', residuals['right_torus'],
            tolerances.invariance,
        ),
        Check.within(
            'pi_U.multiplicativity', residuals['multiplicativity'],
            tolerances.multiplicativity,
        ),
        Check.within('pi_0.coset', residuals['coset'], tolerances.invariance),
    ]

    jacobi = 0.
    points = min(samples, JACOBI_POINTS)
    try:
        for rng in _rngs(seed, points, Stream.jacobi):
            u0 = checks.sample_unitary(mrf.n, rng)
            jacobi = max(jacobi, checks.jacobi_check(mrf, u0, tolerances))
    except ChartSingularity as e:
        out.append(Check(
            name='jacobi', status=schemas.CheckStatus.failed, detail=str(e),
        ))
    else:
        out.append(Check.within(
            'jacobi', jacobi, tolerances.jacobi,
            detail=f'{points} chart points, step {tolerances.fd_step:g}',
        ))
    return out


def rank_checks(
        rf: RealFormData,
        mrf: MatrixRealForm,
        classes: Iterable[OrbitClass],
        samples: int,
        seed: int,
        tolerances: Tolerances,
) -> tuple[list[schemas.CheckResult], schemas.RankSummary]:
    realizable = [c.leaf_codim for c in classes if c.parity_ok]
    expected = rf.dim_X - min(realizable)

    histogram: collections.Counter[int] = collections.Counter()
    borderline = 0
    tangency = 0.
    for rng in _rngs(seed, samples, Stream.ranks):
        u = checks.sample_unitary(mrf.n, rng)
        sample = sample_pi_0(u, mrf, tolerances)
        histogram[sample.rank] += 1
        borderline += sample.borderline
        tangency = max(
            tangency, action.leaf_tangency_check(u, mrf, tolerances).residual,
        )

    max_rank = max(histogram)
    odd = sum(count for rank, count in histogram.items() if rank % 2)
    summary = schemas.RankSummary(
        samples=samples,
        histogram=dict(sorted(histogram.items())),
        max_rank=max_rank,
        expected_max_rank=expected,
        borderline=borderline,
    )
    if borderline:
        logger.warning(
            'rank_checks(%s): borderline=%d of %d samples', mrf.label,
            borderline, samples,
        )
    return [
        Check.equal(
            'rank.parity', odd, 0, detail=f'{odd} samples of odd rank',
        ),
        Check.equal('rank.ceiling', max_rank, expected),
        Check.within('leaf.tangency', tangency, tolerances.tangency),
    ], summary


def stabilizer_checks(
        mrf: MatrixRealForm,
        classes: Iterable[OrbitClass],
        tolerances: Tolerances,
) -> list[schemas.CheckResult]:
    out = []
    for cls in classes:
        name = f'stabilizer[{cls.psi}]'
        try:
            u = action.representative_for(mrf, cls.psi, tolerances=tolerances)
        except NoRepresentativeFound as e:
            out.append(_skip(name, str(e)))
            continue
        an = action.stabilizer_dim(u, mrf, tolerances=tolerances)
        tan = action.stabilizer_dim(
            u, mrf, with_torus=True, tolerances=tolerances,
        )
        out += [
            Check.equal(f'{name}.an', an, cls.a + cls.codim_Y),
            Check.equal(f'{name}.tan', tan, cls.t + cls.a + cls.codim_Y),
        ]
    return out


def example_checks(
        mrf: MatrixRealForm,
        samples: int,
        seed: int,
        tolerances: Tolerances,
) -> list[schemas.CheckResult]:
    """SU(2)/SO(2): closed form, equator, chart invariance, slice."""
    worst = 0.
    chart = 0.
    for rng in _rngs(seed, samples, Stream.example):
        u = checks.sample_unitary(2, rng)
        _, _, relative = checks.example_su2(u, mrf)
        worst = max(worst, relative)
        k = checks.sample_k0(mrf, rng)
        try:
            chart = max(chart, abs(
                checks.chart_su2(k @ u, tolerances)
                - checks.chart_su2(u, tolerances),
            ))
        except ChartSingularity:
            continue

    equator = 0
    for phi in numpy.linspace(0, numpy.pi, EQUATOR_POINTS, endpoint=False):
        sample = sample_pi_0(checks.equator_point(phi), mrf, tolerances)
        equator = max(equator, sample.rank)

    slice_failures = 0
    for z in (.5 + .5j, 2 - 1j, -1.5 + 3j, -.25 - .75j):
        if checks.hemisphere(checks.slice_su2(z)) != numpy.sign(z.imag):
            slice_failures += 1
    for x in (-2., 0., .5, 3.):
        if abs(checks.equator_chart(checks.slice_su2(complex(x))) - 1) \
                > tolerances.invariance:
            slice_failures += 1

    return [
        Check.within(
            'example.closed_form', worst, tolerances.example,
            detail='relative to (1 + |w|^2)^2 / 16',
        ),
        Check.equal('example.equator_rank', equator, 0),
        Check.within('example.chart_invariance', chart, tolerances.invariance),
        Check.equal('example.slice', slice_failures, 0),
    ]


def hermitian_checks(
        rf: RealFormData,
        mrf: MatrixRealForm,
        samples: int,
        seed: int,
        tolerances: Tolerances,
) -> tuple[list[schemas.CheckResult], float]:
    points = [
        checks.sample_unitary(mrf.n, rng)
        for rng in _rngs(seed, samples, Stream.hermitian)
    ]
    refit_points = [
        checks.sample_unitary(mrf.n, rng)
        for rng in _rngs(seed, samples, Stream.hermitian_refit)
    ]
    fit = checks.hermitian_fit(mrf, points, refit_points, tolerances)
    return [
        Check.within(
            'hermitian.residual', fit.residual, tolerances.hermitian,
            detail=f'b = {fit.b:.12g}',
        ),
        Check.within(
            'hermitian.refit', abs(fit.b - fit.refit_b), tolerances.hermitian,
        ),
        Check.equal('hermitian.inv_rank', fit.inv_rank, rf.dim_X),
    ], fit.b


def verify(
        sd: SatakeDiagram,
        *,
        samples: int = 200,
        seed: int = 0,
        tolerances: Tolerances = Tolerances(),
        rank_cap: int = DEFAULT_RANK_CAP,
        weyl_cap: int = DEFAULT_WEYL_CAP,
        max_n: int = DEFAULT_MAX_N,
) -> schemas.VerifyReport:
    """
    Run every check that applies to the form's matrix realization.

    Raises NoRealization when the label has none, and the real_form errors
    for a bad diagram; failed checks are data, never exceptions.
    """
    mrf = parse_realization(sd.label, max_n)
    rs, rf = real_form(sd, rank_cap)
    classes = classify(rf, rs, weyl_cap)

    results = realization_checks(rf, mrf, seed, tolerances)
    try:
        results += action_checks(mrf, samples, seed, tolerances)
    except IllConditioned as e:
        results.append(Check(
            name='iwasawa', status=schemas.CheckStatus.failed, detail=str(e),
        ))
    results += poisson_checks(mrf, samples, seed, tolerances)
    rank_results, ranks = rank_checks(
        rf, mrf, classes, samples, seed, tolerances,
    )
    results += rank_results
    results += stabilizer_checks(mrf, classes, tolerances)

    if mrf.kind == Kind.split and mrf.n == 2:
        results += example_checks(mrf, samples, seed, tolerances)
    else:
        results.append(_skip('example', 'only for sl(2,R)'))

    hermitian_b = None
    if mrf.is_hermitian:
        hermitian_results, hermitian_b = hermitian_checks(
            rf, mrf, samples, seed, tolerances,
        )
        results += hermitian_results
    else:
        results.append(_skip('hermitian', 'not Hermitian symmetric'))

    report = schemas.VerifyReport(
        tool_version=__version__,
        seed=seed,
        samples=samples,
        form=sd.label,
        realization=str(mrf.kind),
        tolerances=tolerances.model_dump(),
        checks=results,
        ranks=ranks,
        hermitian_b=hermitian_b,
    )
    logger.info(
        'verify(%s): checks=%d failed=%d', sd.label, len(results),
        len(report.failed),
    )
    return report
