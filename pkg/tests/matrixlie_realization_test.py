from collections.abc import Callable

import numpy
import pydantic
import pytest

from leafatlas import satake
from leafatlas.errors import NoRealization
from leafatlas.matrixlie import realization


RealizationFactory = Callable[[str], realization.MatrixRealForm]


def test_killing_form() -> None:
    h = numpy.diag([1., -1.])
    assert realization.killing(2, h, h) == 8


def test_root_vector_normalization() -> None:
    (rv,) = realization.root_vectors(2)
    assert (rv.i, rv.j) == (0, 1)
    assert rv.e[0, 1] == pytest.approx(.5)
    assert realization.killing(2, rv.e, realization.theta(rv.e)) == (
        pytest.approx(-1)
    )


@pytest.mark.parametrize('n', [2, 3, 4])
def test_basis_is_orthogonal(n: int) -> None:
    basis = realization.basis_u(n)
    assert basis.shape == (n * n - 1, n, n)
    gram = numpy.array([
        [-realization.killing(n, x, y).real for y in basis] for x in basis
    ])
    numpy.testing.assert_allclose(gram, 2 * numpy.eye(n * n - 1), atol=1e-12)
    # every element lies in su(n)
    for e in basis:
        numpy.testing.assert_allclose(e, realization.theta(e), atol=1e-15)
        assert abs(numpy.trace(e)) < 1e-15


def test_coords_inverts_from_coords(
        rng_factory: Callable[..., numpy.random.Generator],
) -> None:
    c = rng_factory().standard_normal(8)
    z = realization.from_coords(3, c)
    numpy.testing.assert_allclose(realization.coords(3, z), c, atol=1e-12)


@pytest.mark.parametrize(
    ('label', 'dim_k0', 'dim_p0'),
    [
        ('sl(2,R)', 1, 2),
        ('su(1,1)', 1, 2),
        ('sl(3,R)', 3, 5),
        ('su(2,1)', 4, 4),
        ('su(2,2)', 7, 8),
        ('sl(4,R)', 6, 9),
    ],
)
def test_frames_split_su_n(
    realization_factory: RealizationFactory,
    label: str,
    dim_k0: int,
    dim_p0: int,
) -> None:
    frames = realization.frames(realization_factory(label))
    assert frames.k0.shape[1] == dim_k0
    assert frames.ip0.shape[1] == dim_p0
    overlap = frames.k0.T @ frames.ip0
    assert numpy.abs(overlap).max(initial=0.) < 1e-12


@pytest.mark.parametrize(
    'label',
    ['sl(2,R)', 'su(1,1)', 'sl(3,R)', 'su(2,1)', 'su(2,2)', 'su(3,1)'],
)
def test_torus_involution_matches_the_catalog(
    realization_factory: RealizationFactory,
    shipped_form: Callable[[str], satake.SatakeDiagram],
    label: str,
) -> None:
    torus = realization.torus_involution(realization_factory(label))
    assert torus == satake.tau_star(shipped_form(label)).matrix


def test_su21_signature() -> None:
    rf = realization.parse_realization('su(2,1)')
    assert (rf.n, rf.p, rf.q) == (3, 2, 1)
    assert rf.is_hermitian
    numpy.testing.assert_array_equal(
        rf.signature, [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    )


def test_parse_realization_ignores_spaces() -> None:
    rf = realization.parse_realization('sl(3, R)')
    assert rf.label == 'sl(3,R)'
    assert rf.kind == realization.Kind.split
    assert not rf.is_hermitian


@pytest.mark.parametrize(
    'label',
    ['su*(4)', 'sp(2,R)', 'sl(5,R)', 'su(1,2)', 'su(4,1)', 'so(4,1)'],
)
def test_no_realization(label: str) -> None:
    with pytest.raises(NoRealization):
        realization.parse_realization(label)


def test_max_n_limits_realizations() -> None:
    with pytest.raises(NoRealization):
        realization.parse_realization('su(2,2)', max_n=3)


def test_signature_is_validated() -> None:
    with pytest.raises(pydantic.ValidationError):
        realization.MatrixRealForm(
            label='x', kind=realization.Kind.unitary, n=3, p=1, q=2,
        )


def test_tau_group_matches_tau_on_the_algebra(
        rng_factory: Callable[..., numpy.random.Generator],
) -> None:
    rf = realization.parse_realization('su(2,1)')
    rng = rng_factory()
    x = .1 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    x -= numpy.trace(x) / 3 * numpy.eye(3)
    g = numpy.eye(3) + x
    # tau_group is multiplicative and differentiates to tau
    step = 1e-7
    derivative = (rf.tau_group(numpy.eye(3) + step * x) - numpy.eye(3)) / step
    numpy.testing.assert_allclose(derivative, rf.tau(x), atol=1e-5)
    numpy.testing.assert_allclose(
        rf.tau_group(g @ g), rf.tau_group(g) @ rf.tau_group(g), atol=1e-12,
    )


def test_pr_u_splits_sl_n(
        rng_factory: Callable[..., numpy.random.Generator],
) -> None:
    rng = rng_factory()
    z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    z -= numpy.trace(z) / 3 * numpy.eye(3)
    u_part = realization.pr_u(z)
    rest = z - u_part
    numpy.testing.assert_allclose(u_part, realization.theta(u_part))
    # a + n: upper triangular with a real diagonal
    assert numpy.abs(numpy.tril(rest, -1)).max() < 1e-15
    assert numpy.abs(numpy.diag(rest).imag).max() < 1e-15


def test_weyl_from_permutation() -> None:
    assert realization.weyl_from_permutation((1, 0)) == ((-1,),)
    assert realization.weyl_from_permutation((0, 1, 2)) == ((1, 0), (0, 1))
    assert realization.weyl_from_permutation((1, 0, 2)) == ((-1, 1), (0, 1))
