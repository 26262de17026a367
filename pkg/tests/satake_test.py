from collections.abc import Callable

import pydantic
import pytest

from leafatlas import satake
from leafatlas.errors import CompactRealForm
from leafatlas.errors import InconsistentSatakeData
from leafatlas.errors import InvalidDiagram


DiagramFactory = Callable[..., satake.SatakeDiagram]


@pytest.mark.parametrize(
    ('kwargs', 'dims'),
    [
        ({'label': 'sl(2,R)'}, (3, 1, 2)),
        ({'label': 'sl(3,R)', 'cartan_type': 'A2'}, (8, 3, 5)),
        (
            {'label': 'su(2,1)', 'cartan_type': 'A2', 'arrows': [(1, 2)]},
            (8, 4, 4),
        ),
        (
            {'label': 'su*(4)', 'cartan_type': 'A3', 'black': [1, 3]},
            (15, 10, 5),
        ),
        ({'label': 'sp(2,R)', 'cartan_type': 'C2'}, (10, 4, 6)),
        ({'label': 'so(4,1)', 'cartan_type': 'B2', 'black': [2]}, (10, 6, 4)),
    ],
)
def test_dimensions(
    diagram_factory: DiagramFactory,
    kwargs: dict[str, object],
    dims: tuple[int, int, int],
) -> None:
    data = satake.dims(diagram_factory(**kwargs))
    assert (data.dim_g, data.dim_k0, data.dim_p0) == dims
    assert data.dim_X == data.dim_p0


def test_split_form_has_identity_involution(
    diagram_factory: DiagramFactory,
) -> None:
    involution = satake.tau_star(diagram_factory(cartan_type='A2'))
    assert involution.matrix == ((1, 0), (0, 1))
    assert involution.sigma == (1, 2)
    assert involution.w_b.is_identity


def test_arrows_swap_simple_roots(diagram_factory: DiagramFactory) -> None:
    involution = satake.tau_star(
        diagram_factory(label='su(2,1)', cartan_type='A2', arrows=[(1, 2)]),
    )
    assert involution.matrix == ((0, 1), (1, 0))
    assert involution.sigma == (2, 1)


def test_su31_involution(diagram_factory: DiagramFactory) -> None:
    involution = satake.tau_star(diagram_factory(
        label='su(3,1)', cartan_type='A3', black=[2], arrows=[(1, 3)],
    ))
    # columns are images: alpha_1 -> alpha_2 + alpha_3, alpha_2 -> -alpha_2
    assert involution.matrix == ((0, 0, 1), (1, -1, 1), (1, 0, 0))
    assert involution.w_b.word == (2,)


def test_restricted_roots_of_su21(diagram_factory: DiagramFactory) -> None:
    roots, real_rank = satake.restricted_roots(
        diagram_factory(label='su(2,1)', cartan_type='A2', arrows=[(1, 2)]),
    )
    assert real_rank == 1
    assert [(r.coordinates, r.multiplicity) for r in roots] == [
        (('1/2', '1/2'), 2),
        (('1', '1'), 1),
    ]


def test_compact_form_is_rejected(diagram_factory: DiagramFactory) -> None:
    sd = diagram_factory(label='su(3)', cartan_type='A2', black=[1, 2])
    assert sd.is_compact
    with pytest.raises(CompactRealForm):
        satake.tau_star(sd)
    with pytest.raises(CompactRealForm):
        satake.real_form(sd)


def test_inadmissible_black_set_fails_parity(
    diagram_factory: DiagramFactory,
) -> None:
    sd = diagram_factory(label='bogus', cartan_type='A2', black=[1])
    report = satake.validate(sd)
    assert not report.ok
    assert 'white_parity' in report.failed
    with pytest.raises(InvalidDiagram):
        satake.real_form(sd)


def test_inconsistent_arrows(diagram_factory: DiagramFactory) -> None:
    # an arrow that is not a diagram automorphism of A3
    sd = diagram_factory(label='bogus', cartan_type='A3', arrows=[(1, 2)])
    assert 'sigma_automorphism' in satake.validate(sd).failed
    with pytest.raises(InconsistentSatakeData):
        satake.tau_star(sd)


def test_validate_reports_every_check(diagram_factory: DiagramFactory) -> None:
    report = satake.validate(diagram_factory(cartan_type='A2'))
    assert report.ok
    assert set(report.checks) == {
        'sigma_automorphism', 'tau_involution', 'black_negated',
        'white_positive', 'white_parity', 'tau_commutes_w0',
        'tau_commutes_wb', 'w0_commutes_wb', 'length_identity',
        'noncompact', 'dims_consistent',
    }


def test_validate_never_raises_for_unsupported_types() -> None:
    sd = satake.SatakeDiagram(label='big', family='A', rank=12)
    report = satake.validate(sd)
    assert not report.ok
    assert report.error is not None


def test_compact_cartan_from_vogan_orbits(
    diagram_factory: DiagramFactory,
) -> None:
    assert satake.dims(diagram_factory()).has_compact_cartan
    sl3r = satake.dims(diagram_factory(cartan_type='A2'))
    assert not sl3r.has_compact_cartan
    su21 = satake.dims(
        diagram_factory(label='su(2,1)', cartan_type='A2', arrows=[(1, 2)]),
    )
    assert su21.rank_k0 == 2
    assert su21.has_compact_cartan


@pytest.mark.parametrize(
    ('kwargs', 'message'),
    [
        ({'black': [3]}, 'outside'),
        ({'arrows': [(1, 1)]}, 'itself'),
        ({'black': [1], 'arrows': [(1, 2)]}, 'black node'),
        ({'arrows': [(1, 2), (2, 3)]}, 'more than one'),
    ],
)
def test_diagram_validation(
    diagram_factory: DiagramFactory,
    kwargs: dict[str, object],
    message: str,
) -> None:
    with pytest.raises(pydantic.ValidationError, match=message):
        diagram_factory(cartan_type='A2', **kwargs)


def test_arrows_are_normalized(diagram_factory: DiagramFactory) -> None:
    sd = diagram_factory(cartan_type='A2', arrows=[(2, 1)])
    assert sd.arrows == frozenset({(1, 2)})
    assert sd.arrow_partner(1) == 2
    assert sd.arrow_partner(2) == 1
