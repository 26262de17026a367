from collections.abc import Callable

import pytest

from leafatlas import satake
from leafatlas import schemas
from leafatlas import verify
from leafatlas.config import Tolerances
from leafatlas.errors import NoRealization


ShippedForm = Callable[[str], satake.SatakeDiagram]

SAMPLES = 6


def _statuses(report: schemas.VerifyReport) -> dict[str, str]:
    return {check.name: str(check.status) for check in report.checks}


def test_sl2r_passes(shipped_form: ShippedForm) -> None:
    report = verify.verify(shipped_form('sl(2,R)'), samples=SAMPLES)
    assert report.ok, report.failed
    statuses = _statuses(report)
    for name in (
        'realization.tau_star', 'annihilator', 'iwasawa.reconstruction',
        'action.axiom', 'pi_U.multiplicativity', 'pi_0.coset', 'jacobi',
        'rank.parity', 'rank.ceiling', 'leaf.tangency',
        'stabilizer[e].an', 'stabilizer[s1].tan', 'example.closed_form',
        'example.equator_rank', 'example.chart_invariance', 'example.slice',
    ):
        assert statuses[name] == 'pass', name
    assert statuses['hermitian'] == 'skip'
    assert report.hermitian_b is None
    assert report.realization == 'sl(n,R)'
    assert report.ranks is not None
    assert report.ranks.histogram == {2: SAMPLES}


def test_su11_fits_the_hermitian_splitting(
        shipped_form: ShippedForm,
) -> None:
    report = verify.verify(shipped_form('su(1,1)'), samples=SAMPLES)
    assert report.ok, report.failed
    statuses = _statuses(report)
    assert statuses['example'] == 'skip'
    assert statuses['hermitian.residual'] == 'pass'
    assert statuses['hermitian.inv_rank'] == 'pass'
    assert report.hermitian_b is not None


@pytest.mark.parametrize('label', ['sl(3,R)', 'su(2,1)'])
def test_rank_two_forms_pass(shipped_form: ShippedForm, label: str) -> None:
    report = verify.verify(shipped_form(label), samples=4)
    assert report.ok, report.failed
    assert report.ranks is not None
    assert report.ranks.max_rank == report.ranks.expected_max_rank == 4


def test_reports_are_reproducible(shipped_form: ShippedForm) -> None:
    first = verify.verify(shipped_form('su(1,1)'), samples=3, seed=9)
    second = verify.verify(shipped_form('su(1,1)'), samples=3, seed=9)
    assert first == second
    assert first.seed == 9


def test_tight_tolerances_fail_without_raising(
        shipped_form: ShippedForm,
) -> None:
    tolerances = Tolerances().override(example=1e-300, invariance=1e-300)
    report = verify.verify(
        shipped_form('sl(2,R)'), samples=3, tolerances=tolerances,
    )
    assert not report.ok
    assert 'example.closed_form' in {c.name for c in report.failed}
    assert report.tolerances['example'] == 1e-300


@pytest.mark.parametrize('label', ['su*(4)', 'sp(2,R)', 'G2(2)'])
def test_forms_without_realization(
    shipped_form: ShippedForm,
    label: str,
) -> None:
    with pytest.raises(NoRealization):
        verify.verify(shipped_form(label), samples=1)


def test_max_n_is_respected(shipped_form: ShippedForm) -> None:
    with pytest.raises(NoRealization):
        verify.verify(shipped_form('su(2,1)'), samples=1, max_n=2)


def test_streams_are_distinct() -> None:
    values = {stream.value for stream in verify.Stream}
    assert len(values) == len(verify.Stream)
