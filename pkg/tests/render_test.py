import json
from collections.abc import Callable

import pytest

from leafatlas import atlas
from leafatlas import render
from leafatlas import satake
from leafatlas import schemas


ShippedForm = Callable[[str], satake.SatakeDiagram]


@pytest.mark.parametrize(
    ('value', 'expected'),
    [
        (None, ''),
        (0., '0.000e+00'),
        (1.5e-9, '1.500e-09'),
    ],
)
def test_sci(value: float | None, expected: str) -> None:
    assert render.sci(value) == expected


def test_set_filters() -> None:
    assert render.nodes([]) == '{}'
    assert render.nodes([1, 3]) == '{1,3}'
    assert render.pairs([(1, 3)]) == '{(1,3)}'
    assert render.matrix([[0, 1], [1, -1]]) == '[ 0  1;  1 -1]'
    assert render.yesno(True) == 'yes'


def test_json_is_stable(shipped_form: ShippedForm) -> None:
    report = atlas.atlas(shipped_form('sl(3,R)'))
    text = render.to_json(report)
    assert text.endswith('}\n')
    assert text == render.to_json(atlas.atlas(shipped_form('sl(3,R)')))
    keys = list(json.loads(text))
    assert keys == sorted(keys)
    assert json.loads(text)['schema_version'] == schemas.SCHEMA_VERSION


def test_atlas_markdown(shipped_form: ShippedForm) -> None:
    text = render.atlas_markdown(atlas.atlas(shipped_form('su(2,1)')))
    assert text.startswith('# Leaf atlas: su(2,1)\n')
    assert '| arrows | {(1,2)} |' in text
    assert '| (1/2, 1/2) | 2 |' in text
    assert '| e | 3 | 1 | 1 | 0 | 4 | 1 | no | yes | yes |' in text
    assert '- open leaves: yes' in text
    assert f'- {atlas.NOTE_CONTRACTIBLE}' in text
    assert '{{' not in text


def test_verify_markdown() -> None:
    report = schemas.VerifyReport(
        tool_version='0',
        seed=1,
        samples=2,
        form='su(1,1)',
        realization='su(p,q)',
        tolerances={},
        checks=[
            schemas.CheckResult.within('jacobi', 3e-9, 1e-5),
            schemas.CheckResult(
                name='example', status=schemas.CheckStatus.skipped,
                detail='only for sl(2,R)',
            ),
        ],
        ranks=schemas.RankSummary(
            samples=2, histogram={2: 2}, max_rank=2, expected_max_rank=2,
            borderline=0,
        ),
        hermitian_b=-.125,
    )
    text = render.verify_markdown(report)
    assert '2 samples, seed 1: **pass**' in text
    assert '| jacobi | ok | 3.000e-09 | 1.000e-05 |  |' in text
    assert '| example | - |  |  | only for sl(2,R) |' in text
    assert '| 2 | 2 |' in text
    assert 'fitted b = -0.125' in text


def test_catalog_markdown() -> None:
    report = schemas.CatalogReport(
        tool_version='0',
        seed=3,
        catalog_hash='0123456789abcdef',
        source='forms.catalog',
        entries=[
            schemas.CatalogEntry(
                label='bad', cartan_type='A2', black=[1], arrows=[],
                ok=False, failed=['white_parity'],
            ),
        ],
    )
    text = render.catalog_markdown(report)
    assert text.startswith('# Catalog forms.catalog\n')
    assert '1 entries, sha256 0123456789ab, seed 3' in text
    assert '| bad | A2 | {1} | {} | FAIL | white_parity |' in text
