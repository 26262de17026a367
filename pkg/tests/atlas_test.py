from collections.abc import Callable

import pytest

from leafatlas import atlas
from leafatlas import satake
from leafatlas.errors import NotTwistedInvolution
from leafatlas.errors import WeylCapExceeded
from leafatlas.rootsys import from_word


ShippedForm = Callable[[str], satake.SatakeDiagram]

ROW_FIELDS = (
    'psi', 'codim_Y', 'a', 't', 'leaf_dim', 'leaf_codim', 'family_dim',
    'is_open', 'is_closed_class', 'parity_ok',
)


def _rows(report: object) -> list[tuple[object, ...]]:
    return [
        tuple(getattr(row, name) for name in ROW_FIELDS)
        for row in report.classes  # type: ignore[attr-defined]
    ]


def test_sl2r(shipped_form: ShippedForm) -> None:
    report = atlas.atlas(shipped_form('sl(2,R)'))
    assert _rows(report) == [
        ('s1', 0, 0, 1, 2, 0, 0, True, False, True),
        ('e', 1, 1, 0, 0, 2, 1, False, True, True),
    ]
    assert report.flags.has_open_leaves
    assert report.flags.compact_cartan
    assert report.flags.largest_leaf_class == 's1'
    assert (report.form.dim_g, report.form.dim_k0, report.form.dim_X) == (
        3, 1, 2,
    )


def test_su11_matches_sl2r(shipped_form: ShippedForm) -> None:
    su11 = atlas.atlas(shipped_form('su(1,1)'))
    sl2r = atlas.atlas(shipped_form('sl(2,R)'))
    assert _rows(su11) == _rows(sl2r)


def test_su21(shipped_form: ShippedForm) -> None:
    report = atlas.atlas(shipped_form('su(2,1)'))
    assert _rows(report) == [
        ('s1·s2·s1', 0, 0, 2, 4, 0, 0, True, False, True),
        ('s1·s2', 1, 1, 1, 2, 2, 1, False, False, True),
        ('s2·s1', 1, 1, 1, 2, 2, 1, False, False, True),
        ('e', 3, 1, 1, 0, 4, 1, False, True, True),
    ]
    assert report.flags.has_open_leaves
    assert len(report.open_classes) == 1


def test_sl3r_has_no_open_leaves(shipped_form: ShippedForm) -> None:
    report = atlas.atlas(shipped_form('sl(3,R)'))
    assert _rows(report) == [
        ('s1·s2·s1', 0, 1, 1, 4, 1, 1, False, False, True),
        ('s1', 2, 1, 1, 2, 3, 1, False, False, True),
        ('s2', 2, 1, 1, 2, 3, 1, False, False, True),
        ('e', 3, 2, 0, 0, 5, 2, False, True, True),
    ]
    assert not report.flags.has_open_leaves
    assert not report.flags.compact_cartan
    assert report.flags.largest_leaf_class == 's1·s2·s1'
    assert atlas.NOTE_OPEN not in report.notes


@pytest.mark.parametrize(
    ('label', 'expected'),
    [
        ('sl(2,R)', True),
        ('su(1,1)', True),
        ('su(2,1)', True),
        ('sl(3,R)', False),
        ('sl(4,R)', False),
        ('sp(2,R)', True),
        ('su*(4)', False),
    ],
)
def test_open_leaf_test_agrees_with_compact_cartan(
    shipped_form: ShippedForm,
    label: str,
    expected: bool,
) -> None:
    rs, rf = satake.real_form(shipped_form(label))
    assert atlas.open_leaf_test(rf, rs) is expected
    assert atlas.compact_cartan_oracle(rf) is expected
    assert any(c.is_open for c in atlas.classify(rf, rs)) is expected


def test_every_shipped_form_has_one_closed_class(
    shipped_form: ShippedForm,
) -> None:
    for sd in satake.shipped_catalog():
        if sd.rank > 3:
            continue
        rs, rf = satake.real_form(sd)
        classes = atlas.classify(rf, rs)
        assert sum(c.is_closed_class for c in classes) == 1
        closed = next(c for c in classes if c.is_closed_class)
        # the closed orbit carries only zero-dimensional leaves
        assert closed.leaf_dim == 0, sd.label


def test_orbit_class_rejects_non_twisted_involutions(
    shipped_form: ShippedForm,
) -> None:
    rs, rf = satake.real_form(shipped_form('su(2,1)'))
    with pytest.raises(NotTwistedInvolution):
        atlas.orbit_class(rf, rs, from_word(rs, (1,)))


def test_weyl_cap(shipped_form: ShippedForm) -> None:
    with pytest.raises(WeylCapExceeded):
        atlas.atlas(shipped_form('sl(4,R)'), weyl_cap=5)


def test_report_echoes_seed_and_hash(shipped_form: ShippedForm) -> None:
    report = atlas.atlas(shipped_form('sl(2,R)'), seed=7, catalog_hash='ab')
    assert report.seed == 7
    assert report.catalog_hash == 'ab'
    assert atlas.NOTE_CONTRACTIBLE in report.notes
    assert atlas.NOTE_OPEN in report.notes
    assert report.flags.unrealizable == []


@pytest.mark.parametrize(
    ('label', 'citations'),
    [
        ('sl(2,R)', (
            atlas.CITE_CONTRACTIBLE, atlas.CITE_CODIMENSION,
            atlas.CITE_LEAF_DIMENSION, atlas.CITE_LARGEST, atlas.CITE_OPEN,
        )),
        ('sl(3,R)', (
            atlas.CITE_CONTRACTIBLE, atlas.CITE_CODIMENSION,
            atlas.CITE_LEAF_DIMENSION, atlas.CITE_LARGEST,
        )),
    ],
)
def test_notes_cite_their_results(
    shipped_form: ShippedForm,
    label: str,
    citations: tuple[str, ...],
) -> None:
    notes = '\n'.join(atlas.atlas(shipped_form(label)).notes)
    for citation in citations:
        assert f'per the {citation}' in notes, citation
    if atlas.CITE_OPEN not in citations:
        assert atlas.CITE_OPEN not in notes


def test_largest_leaf_class_prefers_open_classes(
    shipped_form: ShippedForm,
) -> None:
    rs, rf = satake.real_form(shipped_form('su(2,1)'))
    largest = atlas.largest_leaf_class(atlas.classify(rf, rs))
    assert largest.is_open
    assert largest.leaf_codim == 0
