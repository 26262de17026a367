import numpy
import pytest

from leafatlas import atlas
from leafatlas import satake
from leafatlas.errors import CatalogError
from leafatlas.errors import DuplicateLabel
from leafatlas.rootsys import length


SU21 = """
# a comment line
name=su(2,1)
type=A2
black={}
arrows={(1,2)}

name=sp(2,R); type=C; rank=2
"""


def test_load_catalog() -> None:
    diagrams = satake.load_catalog(SU21)
    assert [sd.label for sd in diagrams] == ['su(2,1)', 'sp(2,R)']
    assert diagrams[0].arrows == frozenset({(1, 2)})
    assert diagrams[1].cartan_type == 'C2'


def test_empty_catalog() -> None:
    assert satake.load_catalog('') == []
    assert satake.load_catalog('# nothing here\n\n') == []


@pytest.mark.parametrize(
    ('text', 'line'),
    [
        ('name=x\ntype=A2\nfoo=1\n', 3),
        ('name=x\ntype=A2\nblack=1,2\n', 1),
        ('name=x\ntype=Q2\n', 1),
        ('name=x\ntype=A\n', 1),
        ('name=x\ntype=A2; rank=3\n', 1),
        ('type=A2\n', 1),
        ('\n\nname=x\ntype=A2\nname=y\n', 5),
        ('name=x\ntype=A2\nblack={5}\n', 1),
        ('name=x\ntype=A2\njunk\n', 3),
    ],
)
def test_catalog_errors_carry_line_numbers(text: str, line: int) -> None:
    with pytest.raises(CatalogError) as e:
        satake.load_catalog(text)
    assert e.value.line == line
    assert f'line {line}' in str(e.value)


def test_duplicate_labels() -> None:
    text = 'name=x\ntype=A1\n\nname=x\ntype=A2\n'
    with pytest.raises(DuplicateLabel) as e:
        satake.load_catalog(text)
    assert e.value.line == 4


def test_dump_and_reload_keeps_diagrams() -> None:
    diagrams = satake.shipped_catalog()
    assert satake.load_catalog(satake.dump_catalog(diagrams)) == diagrams


def test_catalog_hash_is_sha256() -> None:
    digest = satake.catalog_hash('name=x\ntype=A1\n')
    assert len(digest) == 64
    assert digest == satake.catalog_hash('name=x\ntype=A1\n')
    assert digest != satake.catalog_hash('name=y\ntype=A1\n')


def test_generated_labels() -> None:
    labels = {sd.label for sd in satake.generate_classical()}
    assert {
        'sl(2,R)', 'sl(3,R)', 'su(1,1)', 'su(2,1)', 'su(3,1)', 'su(2,2)',
        'su*(4)', 'so(4,1)', 'sp(2,R)', 'sp(1,1)', 'so(4,4)', 'so*(8)',
    } <= labels
    assert all(sd.rank <= 4 for sd in satake.generate_classical())


def test_bundled_exceptional_forms() -> None:
    labels = [sd.label for sd in satake.bundled_exceptional()]
    assert labels == ['G2(2)', 'F4(4)', 'F4(-20)']


def test_every_shipped_entry_validates() -> None:
    for sd in satake.shipped_catalog():
        report = satake.validate(sd)
        assert report.ok, (sd.label, report.failed, report.error)


def test_structural_invariants_across_the_catalog() -> None:
    for sd in satake.shipped_catalog():
        rs, rf = satake.real_form(sd)
        tau, w0, wb = rf.tau, rf.w0.array, rf.w_b.array
        assert (tau @ w0 == w0 @ tau).all(), sd.label
        assert (tau @ wb == wb @ tau).all(), sd.label
        assert rf.w_b * rf.w0 == rf.w0 * rf.w_b, sd.label
        assert (
            length(rs, rf.w_b * rf.w0)
            == length(rs, rf.w0) - length(rs, rf.w_b)
        ), sd.label

        for cls in atlas.classify(rf, rs):
            assert cls.t + cls.a == rf.rank, (sd.label, str(cls.psi))
            assert cls.leaf_codim == cls.a + cls.codim_Y
            m = cls.psi.array @ tau
            assert (m @ m == numpy.eye(rf.rank, dtype=int)).all()
