from collections.abc import Callable
from collections.abc import Iterable

import numpy
import pytest

from leafatlas import satake
from leafatlas.matrixlie import realization
from leafatlas.rootsys import build_root_system
from leafatlas.rootsys import parse_cartan_type
from leafatlas.rootsys import RootSystem


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in (
        'LEAFATLAS_CATALOG', 'LEAFATLAS_LOG_LEVEL', 'LEAFATLAS_SEED',
        'LEAFATLAS_SAMPLES', 'LEAFATLAS_WEYL_CAP', 'LEAFATLAS_RANK_CAP',
        'LEAFATLAS_MAX_REALIZATION_N',
    ):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(scope='function')
def root_system_factory() -> Callable[[str], RootSystem]:
    def _build(cartan_type: str) -> RootSystem:
        family, rank = parse_cartan_type(cartan_type)
        return build_root_system(family, rank)

    return _build


@pytest.fixture(scope='function')
def diagram_factory() -> Callable[..., satake.SatakeDiagram]:
    def _build(
            *,
            label: str = 'sl(2,R)',
            cartan_type: str = 'A1',
            black: Iterable[int] = (),
            arrows: Iterable[tuple[int, int]] = (),
    ) -> satake.SatakeDiagram:
        family, rank = parse_cartan_type(cartan_type)
        return satake.SatakeDiagram(
            label=label,
            family=family,
            rank=rank,
            black=frozenset(black),
            arrows=frozenset(arrows),
        )

    return _build


@pytest.fixture(scope='function')
def shipped_form() -> Callable[[str], satake.SatakeDiagram]:
    catalog = {sd.label: sd for sd in satake.shipped_catalog()}

    def _build(label: str) -> satake.SatakeDiagram:
        return catalog[label]

    return _build


@pytest.fixture(scope='function')
def realization_factory() -> Callable[[str], realization.MatrixRealForm]:
    def _build(label: str) -> realization.MatrixRealForm:
        return realization.parse_realization(label)

    return _build


@pytest.fixture(scope='function')
def rng_factory() -> Callable[..., numpy.random.Generator]:
    def _build(seed: int = 0) -> numpy.random.Generator:
        return numpy.random.default_rng(seed)

    return _build
