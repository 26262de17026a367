from typing import Self

import pydantic


SCHEMA_VERSION = 1


class RestrictedRootRow(pydantic.BaseModel):
    coordinates: list[str]
    multiplicity: int


class FormSummary(pydantic.BaseModel):
    label: str
    cartan_type: str
    rank: int
    black: list[int]
    arrows: list[tuple[int, int]]
    tau_star: list[list[int]]
    sigma: list[int]
    w0: str
    w0_word: list[int]
    wb: str
    wb_word: list[int]
    restricted_roots: list[RestrictedRootRow]
    real_rank: int
    rank_k0: int
    dim_g: int
    dim_k0: int
    dim_p0: int
    dim_X: int  # noqa: N815


class ClassRow(pydantic.BaseModel):
    psi: str
    psi_word: list[int]
    codim_Y: int  # noqa: N815
    a: int
    t: int
    leaf_dim: int
    leaf_codim: int
    family_dim: int
    is_open: bool
    is_closed_class: bool
    parity_ok: bool


class AtlasFlags(pydantic.BaseModel):
    has_open_leaves: bool
    compact_cartan: bool
    largest_leaf_class: str
    unrealizable: list[str]


class AtlasReport(pydantic.BaseModel):
    schema_version: int = SCHEMA_VERSION
    tool_version: str
    seed: int
    catalog_hash: str
    form: FormSummary
    classes: list[ClassRow]
    flags: AtlasFlags
    notes: list[str]

    @pydantic.model_validator(mode='after')
    def check_classes(self) -> Self:
        keys = [(row.codim_Y, row.psi_word) for row in self.classes]
        if keys != sorted(keys):
            raise ValueError('classes must be sorted by (codim_Y, psi word)')
        closed = sum(1 for row in self.classes if row.is_closed_class)
        if closed != 1:
            raise ValueError(
                f'expected exactly one closed class, got {closed}',
            )
        return self

    @property
    def open_classes(self) -> list[ClassRow]:
        return [row for row in self.classes if row.is_open]
