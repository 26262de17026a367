import pydantic

from .atlas import SCHEMA_VERSION


class CatalogEntry(pydantic.BaseModel):
    label: str
    cartan_type: str
    black: list[int]
    arrows: list[tuple[int, int]]
    ok: bool
    failed: list[str]
    error: str | None = None


class CatalogReport(pydantic.BaseModel):
    schema_version: int = SCHEMA_VERSION
    tool_version: str
    seed: int
    catalog_hash: str
    source: str
    entries: list[CatalogEntry]

    @pydantic.computed_field  # type: ignore[prop-decorator]
    @property
    def ok(self) -> bool:
        return all(entry.ok for entry in self.entries)
