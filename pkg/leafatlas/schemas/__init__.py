from leafatlas.schemas.atlas import AtlasFlags
from leafatlas.schemas.atlas import AtlasReport
from leafatlas.schemas.atlas import ClassRow
from leafatlas.schemas.atlas import FormSummary
from leafatlas.schemas.atlas import RestrictedRootRow
from leafatlas.schemas.atlas import SCHEMA_VERSION
from leafatlas.schemas.catalog import CatalogEntry
from leafatlas.schemas.catalog import CatalogReport
from leafatlas.schemas.verify import CheckResult
from leafatlas.schemas.verify import CheckStatus
from leafatlas.schemas.verify import RankSummary
from leafatlas.schemas.verify import VerifyReport

__all__ = [
    'AtlasFlags',
    'AtlasReport',
    'CatalogEntry',
    'CatalogReport',
    'CheckResult',
    'CheckStatus',
    'ClassRow',
    'FormSummary',
    'RankSummary',
    'RestrictedRootRow',
    'SCHEMA_VERSION',
    'VerifyReport',
]
