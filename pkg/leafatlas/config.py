import logging.config
import math
from typing import Any

import pydantic
import pydantic_settings


class LogConfig(pydantic.BaseModel):
    LOG_LEVEL: str
    LOG_FORMAT: str = '%(asctime)s %(levelname)s [%(name)s] %(message)s'

    version: int = 1
    disable_existing_loggers: bool = False
    formatters: dict[str, dict[str, str]] = {
        'default': {
            'format': LOG_FORMAT,
            'datefmt': '%Y-%m-%d %H:%M:%S',
        },
    }
    handlers: dict[str, dict[str, str]] = {
        'default': {
            'formatter': 'default',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
        },
    }

    @pydantic.computed_field
    def loggers(self) -> dict[str, Any]:
        liblevel = 'INFO' if self.LOG_LEVEL == 'DEBUG' else self.LOG_LEVEL
        return {
            'jinja2': {'handlers': ['default'], 'level': liblevel},
            'root': {'handlers': ['default'], 'level': self.LOG_LEVEL},
        }


class Tolerances(pydantic.BaseModel):
    """
    Numerical thresholds for the matrix-group checks.

    Fields:
        unitary: max ||u u^H - I|| accepted as a point of SU(n)
        exact: subspace distances and Iwasawa reconstruction
        action: right-action axiom (u^g)^h = u^(gh)
        multiplicativity: Poisson-Lie multiplicativity of pi_U
        invariance: T-invariance and K0-coset independence
        example: relative error against the SU(2)/SO(2) closed form
        rank: relative singular-value cutoff for bivector rank
        tangency: principal-angle residual between leaf and orbit tangents
        stabilizer: relative singular-value cutoff for stabilizer nullspaces
        jacobi: max finite-difference Jacobiator
        fd_step: central-difference step for the Jacobiator
        hermitian: residual of the pi_0 = pi_inf + b pi_inv fit
        condition: largest condition number accepted by the Iwasawa split
        chart: smallest chart denominator before reporting a singularity
    """

    unitary: float = 1e-10
    exact: float = 1e-12
    action: float = 1e-10
    multiplicativity: float = 1e-8
    invariance: float = 1e-10
    example: float = 1e-8
    rank: float = 1e-8
    tangency: float = 1e-8
    stabilizer: float = 1e-8
    jacobi: float = 1e-5
    fd_step: float = 1e-4
    hermitian: float = 1e-8
    condition: float = 1e12
    chart: float = 1e-12

    model_config = pydantic.ConfigDict(extra='forbid', frozen=True)

    @pydantic.field_validator('*')
    @classmethod
    def must_be_positive(cls, value: float) -> float:
        if not (math.isfinite(value) and value > 0):
            raise ValueError(
                f'tolerance must be positive and finite, got {value}',
            )
        return value

    def override(self, **updates: float) -> 'Tolerances':
        return Tolerances.model_validate(self.model_dump() | updates)


class Settings(pydantic_settings.BaseSettings):
    leafatlas_catalog: str | None = None
    leafatlas_log_level: str = 'INFO'
    leafatlas_weyl_cap: int = 1_000_000
    leafatlas_rank_cap: int = 8
    leafatlas_samples: int = 200
    leafatlas_seed: int = 0
    leafatlas_max_realization_n: int = 4

    @pydantic.field_validator('leafatlas_catalog')
    @classmethod
    def normalize_optional_env_value(cls, value: str | None) -> str | None:
        if value is None:
            return None
        normalized = value.strip()
        return normalized or None

    @pydantic.field_validator('leafatlas_log_level')
    @classmethod
    def normalize_log_level(cls, value: str) -> str:
        level = value.strip().upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f'unknown log level {level!r}')
        return level

    @pydantic.field_validator(
        'leafatlas_weyl_cap', 'leafatlas_rank_cap', 'leafatlas_samples',
        'leafatlas_max_realization_n',
    )
    @classmethod
    def must_be_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f'must be positive, got {value}')
        return value

    @pydantic.field_validator('leafatlas_seed')
    @classmethod
    def must_fit_64_bits(cls, value: int) -> int:
        if not 0 <= value < 2**64:
            raise ValueError(
                f'seed must be a 64-bit unsigned integer: {value}',
            )
        return value

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)

        log_config = LogConfig(LOG_LEVEL=self.leafatlas_log_level).model_dump()
        logging.config.dictConfig(log_config)


def load_settings(**overrides: Any) -> Settings:
    return Settings(**overrides)
