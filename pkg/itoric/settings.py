from enum import Enum
from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

VERSION = '0.1.0'


class LogLevel(str, Enum):
    DEBUG = 'DEBUG'
    INFO = 'INFO'
    WARNING = 'WARNING'
    ERROR = 'ERROR'
    CRITICAL = 'CRITICAL'


class ScalarMode(str, Enum):
    EXACT = 'exact'
    FLOAT = 'float'

    @classmethod
    def choices(cls) -> list[str]:
        # strings for click.Choice
        return [mode.value for mode in cls]


class Sampler(str, Enum):
    """how sample_translate reaches omega . Z_A"""
    MOMENT = 'moment'
    TORUS = 'torus'

    @classmethod
    def choices(cls) -> list[str]:
        return [s.value for s in cls]


class ItoricSettings(BaseSettings):
    """
    all configuration arrives through cli flags or keyword arguments, env vars
    and dotenv files are never read
    """
    model_config = SettingsConfigDict(extra='ignore')
    log_level: LogLevel = LogLevel.INFO
    version: str = Field(default=VERSION)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings
    ):
        return (init_settings,)


class NumericSettings(ItoricSettings):
    mode: ScalarMode = Field(default=ScalarMode.EXACT)
    tolerance: float = Field(default=1e-9)
    lp_margin: float = Field(default=1.0)
    max_lp_iterations: int = Field(default=10000)

    @field_validator('mode', mode='before')
    def validate_mode(cls, value):
        if isinstance(value, ScalarMode):
            return value
        if isinstance(value, str):
            try:
                return ScalarMode(value.lower())
            except ValueError:
                raise ValueError(f"invalid scalar mode: {value}")
        raise ValueError(f"mode must be a str or ScalarMode, got {value!r}")

    @field_validator('tolerance')
    def validate_tolerance(cls, v: float) -> float:
        if not 0 < v <= 1e-3:
            raise ValueError(f'tolerance must lie in (0, 1e-3], got {v}')
        return v

    @field_validator('lp_margin')
    def validate_margin(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f'{v} must be greater than 0')
        return v

    @field_validator('max_lp_iterations')
    def validate_iterations(cls, v: int) -> int:
        if v <= 0:
            raise ValueError(f'{v} must be greater than 0')
        return v


class BirchSettings(ItoricSettings):
    max_iterations: int = Field(default=200)
    residual_tolerance: float = Field(default=1e-10)
    armijo: float = Field(default=1e-4)
    backtrack: float = Field(default=0.5)

    @field_validator('armijo', 'backtrack')
    def validate_unit_interval(cls, v: float) -> float:
        if not 0 < v < 1:
            raise ValueError(f'{v} must lie strictly between 0 and 1')
        return v

    @field_validator('max_iterations')
    def validate_greater_than_zero(cls, v: int) -> int:
        if v > 0:
            return v
        raise ValueError(f'{v} must be greater than 0')


class SecondarySettings(ItoricSettings):
    max_points: int = Field(default=9)

    @field_validator('max_points')
    def validate_max_points(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f'{v} must be greater than 0')
        return v


class HausdorffSettings(ItoricSettings):
    density: int = Field(default=2000)
    # spreads past ln(1/eps) of a double leave only the limit in the samples
    max_log_ratio: float = Field(default=36.0)
    sampler: Sampler = Field(default=Sampler.MOMENT)
    torus_radius: float = Field(default=3.0)

    @field_validator('density')
    def validate_density(cls, v: int) -> int:
        if v < 8:
            raise ValueError(f'density must be at least 8, got {v}')
        return v

    @field_validator('max_log_ratio', 'torus_radius')
    def validate_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f'{v} must be greater than 0')
        return v


class RecoverySettings(ItoricSettings):
    samples: int = Field(default=2000)

    @field_validator('samples')
    def validate_samples(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f'{v} must be greater than 0')
        return v


class JobSettings(
        NumericSettings,
        BirchSettings,
        SecondarySettings,
        HausdorffSettings,
        RecoverySettings):
    """everything a single cli job may tune"""

    @model_validator(mode='after')
    def validate_tolerances(self):
        if self.residual_tolerance > self.tolerance:
            raise ValueError('birch residual tolerance must not exceed the numeric tolerance')
        return self
