import os
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings
from starlette.config import Config

current_file_dir = os.path.dirname(os.path.realpath(__file__))
env_path = os.path.join(current_file_dir, "..", "..", ".env")
config = Config(env_path)


class AppSettings(BaseSettings):
    APP_NAME: str = config("APP_NAME", default="Stable set decomposition")
    APP_DESCRIPTION: str | None = config(
        "APP_DESCRIPTION", default="Maximum weight stable sets and extended formulations by decomposition"
    )
    APP_VERSION: str | None = config("APP_VERSION", default="0.1.0")
    LICENSE_NAME: str | None = config("LICENSE", default="MIT")
    TERMS_OF_SERVICE: str | None = config("TERMS_OF_SERVICE", default=None)
    CONTACT_NAME: str | None = config("CONTACT_NAME", default=None)
    CONTACT_EMAIL: str | None = config("CONTACT_EMAIL", default=None)


class EngineSettings(BaseSettings):
    RECORD_CAP: int = config("RECORD_CAP", cast=int, default=4096)
    STABLE_ENUM_CAP: int = config("STABLE_ENUM_CAP", cast=int, default=24)
    HOLE_SEARCH_CAP: int = config("HOLE_SEARCH_CAP", cast=int, default=16)
    AMALGAM_CAP: int = config("AMALGAM_CAP", cast=int, default=16)
    LEAF_CAP: int = config("LEAF_CAP", cast=int, default=8)
    FM_GUARD: int = config("FM_GUARD", cast=int, default=14)
    POLYTOPE_CAP: int = config("POLYTOPE_CAP", cast=int, default=20)
    ISOMORPHISM_CAP: int = config("ISOMORPHISM_CAP", cast=int, default=16)
    TEMPLATE_SIZE_CONSTANT: int = config("TEMPLATE_SIZE_CONSTANT", cast=int, default=10)
    DEFAULT_SEED: int = config("DEFAULT_SEED", cast=int, default=42)
    DEFAULT_SAMPLES: int = config("DEFAULT_SAMPLES", cast=int, default=20)


class RedisQueueSettings(BaseSettings):
    REDIS_QUEUE_HOST: str = config("REDIS_QUEUE_HOST", default="localhost")
    REDIS_QUEUE_PORT: int = config("REDIS_QUEUE_PORT", cast=int, default=6379)


class EnvironmentOption(Enum):
    LOCAL = "local"
    STAGING = "staging"
    PRODUCTION = "production"


class EnvironmentSettings(BaseSettings):
    ENVIRONMENT: EnvironmentOption = config("ENVIRONMENT", default="local")


class CorsSettings(BaseSettings):
    CORS_ORIGINS: list[str] = config("CORS_ORIGINS", default=["http://localhost:3000"])
    CORS_METHODS: list[str] = config("CORS_METHODS", default=["*"])
    CORS_HEADERS: list[str] = config("CORS_HEADERS", default=["*"])
    CORS_CREDENTIALS: bool = config("CORS_CREDENTIALS", cast=bool, default=True)


class Settings(
    AppSettings,
    EngineSettings,
    RedisQueueSettings,
    EnvironmentSettings,
    CorsSettings,
):
    pass


settings = Settings()


class Limits(BaseModel):
    """Enumeration and size caps of a single run.

    Built from ``EngineSettings`` and overridden by command line flags, so that
    every engine entry point can be called without touching global state.
    """

    model_config = ConfigDict(frozen=True)

    record_cap: int = Field(default=4096, gt=0)
    stable_enum_cap: int = Field(default=24, gt=0)
    hole_search_cap: int = Field(default=16, gt=0)
    amalgam_cap: int = Field(default=16, gt=0)
    leaf_cap: int = Field(default=8, gt=0)
    fm_guard: int = Field(default=14, gt=0)
    polytope_cap: int = Field(default=20, gt=0)
    isomorphism_cap: int = Field(default=16, gt=0)
    template_size_constant: int = Field(default=10, gt=0)

    @classmethod
    def from_settings(cls, engine: EngineSettings) -> "Limits":
        return cls(
            record_cap=engine.RECORD_CAP,
            stable_enum_cap=engine.STABLE_ENUM_CAP,
            hole_search_cap=engine.HOLE_SEARCH_CAP,
            amalgam_cap=engine.AMALGAM_CAP,
            leaf_cap=engine.LEAF_CAP,
            fm_guard=engine.FM_GUARD,
            polytope_cap=engine.POLYTOPE_CAP,
            isomorphism_cap=engine.ISOMORPHISM_CAP,
            template_size_constant=engine.TEMPLATE_SIZE_CONSTANT,
        )


def default_limits() -> Limits:
    return Limits.from_settings(settings)
