"""
Configuration management for SudoCrypt, using Pydantic models and YAML loading.
"""

import os
from functools import lru_cache
from typing import List, Optional

import yaml
from pydantic import BaseModel, Field, StrictBool, StrictInt, StrictStr, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from sudocrypt.utils.logger import log

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(__file__), "config.yaml")


class KeyConfig(BaseModel):
    grid_size: StrictInt = 9
    iterations: StrictInt = Field(default=1, ge=1)
    alphabet: Optional[StrictStr] = None


class LoggingConfig(BaseModel):
    level: StrictStr = "WARNING"
    path: Optional[StrictStr] = None


class VideoConfig(BaseModel):
    max_workers: Optional[StrictInt] = Field(default=None, ge=1)


class AnalysisConfig(BaseModel):
    crop: StrictBool = False


class BenchConfig(BaseModel):
    key_counts: List[StrictInt] = [10, 25, 50, 75, 100]
    iteration_counts: List[StrictInt] = [25, 50, 75, 100]
    sudoku_sizes: List[StrictInt] = [4, 9, 16, 25]
    grid_size: StrictInt = 9
    image_size: StrictInt = Field(default=504, ge=1)
    timestamp: StrictInt = 1_700_000_000


class Config(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="SUDOCRYPT_", env_nested_delimiter="__", extra="ignore"
    )

    keys: KeyConfig = KeyConfig()
    logging: LoggingConfig = LoggingConfig()
    video: VideoConfig = VideoConfig()
    analysis: AnalysisConfig = AnalysisConfig()
    bench: BenchConfig = BenchConfig()


def resolve_config_path(path: Optional[str] = None) -> str:
    return path or os.getenv("CONFIG_PATH", DEFAULT_CONFIG_PATH)


@lru_cache()
def get_config(path: Optional[str] = None) -> Config:
    """Load configuration from YAML, falling back to env vars and defaults."""
    config_path = resolve_config_path(path)

    if not os.path.exists(config_path):
        return Config()

    try:
        with open(config_path, "r") as f:
            raw_config = yaml.safe_load(f) or {}
        return Config(**raw_config)
    except (OSError, yaml.YAMLError, ValidationError, TypeError) as e:
        log.warning(f"Could not load config from {config_path}: {e}")
        return Config()
