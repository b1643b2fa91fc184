"""Load a validated `PipelineConfig` from a file and the environment."""

import logging as logging_mod
import pathlib
from typing import Optional, Union

from .base import PipelineConfig
from .manager import ConfigManager, ConfigProvider
from .providers import EnvProvider, FileProvider

__all__: list[str] = ["load_config"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)


def load_config(path: Optional[Union[str, pathlib.Path]] = None, *, env_prefix: Optional[str] = None) -> PipelineConfig:
    """
    Build a pipeline configuration from its initial values, a JSON file and the environment.

    Later layers win; absent keys keep their initial values.

    Parameters
    ----------
    path : str or Path, optional
        JSON configuration file.
    env_prefix : str, optional
        When given, variables with this prefix form the top layer.

    Returns
    -------
    PipelineConfig

    Raises
    ------
    ConfigLoadError
        If the file cannot be read or decoded.
    InvalidConfigError
        If a value is out of range; `UnknownConfigKeyError` for unknown keys.
    """
    providers: list[ConfigProvider] = []
    if path is not None:
        providers.append(FileProvider(path))
    if env_prefix is not None:
        providers.append(EnvProvider(env_prefix))
    document = ConfigManager(providers).load_config()
    config = PipelineConfig.from_mapping(document)
    logger.debug("Loaded pipeline configuration from %s", path if path is not None else "initial values")
    return config
