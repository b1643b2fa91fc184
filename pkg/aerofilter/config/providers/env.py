"""Provides a configuration provider that loads flat settings from environment variables."""

import os
from typing import Any, Dict, Iterable, Optional

from aerofilter.exceptions.config import ConfigValueError

DEFAULT_KEYS: tuple[str, ...] = (
    "r_max",
    "r_min",
    "I_th",
    "r_d",
    "K_nn",
    "r_th",
    "c_th",
    "r_nn",
    "close_budget",
    "sample_period",
    "frame_period",
    "parallel_branches",
    "workers",
)


class EnvProvider:
    """
    Loads top-level settings from environment variables.

    Variables starting with the prefix (``AEROFILTER_`` by default) are
    stripped of it and matched case-insensitively against the known keys,
    so ``AEROFILTER_K_NN=4`` sets ``K_nn``. Values are type-inferred:

    - digits only: integer
    - ``true``/``false`` (any case): boolean
    - comma-separated numbers: list of floats (for ``r_d``)
    - parseable as float: float
    - anything else: string

    A prefixed variable that matches no known key is passed through under
    its stripped name, so validation reports it as an unknown key.
    """

    _prefix: str

    def __init__(self, prefix: str = "AEROFILTER_", keys: Optional[Iterable[str]] = None) -> None:
        """Initialize the provider.

        Parameters
        ----------
        prefix : str, optional
            Prefix of the variables to read. Defaults to "AEROFILTER_".
        keys : Iterable[str], optional
            Canonical key names; the flat top-level keys by default.
        """
        self._prefix = prefix
        self._keys = {key.lower(): key for key in (keys if keys is not None else DEFAULT_KEYS)}

    @property
    def prefix(self) -> str:
        """Return the environment variable prefix."""
        return self._prefix

    @staticmethod
    def infer(value: str, name: str = "") -> Any:
        """Convert a variable's text to int, bool, list of floats, float or str."""
        text = value.strip()
        if text.isdigit():
            return int(text)
        if text.lower() in ("true", "false"):
            return text.lower() == "true"
        if "," in text:
            try:
                return [float(part) for part in text.split(",")]
            except ValueError as e:
                raise ConfigValueError(f"Cannot read {name}='{value}' as a list of numbers: {e}") from e
        try:
            return float(text)
        except ValueError:
            return text

    def load(self) -> Dict[str, Any]:
        """Load settings from the prefixed environment variables.

        Returns
        -------
        Dict[str, Any]
            Canonical key names mapped to inferred values.

        Raises
        ------
        ConfigValueError
            If a comma-separated value holds something other than numbers.
        """
        config: Dict[str, Any] = {}
        prefix_len = len(self._prefix)
        for key, value in sorted(os.environ.items()):
            if not key.startswith(self._prefix):
                continue
            stripped = key[prefix_len:]
            config[self._keys.get(stripped.lower(), stripped)] = self.infer(value, key)
        return config
