"""A configuration provider that stores a document in memory."""

import copy
from typing import Any, Mapping, MutableMapping


class MemoryProvider:
    """Serves a configuration document held in memory, such as defaults or CLI overrides."""

    _config: MutableMapping[str, Any]

    def __init__(self, config_data: Mapping[str, Any] | None = None) -> None:
        """
        Initialize the MemoryProvider.

        Parameters
        ----------
        config_data : Mapping[str, Any] | None, optional
            The document to serve. It is deep-copied; ``None`` serves an empty document.
        """
        self._config = copy.deepcopy(dict(config_data)) if config_data is not None else {}

    def get_config(self) -> Mapping[str, Any]:
        """Return the stored document."""
        return self._config
