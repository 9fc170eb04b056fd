# -*- coding: utf-8 -*-
import logging
import os

import yaml

from graphenestorage import InRamConfigurationStore as GrapheneInRamConfigurationStore

from .exceptions import ConfigurationError


log = logging.getLogger(__name__)

#: Environment variable consulted for the seed when no flag is given
SEED_ENVIRONMENT_VARIABLE = "RELIAB_SEED"


class InRamConfigurationStore(GrapheneInRamConfigurationStore):
    """
    Run configuration with registered defaults.

    Keys that were never set fall back to the defaults registered with
    :meth:`setdefault`; unknown keys read as ``None``:

    .. code-block:: python

        config = InRamConfigurationStore()
        config["alpha"]             # 0.05
        config["alpha"] = 0.1
        config["alpha"]             # 0.1

    Nothing is persisted; a store lives as long as the process.
    """

    #: reliab's own defaults, kept apart from other graphenestorage stores
    defaults = {}

    def resolved(self):
        """All keys, defaults included."""
        merged = dict(self.defaults)
        merged.update(dict.items(self))
        return merged

    def update_from_yaml(self, path):
        """
        Load keys from a YAML mapping.

        :param str path: YAML file
        :raises reliab.exceptions.ConfigurationError: if the file is unreadable
            or does not contain a mapping
        """
        try:
            with open(path) as fid:
                data = yaml.safe_load(fid) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError("Cannot read config file %s: %s" % (path, e))
        if not isinstance(data, dict):
            raise ConfigurationError("Config file %s is not a mapping" % path)
        log.debug("Loaded %d config keys from %s" % (len(data), path))
        for key, value in data.items():
            self[key] = value
        return self

    def resolve(self, key, flag_value=None):
        """
        Resolve ``key`` with command line precedence: flag, then (for the
        seed) the environment, then this store.
        """
        if flag_value is not None:
            return flag_value
        if key == "seed":
            env = os.environ.get(SEED_ENVIRONMENT_VARIABLE)
            if env:
                try:
                    return int(env)
                except ValueError:
                    raise ConfigurationError(
                        "%s must be an integer, got %r"
                        % (SEED_ENVIRONMENT_VARIABLE, env)
                    )
        return self[key]


InRamConfigurationStore.setdefault("alpha", 0.05)
InRamConfigurationStore.setdefault("epsilon", 0.01)
InRamConfigurationStore.setdefault("k", 1.0)
InRamConfigurationStore.setdefault("B", 10000)
InRamConfigurationStore.setdefault("workers", 1)
InRamConfigurationStore.setdefault("methods", "classic,corrected")
InRamConfigurationStore.setdefault("format", "table")
InRamConfigurationStore.setdefault("bins", 60)
InRamConfigurationStore.setdefault("max_redraws", 1000)


def get_default_config_store(*args, **kwargs):
    config = InRamConfigurationStore(*args, **kwargs)
    path = os.environ.get("RELIAB_CONFIG")
    if path:
        config.update_from_yaml(path)
    return config
