# encoding: utf-8

import os
import sys

import yaml

from app import logger
from app.constants import (
    DEFAULT_EDGE_MINIMALITY_CAP,
    DEFAULT_HEREDITARY_EXHAUSTIVE_CAP,
    DEFAULT_ISO_LIST_CAP,
    DEFAULT_JOBS,
    DEFAULT_ORACLE_CAPS,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_SEED,
    EXIT_INPUT_ERROR,
    SEED_ENV_VAR,
    SETTINGS_INT_KEYS,
    VALID_OUTPUT_FORMATS,
)


def load_config(config_file=None):
    if config_file is None:
        return Config({})
    try:
        full_path = os.path.abspath(config_file)
        with open(full_path, "r", encoding="utf8") as stream:
            logger.debug("Loading configuration from %s", full_path)
            return Config(yaml.safe_load(stream) or {})
    except FileNotFoundError:
        logger.error(f"Configuration file {config_file} not found.")
    except yaml.YAMLError as exc:
        logger.error(exc)

    sys.exit(EXIT_INPUT_ERROR)


class Config:
    def __init__(self, settings):
        self.settings = settings

    def validate(self):
        if not self.validate_config():
            self.log_and_exit("Invalid configuration, exiting.")

    def log_and_exit(self, msg):
        logger.error(msg)
        sys.exit(EXIT_INPUT_ERROR)

    def validate_config(self):
        if not isinstance(self.settings, dict):
            self.log_and_exit("The configuration must be a mapping of settings.")
        return (
            self.validate_integers()
            and self.validate_oracle_caps()
            and self.validate_output()
            and self.validate_seed()
        )

    def validate_integers(self):
        for key in SETTINGS_INT_KEYS:
            if key in self.settings and not _is_positive_int(self.settings[key]):
                self.log_and_exit(
                    f"'{key}' must be a positive integer, got '{self.settings[key]}'."
                )
        return True

    def validate_oracle_caps(self):
        oracle = self.settings.get("oracle", {})
        if not isinstance(oracle, dict):
            self.log_and_exit("'oracle' settings should be a dictionary.")

        for key, value in oracle.items():
            if key not in DEFAULT_ORACLE_CAPS:
                self.log_and_exit(
                    f"Unknown oracle setting '{key}', supported values are {list(DEFAULT_ORACLE_CAPS)}."
                )
            if not _is_positive_int(value):
                self.log_and_exit(f"Oracle setting '{key}' must be a positive integer.")
        return True

    def validate_output(self):
        output = self.settings.get("output")
        if output is not None and output not in VALID_OUTPUT_FORMATS:
            self.log_and_exit(
                f"Invalid output format '{output}', supported values are {VALID_OUTPUT_FORMATS}."
            )
        return True

    def validate_seed(self):
        seed = self.settings.get("seed")
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
            self.log_and_exit(f"'seed' must be an integer, got '{seed}'.")
        return True

    @property
    def iso_list_cap(self):
        return self.settings.get("iso_list_cap", DEFAULT_ISO_LIST_CAP)

    @property
    def hereditary_exhaustive_cap(self):
        return self.settings.get(
            "hereditary_exhaustive_cap", DEFAULT_HEREDITARY_EXHAUSTIVE_CAP
        )

    @property
    def edge_minimality_cap(self):
        return self.settings.get("edge_minimality_cap", DEFAULT_EDGE_MINIMALITY_CAP)

    @property
    def jobs(self):
        return self.settings.get("jobs", DEFAULT_JOBS)

    @property
    def output(self):
        return self.settings.get("output", DEFAULT_OUTPUT_FORMAT)

    @property
    def log_dir(self):
        return self.settings.get("log_dir")

    @property
    def seed(self):
        env_seed = os.environ.get(SEED_ENV_VAR)
        if env_seed is not None:
            try:
                return int(env_seed)
            except ValueError:
                self.log_and_exit(f"{SEED_ENV_VAR} must be an integer, got '{env_seed}'.")
        return self.settings.get("seed", DEFAULT_SEED)

    def oracle_cap(self, name):
        return self.settings.get("oracle", {}).get(name, DEFAULT_ORACLE_CAPS[name])


def _is_positive_int(value):
    return isinstance(value, int) and not isinstance(value, bool) and value > 0
