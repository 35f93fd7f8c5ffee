"""Exception types used to map failures onto CLI exit codes."""


class ConfigError(Exception):
    """Invalid experiment or CLI configuration (exit code 2)."""


class IngestionError(Exception):
    """Malformed or unreadable input data (exit code 3)."""


class SamplerError(RuntimeError):
    """A random sampler failed to terminate within its attempt budget (exit code 4)."""
