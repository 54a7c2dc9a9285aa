# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-09-17
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
"""Run configuration.

Configuration files are flat ``key=value`` text (``#`` starts a comment), read
with :func:`dotenv.dotenv_values`::

    ghz_n=4
    shots=1000
    seed=7
    p2=0.035
    sigma_collective=0.09

Environment variables prefixed with ``ION_GHZ_`` (e.g. ``ION_GHZ_SHOTS=0``)
override the file; explicit overrides (command line) override both.
"""
from dataclasses import dataclass, field, fields
import hashlib
import logging
import os
from pathlib import Path
from dotenv import dotenv_values

from ..noise import NoiseSpec
from .exceptions import ConfigError, ValidationError


log = logging.getLogger(__name__)

ENV_PREFIX = "ION_GHZ_"
DEFAULT_SHOTS = 200
TARGET_KEYS = ("ghz_n", "circuit_file")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _to_bool(key, value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _to_int(key, value):
    try:
        return int(str(value).strip())
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """Settings of one command-line run.

    Exactly one of `ghz_n` and `circuit_file` selects what to prepare
    (:meth:`validate_target`). ``shots = 0`` means exact (infinite-shot) mode.
    `phase_points` ``None`` selects the default grid of 4N+1 points.
    """
    ghz_n: int | None = None
    circuit_file: str | None = None
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    phase_points: int | None = None
    spam_correct: bool = True
    include_dd: bool = True
    output_dir: str = "."
    noise: NoiseSpec = field(default_factory=NoiseSpec)

    def __post_init__(self):
        if self.ghz_n is not None and self.circuit_file is not None:
            raise ConfigError("Give either ghz_n or circuit_file, not both")
        if self.ghz_n is not None and not 2 <= self.ghz_n <= 10:
            raise ConfigError(f"ghz_n must lie in 2..10, got {self.ghz_n}")
        if self.shots < 0:
            raise ConfigError(f"shots must be >= 0, got {self.shots}")
        if self.phase_points is not None and self.phase_points < 3:
            raise ConfigError(f"phase_points must be >= 3, got {self.phase_points}")

    @classmethod
    def keys(cls):
        """All accepted configuration keys."""
        own = [f.name for f in fields(cls) if f.name != "noise"]
        return own + [f.name for f in fields(NoiseSpec)]

    @classmethod
    def from_mapping(cls, mapping):
        """Build a config from string (or typed) values.

        Raises
        ------
        ConfigError
            On unknown keys or malformed values.

        Example
        -------
        >>> RunConfig.from_mapping({'ghz_n': '3', 'shots': '0', 'p2': '0.03'}).noise.p2
        0.03
        """
        mapping = {k.strip().lower(): v for k, v in mapping.items() if v is not None and str(v).strip() != ""}
        noise_keys = {f.name for f in fields(NoiseSpec)}
        unknown = set(mapping) - set(cls.keys())
        if unknown:
            raise ConfigError(f"Unknown configuration key(s): {', '.join(sorted(unknown))}")
        kwargs = {}
        for key in ("ghz_n", "shots", "seed", "phase_points"):
            if key in mapping:
                kwargs[key] = _to_int(key, mapping[key])
        for key in ("spam_correct", "include_dd"):
            if key in mapping:
                kwargs[key] = _to_bool(key, mapping[key])
        for key in ("circuit_file", "output_dir"):
            if key in mapping:
                kwargs[key] = str(mapping[key])
        noise = {k: v for k, v in mapping.items() if k in noise_keys}
        try:
            kwargs["noise"] = NoiseSpec.from_mapping(noise)
        except (ValidationError, ValueError) as err:
            raise ConfigError(f"Invalid noise parameter: {err}") from None
        return cls(**kwargs)

    def to_mapping(self):
        """Flat ``{key: value}`` view, noise parameters included."""
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "noise"}
        out.update(self.noise.to_dict())
        return out

    def to_text(self):
        """Canonical sorted ``key=value`` rendering (unset keys omitted)."""
        items = sorted((k, v) for k, v in self.to_mapping().items() if v is not None)
        return "".join(f"{k}={v!r}\n" if isinstance(v, float) else f"{k}={v}\n" for k, v in items)

    def config_hash(self):
        """SHA-256 of :meth:`to_text`."""
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def replace(self, **changes):
        """Copy with changed fields; noise fields are routed into :attr:`noise`."""
        mapping = self.to_mapping()
        mapping.update(changes)
        return RunConfig.from_mapping(mapping)

    def validate_target(self):
        """Make sure exactly one of `ghz_n` and `circuit_file` is set."""
        if (self.ghz_n is None) == (self.circuit_file is None):
            raise ConfigError("Exactly one of ghz_n and circuit_file must be given")
        return self


def environment_overrides(environ=None):
    """``ION_GHZ_*`` variables as configuration mapping."""
    environ = os.environ if environ is None else environ
    return {k[len(ENV_PREFIX):].lower(): v for k, v in environ.items() if k.startswith(ENV_PREFIX)}


def _merge(mapping, layer):
    # ghz_n and circuit_file exclude each other: a higher layer setting one drops the other
    for key, value in layer.items():
        key = key.strip().lower()
        if value is None or str(value).strip() == "":
            continue
        if key in TARGET_KEYS:
            for other in TARGET_KEYS:
                mapping.pop(other, None)
        mapping[key] = value
    return mapping


def load_config(path=None, overrides=None, environ=None):
    """Assemble a :class:`RunConfig` from file, environment and overrides.

    Parameters
    ----------
    path : str or pathlib.Path, optional
        ``key=value`` file.
    overrides : dict, optional
        Highest-priority values (``None`` values are ignored).
    environ : dict, optional
        Defaults to :data:`os.environ`.

    Raises
    ------
    ConfigError
        If the file cannot be read, or on unknown keys and malformed values.
    """
    mapping = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"Cannot read configuration file {path}")
        _merge(mapping, dotenv_values(path))
        log.debug(f"Read configuration file {path}")
    _merge(mapping, environment_overrides(environ))
    _merge(mapping, overrides or {})
    return RunConfig.from_mapping(mapping)
