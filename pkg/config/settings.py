import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "habiro-bc/1"
_TRUTHY = ["1", "true", "yes", "on"]


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return float(value)
    except ValueError:
        logger.warning(f"Invalid {name} value: {value}, falling back to {default}")
        return default


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Invalid {name} value: {value}, falling back to {default}")
        return default


def _env_bool(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.lower() in _TRUTHY


def parse_float_list(value: str) -> List[float]:
    """``"2,4,8"`` or ``"[2, 4, 8]"`` -> [2.0, 4.0, 8.0]"""
    items = value.strip().strip("[]")
    if not items:
        return []
    return [float(v) for v in items.split(",")]


@dataclass
class QSMSettings:
    hbar: float = 1 / math.e
    nmax: int = 200
    mmax: int = 40
    beta_grid: List[float] = field(default_factory=lambda: [2.0, 4.0, 8.0, 16.0, 30.0])
    tolerance: float = 1e-9
    embedding: int = 1

    @classmethod
    def from_env(cls) -> "QSMSettings":
        beta_grid = cls().beta_grid
        grid_env = os.getenv("QSM_BETA_GRID")
        if grid_env:
            try:
                beta_grid = parse_float_list(grid_env)
            except ValueError:
                logger.warning(f"Invalid QSM_BETA_GRID value: {grid_env}, using {beta_grid}")

        return cls(
            hbar=_env_float("QSM_HBAR", 1 / math.e),
            nmax=_env_int("QSM_NMAX", 200),
            mmax=_env_int("QSM_MMAX", 40),
            beta_grid=beta_grid,
            tolerance=_env_float("QSM_TOLERANCE", 1e-9),
            embedding=_env_int("QSM_EMBEDDING", 1),
        )

    def validate(self) -> bool:
        if not 0 < self.hbar < 1:
            raise ValueError(f"QSM_HBAR must lie in (0, 1), got {self.hbar}")
        if self.nmax < 1:
            raise ValueError(f"QSM_NMAX must be positive, got {self.nmax}")
        if self.mmax < 0:
            raise ValueError(f"QSM_MMAX must be non-negative, got {self.mmax}")
        if not self.beta_grid:
            raise ValueError("QSM_BETA_GRID must contain at least one beta")
        if self.tolerance <= 0:
            raise ValueError(f"QSM_TOLERANCE must be positive, got {self.tolerance}")
        return True


@dataclass
class MultiSettings:
    det_cap: int = 200
    basis_box: int = 3

    @classmethod
    def from_env(cls) -> "MultiSettings":
        return cls(
            det_cap=_env_int("MULTI_DET_CAP", 200),
            basis_box=_env_int("MULTI_BASIS_BOX", 3),
        )

    def validate(self) -> bool:
        if self.det_cap < 1:
            raise ValueError(f"MULTI_DET_CAP must be positive, got {self.det_cap}")
        if self.basis_box < 1:
            raise ValueError(f"MULTI_BASIS_BOX must be positive, got {self.basis_box}")
        return True


@dataclass
class MZVSettings:
    hmax: float = 10000.0
    allow_divergent: bool = False

    @classmethod
    def from_env(cls) -> "MZVSettings":
        return cls(
            hmax=_env_float("MZV_HMAX", 10000.0),
            allow_divergent=_env_bool("MZV_ALLOW_DIVERGENT"),
        )

    def validate(self) -> bool:
        if self.hmax <= 0:
            raise ValueError(f"MZV_HMAX must be positive, got {self.hmax}")
        return True


@dataclass
class OutputSettings:
    format: str = "json"
    schema: str = SCHEMA_VERSION

    @classmethod
    def from_env(cls) -> "OutputSettings":
        return cls(format=os.getenv("OUTPUT_FORMAT", "json").lower())

    def validate(self) -> bool:
        # Local import keeps config importable without the formatter package
        from modules.formatters import FormatterFactory

        if self.format not in FormatterFactory.get_supported_formats():
            raise ValueError(
                f"Invalid OUTPUT_FORMAT: {self.format}. "
                f"Must be one of {FormatterFactory.get_supported_formats()}"
            )
        return True


@dataclass
class AppConfig:
    qsm: QSMSettings = field(default_factory=QSMSettings)
    multi: MultiSettings = field(default_factory=MultiSettings)
    mzv: MZVSettings = field(default_factory=MZVSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    log_level: str = "INFO"
    log_dir: Optional[str] = "logs"
    repro_config_file: Optional[str] = None
    repro: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @classmethod
    def from_env(cls) -> "AppConfig":
        log_level = os.getenv("LOG_LEVEL", "INFO").upper()
        if log_level not in ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]:
            logger.warning(f"Invalid LOG_LEVEL value: {log_level}, falling back to INFO")
            log_level = "INFO"

        log_dir = os.getenv("LOG_DIR", "logs") or None

        repro_file = os.getenv("REPRO_CONFIG_FILE")
        if not repro_file:
            for name in ("repro.yaml", "repro.yml", "repro.json"):
                candidate = os.path.join(os.getcwd(), name)
                if os.path.exists(candidate):
                    repro_file = candidate
                    break

        config = cls(
            qsm=QSMSettings.from_env(),
            multi=MultiSettings.from_env(),
            mzv=MZVSettings.from_env(),
            output=OutputSettings.from_env(),
            log_level=log_level,
            log_dir=log_dir,
            repro_config_file=repro_file,
            repro=load_repro_file(repro_file),
        )
        config.validate()
        return config

    def validate(self) -> bool:
        self.qsm.validate()
        self.multi.validate()
        self.mzv.validate()
        self.output.validate()
        return True

    def suite_params(self, suite: str) -> Dict[str, Any]:
        """Per-suite overrides from the repro file, empty if none"""
        params = self.repro.get(suite) or {}
        if not isinstance(params, dict):
            logger.warning(f"Ignoring non-mapping repro overrides for suite '{suite}'")
            return {}
        return params

    def to_dict(self) -> dict:
        return {
            "qsm": {
                "hbar": self.qsm.hbar,
                "nmax": self.qsm.nmax,
                "mmax": self.qsm.mmax,
                "beta_grid": list(self.qsm.beta_grid),
                "tolerance": self.qsm.tolerance,
                "embedding": self.qsm.embedding,
            },
            "multi": {"det_cap": self.multi.det_cap, "basis_box": self.multi.basis_box},
            "mzv": {"hmax": self.mzv.hmax, "allow_divergent": self.mzv.allow_divergent},
            "output": {"format": self.output.format, "schema": self.output.schema},
            "log_level": self.log_level,
            "repro_config_file": self.repro_config_file,
        }


def load_repro_file(path: Optional[str]) -> Dict[str, Dict[str, Any]]:
    """Suite overrides keyed by suite name; missing or broken files give {}"""
    if not path:
        return {}
    if not os.path.exists(path):
        logger.warning(f"Repro config file not found at {path}, using defaults")
        return {}
    try:
        data = _load_file(path)
    except RuntimeError as e:
        logger.warning(f"Cannot read repro config {path}: {e}; using defaults")
        return {}
    except (OSError, ValueError) as e:
        logger.error(f"Failed to parse repro config {path}: {e}")
        return {}
    if not isinstance(data, dict):
        logger.error(f"Repro config {path} must be a mapping of suite names")
        return {}
    logger.info(f"Loaded repro config from {path} (suites: {list(data.keys())})")
    return data


def _load_file(path: str) -> Dict:
    _, ext = os.path.splitext(path)
    if ext.lower() in {".yaml", ".yml"}:
        try:
            import yaml  # type: ignore
        except ImportError as exc:
            raise RuntimeError(
                "PyYAML is required to parse YAML repro files. "
                "Install with `pip install pyyaml` or use JSON."
            ) from exc
        with open(path, "r") as f:
            try:
                return yaml.safe_load(f) or {}
            except yaml.YAMLError as exc:
                raise ValueError(str(exc)) from exc
    with open(path, "r") as f:
        return json.load(f)
