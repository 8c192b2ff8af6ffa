# app/core/config.py
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict

from dotenv import load_dotenv

from app.core.errors import CapExceeded, ConfigError

# Lee variables desde .env si existe (nunca obligatorio)
load_dotenv()

CAP_OVERRIDE_VAR = "NC_FREECALC_CAP_OVERRIDE"
LOG_LEVEL_VAR = "NC_FREECALC_LOG_LEVEL"
FORMAT_VAR = "NC_FREECALC_DEFAULT_FORMAT"
OUTPUT_FORMATS = ("json", "csv", "text")

# Límites por familia de operación
DEFAULT_CAPS: Dict[str, int] = {
    "all": 12,          # P(n)
    "noncrossing": 14,  # NC(n), sumas sobre NC
    "interval": 30,     # Int(n)
    "crossing": 14,     # crossing_number / refinamientos
    "ks": 12,           # Kailath-Segall, alpha/beta
    "scalar": 20,       # especializaciones escalares
    "compound": 10,     # recursión compound-Poisson
}


@dataclass(frozen=True)
class Settings:
    caps: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CAPS))
    log_level: str = "WARNING"
    default_format: str = "json"

    def cap(self, family: str) -> int:
        return self.caps[family]


def _read_override() -> int | None:
    raw = os.getenv(CAP_OVERRIDE_VAR)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{CAP_OVERRIDE_VAR} debe ser un entero, no '{raw}'.")
    if value < 0:
        raise ConfigError(f"{CAP_OVERRIDE_VAR} no puede ser negativo.")
    return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    override = _read_override()
    caps = dict(DEFAULT_CAPS)
    if override is not None:
        # el override solo sube los límites, nunca los baja
        caps = {k: max(v, override) for k, v in caps.items()}

    fmt = os.getenv(FORMAT_VAR, "json").lower()
    if fmt not in OUTPUT_FORMATS:
        raise ConfigError(f"{FORMAT_VAR} debe ser uno de {', '.join(OUTPUT_FORMATS)}.")

    return Settings(
        caps=caps,
        log_level=os.getenv(LOG_LEVEL_VAR, "WARNING").upper(),
        default_format=fmt,
    )


def require_cap(family: str, n: int) -> None:
    cap = get_settings().cap(family)
    if n > cap:
        raise CapExceeded(family, n, cap)
