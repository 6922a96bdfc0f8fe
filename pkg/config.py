import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path

from dotenv import load_dotenv
from sympy import isprime

from contracts import FieldError
from exactfield.linalg import MAX_PRIME

DEFAULT_PRIME = 32003
DEFAULT_CATALOG = Path(__file__).with_name("catalog") / "data" / "catalog.json"


@dataclass(frozen=True)
class Settings:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    trials: int = 500
    window: tuple[int, int] | None = None
    catalog_path: Path = DEFAULT_CATALOG
    log_level: str = "WARNING"


def parse_window(text: str | None) -> tuple[int, int] | None:
    if text is None or text.strip() == "":
        return None
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise FieldError(f"window must look like LO:HI, got {text!r}")
    if lo > hi:
        raise FieldError(f"empty window {text!r}")
    return lo, hi


def check_prime(p: int) -> int:
    if p < 3 or not isprime(p):
        raise FieldError(f"{p} is not an odd prime")
    if p > MAX_PRIME:
        raise FieldError(f"{p} is too large; residues are multiplied in int64, so p must stay below 2^31")
    return p


def load_settings(**overrides) -> Settings:
    load_dotenv(dotenv_path=Path(__file__).with_name(".env"))

    settings = Settings(
        prime=int(os.getenv("GGB_PRIME") or DEFAULT_PRIME),
        seed=int(os.getenv("GGB_SEED") or 0),
        trials=int(os.getenv("GGB_TRIALS") or 500),
        window=parse_window(os.getenv("GGB_WINDOW")),
        catalog_path=Path(os.getenv("GGB_CATALOG") or DEFAULT_CATALOG),
        log_level=(os.getenv("GGB_LOG_LEVEL") or "WARNING").upper(),
    )
    explicit = {k: v for k, v in overrides.items() if v is not None}
    settings = replace(settings, **explicit)
    check_prime(settings.prime)
    return settings


def configure_logging(settings: Settings) -> None:
    logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s")
    logging.getLogger().setLevel(settings.log_level)
