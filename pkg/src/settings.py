import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


def _flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() not in ("0", "false", "no", "off", "")


class Settings(BaseModel):
    """Run-time configuration; every field can be overridden from the environment."""

    log_dir: str = "data/logs"
    session_log: bool = True
    output_dir: str = "data/synth"
    max_len: int = Field(default=12, ge=0, le=20)
    pump_checks: int = Field(default=8, ge=0)
    sample_cap: int = Field(default=10, ge=0, le=20)
    marking_depth: int = Field(default=10, ge=0, le=16)
    prefix_window: int = Field(default=50, ge=1)

    @classmethod
    def from_env(cls) -> "Settings":
        defaults = cls()
        return cls(
            log_dir=os.getenv("ORDLEX_LOG_DIR", defaults.log_dir),
            session_log=_flag("ORDLEX_SESSION_LOG", defaults.session_log),
            output_dir=os.getenv("ORDLEX_OUTPUT_DIR", defaults.output_dir),
            max_len=int(os.getenv("ORDLEX_MAXLEN", defaults.max_len)),
            pump_checks=int(os.getenv("ORDLEX_PUMP_CHECKS", defaults.pump_checks)),
            sample_cap=int(os.getenv("ORDLEX_SAMPLE_CAP", defaults.sample_cap)),
            marking_depth=int(os.getenv("ORDLEX_MARKING_DEPTH", defaults.marking_depth)),
            prefix_window=int(os.getenv("ORDLEX_PREFIX_WINDOW", defaults.prefix_window)),
        )
