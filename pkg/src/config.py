import os
from pydantic import BaseModel, Field, ValidationError
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseModel):
    # Run journal (JSONL, one line per CLI invocation)
    run_log_enabled: bool = Field(False, alias="RUN_LOG")
    run_log_path: str = Field("data/runs.jsonl", alias="RUN_LOG_PATH")
    run_log_max_hours: int = Field(24, ge=1, alias="RUN_LOG_MAX_HOURS")
    run_log_carry_hours: int = Field(3, ge=0, alias="RUN_LOG_CARRY_HOURS")

    # Rendering
    svg_unit: float = Field(24.0, ge=4, le=200, alias="SVG_UNIT")  # pixels per grid unit
    svg_line_width: float = Field(1.5, gt=0, le=10, alias="SVG_LINE_WIDTH")

    # Randomized self-test
    selftest_seed: int = Field(0, ge=0, alias="SELFTEST_SEED")
    selftest_cases: int = Field(50, ge=1, le=10000, alias="SELFTEST_CASES")
    selftest_workers: int = Field(1, ge=1, le=32, alias="SELFTEST_WORKERS")
    corpus_max_events: int = Field(40, ge=4, le=400, alias="CORPUS_MAX_EVENTS")

    # https://no-color.org: any non-empty value disables ANSI styling
    no_color: str = Field("", alias="NO_COLOR")

    @property
    def color_disabled(self) -> bool:
        return bool(self.no_color)


def load_settings() -> Settings:
    try:
        return Settings(**os.environ)
    except ValidationError as exc:
        invalid = {str(err['loc'][0]) for err in exc.errors()}
        msg = f"Missing or invalid env vars: {', '.join(sorted(invalid))}"
        raise RuntimeError(msg) from exc
