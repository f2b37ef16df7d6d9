"""Location of bundled fixture files; ``NELSON_S_FIXTURES`` overrides it."""
from __future__ import annotations

import os
from pathlib import Path

ENV_VAR = "NELSON_S_FIXTURES"


def fixture_root() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def fixture_path(*parts: str) -> Path:
    return fixture_root().joinpath(*parts)


def read_text(*parts: str) -> str:
    return fixture_path(*parts).read_text(encoding="utf-8")
