"""Access to the shipped resource tables.

Setting ``CMX_RESOURCES`` to a directory makes any same-named file there take
precedence over the packaged copy.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

ENV_VAR = "CMX_RESOURCES"


def read_resource(name: str) -> str:
    override = os.environ.get(ENV_VAR)
    if override:
        path = Path(override) / name
        if path.is_file():
            return path.read_text(encoding="utf-8")
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def parse_tsv_table(text: str) -> tuple[list[tuple[str, str]], str | None]:
    """Parse a two-column TSV with ``#`` comments; returns rows and ``# version:`` tag."""
    rows = []
    version = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("version:"):
                version = body.split(":", 1)[1].strip()
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 2 columns, got {len(parts)}")
        rows.append((parts[0], parts[1]))
    return rows, version
