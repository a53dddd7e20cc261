import time
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field

from utils.constants import TOOLKIT_VERSION


class RunManifest(BaseModel):
    """What ran, on which inputs, producing which outputs."""

    command: str
    config: Optional[str] = None
    inputs: List[str] = Field(default_factory=list)
    outputs: List[str] = Field(default_factory=list)
    seed: Optional[int] = None
    toolkit_version: str = TOOLKIT_VERSION
    started_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    wall_clock_seconds: float = 0.0


class ManifestTimer:
    """Context manager stamping the wall-clock time of a command onto its manifest."""

    def __init__(self, manifest: RunManifest):
        self.manifest = manifest
        self._start = 0.0

    def __enter__(self) -> RunManifest:
        self._start = time.perf_counter()
        return self.manifest

    def __exit__(self, *exc):
        self.manifest.wall_clock_seconds = round(time.perf_counter() - self._start, 6)
        return False


def manifest_path(output: Union[str, Path]) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


def write_manifest(manifest: RunManifest, next_to: Union[str, Path]) -> Path:
    path = manifest_path(next_to)
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8", newline="\n")
    return path
