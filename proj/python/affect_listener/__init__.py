"""Python access to the affect_listener perception, dialogue and analysis code."""

from pathlib import Path
from typing import Optional

from ._core import Runtime as _Runtime, default_data_dir as _default_data_dir

__all__ = ["Runtime", "data_dir", "load"]


def data_dir() -> str:
    """Bundled data shipped with the wheel, else the build's source tree."""
    packaged = Path(__file__).with_name("data")
    return str(packaged) if packaged.is_dir() else _default_data_dir()


Runtime = _Runtime


def load(data: Optional[str] = None, classifier: str = "v3_1") -> Runtime:
    return Runtime(data or data_dir(), classifier)
