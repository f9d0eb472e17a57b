# /src/depnet/storage/files.py
# Async load/save of the text formats (aiofiles)

from pathlib import Path
from typing import Callable, TypeVar, Union

try:
    import aiofiles
    import aiofiles.os
    HAS_AIOFILES = True
except ImportError:
    HAS_AIOFILES = False

from .formats import (
    format_bayesnet,
    format_dataset,
    format_depnet,
    format_joint,
    parse_bayesnet,
    parse_dataset,
    parse_depnet,
    parse_joint,
)
from ..core.dataset import Dataset
from ..core.joint import JointTable
from ..models.bayesnet import BayesianNetwork
from ..models.depnet import DependencyNetwork

PathLike = Union[str, Path]
T = TypeVar("T")


def _require_aiofiles() -> None:
    if not HAS_AIOFILES:
        raise ImportError("aiofiles is required for file IO. Install with: pip install aiofiles")


async def write_text(path: PathLike, text: str) -> None:
    """Write ``text``, creating parent directories as needed."""
    _require_aiofiles()
    path = Path(path)
    if str(path.parent) not in ("", "."):
        await aiofiles.os.makedirs(path.parent, exist_ok=True)
    async with aiofiles.open(path, "w") as f:
        await f.write(text)


async def read_text(path: PathLike) -> str:
    _require_aiofiles()
    async with aiofiles.open(Path(path), "r") as f:
        return await f.read()


async def _load(path: PathLike, parse: Callable[[str], T]) -> T:
    return parse(await read_text(path))


async def save_dataset(path: PathLike, d: Dataset) -> None:
    await write_text(path, format_dataset(d))


async def load_dataset(path: PathLike) -> Dataset:
    return await _load(path, parse_dataset)


async def save_depnet(path: PathLike, dn: DependencyNetwork) -> None:
    await write_text(path, format_depnet(dn))


async def load_depnet(path: PathLike) -> DependencyNetwork:
    return await _load(path, parse_depnet)


async def save_bayesnet(path: PathLike, bn: BayesianNetwork) -> None:
    await write_text(path, format_bayesnet(bn))


async def load_bayesnet(path: PathLike) -> BayesianNetwork:
    return await _load(path, parse_bayesnet)


async def save_joint(path: PathLike, p: JointTable) -> None:
    await write_text(path, format_joint(p))


async def load_joint(path: PathLike) -> JointTable:
    return await _load(path, parse_joint)
