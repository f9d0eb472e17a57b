# /src/depnet/config.py
# RunSettings - the global CLI flags, plus logging and ledger selection

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from .learning.penalty import PenaltyKind
from .storage.base import EventStore
from .storage.json_store import JSONEventStore
from .storage.memory_store import MemoryEventStore
from .storage.sqlite_store import SQLiteEventStore

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class RunSettings:
    """Flags shared by every subcommand."""
    seed: int = 0
    pen: PenaltyKind = PenaltyKind.MDL
    positivity: bool = True
    out: Optional[str] = None
    ledger: Optional[str] = None
    verbose: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pen", PenaltyKind(self.pen))

    @classmethod
    def from_args(cls, args: Any) -> "RunSettings":
        """Build from an argparse namespace (``--positivity on|off``)."""
        return cls(
            seed=args.seed,
            pen=PenaltyKind(args.penalty),
            positivity=args.positivity == "on",
            out=args.out,
            ledger=args.ledger,
            verbose=args.verbose,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "pen": self.pen.value,
            "positivity": self.positivity,
            "out": self.out,
            "ledger": self.ledger,
            "verbose": self.verbose,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunSettings":
        return cls(**data)


def open_store(ledger: Optional[str]) -> EventStore:
    """No path keeps the ledger in memory; ``*.db`` is SQLite; anything else a JSON Lines directory."""
    if not ledger:
        return MemoryEventStore()
    if ledger.endswith(".db"):
        return SQLiteEventStore(ledger)
    return JSONEventStore(ledger)


def configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format=LOG_FORMAT)
