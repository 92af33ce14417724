"""Rational incomplete Mackey functors: transfer systems, Burnside idempotents and splittings."""

from .burnside import BurnsideElement, idempotent, idempotent_oracle, idempotents
from .groups import FiniteGroup, SubgroupLattice, build_group, load_group, named_group
from .insep import Partition, hull, partition
from .mackey import MackeyFunctor, burnside_mackey, represented_mackey, split
from .transfer import TransferSystem, enumerate_all, generate, parse_pair, validate

__version__ = "0.1.0"

__all__ = [
    "BurnsideElement", "FiniteGroup", "MackeyFunctor", "Partition", "SubgroupLattice",
    "TransferSystem", "build_group", "burnside_mackey", "enumerate_all", "generate", "hull",
    "idempotent", "idempotent_oracle", "idempotents", "load_group", "named_group", "parse_pair",
    "partition",
    "represented_mackey", "split", "validate",
]
