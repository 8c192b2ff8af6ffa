from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Literal, Tuple

from app.core.errors import PartitionFormatError

Block = Tuple[int, ...]


@dataclass(frozen=True)
class SetPartition:
    """Partición de {1..n} en bloques, siempre en forma canónica.

    Los bloques se ordenan por su mínimo y los elementos de cada bloque en
    orden ascendente. n = 0 es la partición vacía (sin bloques).
    """

    n: int
    blocks: Tuple[Block, ...]
    _labels: Tuple[int, ...] = field(default=(), repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise PartitionFormatError("n no puede ser negativo.")

        canon = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen = set()
        for b in canon:
            if not b:
                raise PartitionFormatError("Los bloques no pueden ser vacíos.")
            for e in b:
                if e < 1 or e > self.n:
                    raise PartitionFormatError(f"El elemento {e} está fuera de 1..{self.n}.")
                if e in seen:
                    raise PartitionFormatError(f"El elemento {e} aparece dos veces.")
                seen.add(e)
        if len(seen) != self.n:
            faltan = sorted(set(range(1, self.n + 1)) - seen)
            raise PartitionFormatError(f"Faltan elementos en la partición: {faltan}.")

        labels = [0] * self.n
        for idx, b in enumerate(canon):
            for e in b:
                labels[e - 1] = idx
        object.__setattr__(self, "blocks", canon)
        object.__setattr__(self, "_labels", tuple(labels))

    # ------------------------------
    # Constructores
    # ------------------------------

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "SetPartition":
        blocks = [tuple(b) for b in blocks]
        if n is None:
            n = max((max(b) for b in blocks if b), default=0)
        return cls(n=n, blocks=tuple(blocks))

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "SetPartition":
        """Construye desde una etiqueta de bloque por posición (p.ej. un RGS)."""
        groups: Dict[int, List[int]] = {}
        labels = list(labels)
        for pos, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(pos)
        return cls(n=len(labels), blocks=tuple(tuple(g) for g in groups.values()))

    @classmethod
    def zero(cls, n: int) -> "SetPartition":
        return cls(n=n, blocks=tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def one(cls, n: int) -> "SetPartition":
        return cls(n=n, blocks=(tuple(range(1, n + 1)),) if n else ())

    # ------------------------------
    # Helpers
    # ------------------------------

    def __len__(self) -> int:
        return len(self.blocks)

    def block_index(self, i: int) -> int:
        return self._labels[i - 1]

    def same_block(self, i: int, j: int) -> bool:
        return self._labels[i - 1] == self._labels[j - 1]

    def block_of(self, i: int) -> Block:
        return self.blocks[self._labels[i - 1]]

    def block_sizes(self) -> List[int]:
        return [len(b) for b in self.blocks]

    def labels(self) -> Tuple[int, ...]:
        """Restricted growth string (0-based) de la partición."""
        return self._labels

    def is_zero(self) -> bool:
        return len(self.blocks) == self.n

    def is_one(self) -> bool:
        return len(self.blocks) <= 1

    def to_json(self) -> List[List[int]]:
        return [list(b) for b in self.blocks]

    def __str__(self) -> str:
        return "|".join(" ".join(str(e) for e in b) for b in self.blocks)


Role = Literal["inner", "outer"]


@dataclass(frozen=True)
class BlockRoleLabeling:
    partition: SetPartition
    roles: Tuple[Role, ...]   # un rol por bloque, en el orden canónico
    inner_count: int
    outer_count: int

    def is_inner(self, block_idx: int) -> bool:
        return self.roles[block_idx] == "inner"

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "roles": list(self.roles),
            "inner": self.inner_count,
            "outer": self.outer_count,
        }
