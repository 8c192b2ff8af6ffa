from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal, Optional

from app.models.sequences import CumulantSeq, MomentSeq, as_fraction, format_rational

ProcessKind = Literal["semicircular", "free-poisson", "compound-poisson", "custom"]


@dataclass(frozen=True)
class ProcessModel:
    """Proceso estacionario de incrementos libres, evaluado en t = |A|.

    La distribución queda fijada por los cumulantes libres por unidad de
    tiempo; la esperanza es cumulant_at(1).
    """

    kind: ProcessKind
    t: Fraction = Fraction(1)
    centered: bool = False
    generator: Optional[MomentSeq] = None   # solo compound-poisson
    base: Optional[CumulantSeq] = None      # solo custom

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))
        if self.t < 0:
            raise ValueError("El tiempo t debe ser ≥ 0.")
        if self.kind == "compound-poisson" and self.generator is None:
            raise ValueError("compound-poisson necesita un generador (MomentSeq).")
        if self.kind == "custom" and self.base is None:
            raise ValueError("custom necesita una secuencia de cumulantes base.")
        if self.kind not in ("semicircular", "free-poisson", "compound-poisson", "custom"):
            raise ValueError(f"Tipo de proceso desconocido: '{self.kind}'.")

    # ------------------------------
    # Constructores
    # ------------------------------

    @classmethod
    def semicircular(cls, t=1) -> "ProcessModel":
        return cls(kind="semicircular", t=t)

    @classmethod
    def free_poisson(cls, t=1, centered: bool = False) -> "ProcessModel":
        return cls(kind="free-poisson", t=t, centered=centered)

    @classmethod
    def compound_poisson(cls, generator: MomentSeq, t=1, centered: bool = False) -> "ProcessModel":
        return cls(kind="compound-poisson", t=t, centered=centered, generator=generator)

    @classmethod
    def custom(cls, base: CumulantSeq, t=1, centered: bool = False) -> "ProcessModel":
        return cls(kind="custom", t=t, centered=centered, base=base)

    # ------------------------------
    # Cumulantes
    # ------------------------------

    def cumulant_at(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("Los cumulantes empiezan en n = 1.")
        if n == 1 and self.centered:
            return Fraction(0)
        if self.kind == "semicircular":
            return self.t if n == 2 else Fraction(0)
        if self.kind == "free-poisson":
            return self.t
        if self.kind == "compound-poisson":
            if n > self.generator.order:
                raise ValueError(
                    f"El generador solo tiene {self.generator.order} momentos; se pidió m_{n}."
                )
            return self.t * self.generator[n]
        if n > self.base.order:
            raise ValueError(f"La base solo tiene {self.base.order} cumulantes; se pidió r_{n}.")
        return self.t * self.base[n]

    @property
    def expectation(self) -> Fraction:
        return self.cumulant_at(1)

    @property
    def max_order(self) -> Optional[int]:
        """Último cumulante disponible (None = todos)."""
        if self.kind == "compound-poisson":
            return self.generator.order
        if self.kind == "custom":
            return self.base.order
        return None

    def cumulants(self, order: int) -> CumulantSeq:
        return CumulantSeq(tuple(self.cumulant_at(n) for n in range(1, order + 1)))

    def centered_version(self) -> "ProcessModel":
        return replace(self, centered=True)

    def with_time(self, t) -> "ProcessModel":
        return replace(self, t=as_fraction(t))

    def label(self) -> str:
        parts = [self.kind, f"t={format_rational(self.t)}"]
        if self.centered:
            parts.append("centered")
        return ",".join(parts)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "t": format_rational(self.t), "centered": self.centered}
        if self.generator is not None:
            out["generator"] = self.generator.to_json()
        if self.base is not None:
            out["base"] = self.base.to_json()
        return out
