from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from app.models.process import ProcessModel
from app.models.sequences import CumulantSeq, MomentSeq, as_fraction

# alias aceptados en la línea de comandos
KIND_ALIASES = {
    "semicircular": "semicircular",
    "brownian": "semicircular",
    "poisson": "free-poisson",
    "free-poisson": "free-poisson",
    "compound": "compound-poisson",
    "compound-poisson": "compound-poisson",
    "custom": "custom",
}


class ProcessSpec(BaseModel):
    kind: Literal["semicircular", "free-poisson", "compound-poisson", "custom"]
    t: str = Field("1", description="racional 'p/q' o entero, t ≥ 0")
    centered: bool = False
    generator: Optional[List[str]] = Field(None, description="momentos m_1.. del generador")
    base: Optional[List[str]] = Field(None, description="cumulantes por unidad de tiempo")

    @field_validator("kind", mode="before")
    @classmethod
    def normalize_kind(cls, value):
        key = str(value).strip().lower()
        if key not in KIND_ALIASES:
            raise ValueError(f"Proceso desconocido '{value}'. Opciones: {', '.join(sorted(KIND_ALIASES))}.")
        return KIND_ALIASES[key]

    @field_validator("t")
    @classmethod
    def check_t(cls, value: str) -> str:
        if as_fraction(value) < 0:
            raise ValueError("t debe ser ≥ 0.")
        return value

    @model_validator(mode="after")
    def check_sequences(self):
        if self.kind == "compound-poisson" and not self.generator:
            raise ValueError("compound-poisson necesita --generator.")
        if self.kind == "custom" and not self.base:
            raise ValueError("custom necesita --base.")
        return self

    def to_model(self) -> ProcessModel:
        if self.kind == "compound-poisson":
            return ProcessModel.compound_poisson(
                MomentSeq(tuple(as_fraction(v) for v in self.generator)), t=self.t, centered=self.centered
            )
        if self.kind == "custom":
            return ProcessModel.custom(
                CumulantSeq(tuple(as_fraction(v) for v in self.base)), t=self.t, centered=self.centered
            )
        return ProcessModel(kind=self.kind, t=as_fraction(self.t), centered=self.centered)
