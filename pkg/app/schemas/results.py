import json
from typing import Any, Dict, List, Literal, Optional

import pandas as pd
from pydantic import BaseModel, Field


class CommandResult(BaseModel):
    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    value: Any = None
    exact: bool = True

    def to_line(self) -> str:
        return json.dumps(self.model_dump(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class PolyTableRow(BaseModel):
    family: str
    n: int
    t: Optional[str] = Field(None, description="t sustituido; None si queda simbólico")
    terms: List[Dict[str, Any]] = Field(..., description="términos {word|monomial, coefficient}")
    kind: Literal["diagonal", "scalar"] = "diagonal"


def _cell(value: Any) -> Any:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return value


def results_to_frame(results: List[CommandResult]) -> pd.DataFrame:
    """Una fila por resultado; los campos anidados se aplanan con '.'."""
    records = [r.model_dump() for r in results]
    frame = pd.json_normalize(records, sep=".")
    frame = frame.reindex(sorted(frame.columns), axis=1)
    return frame.apply(lambda col: col.map(_cell))


def results_to_csv(results: List[CommandResult]) -> str:
    return results_to_frame(results).to_csv(index=False, lineterminator="\n")


def results_to_text(results: List[CommandResult]) -> str:
    """Tabla alineada para lectura en terminal."""
    return results_to_frame(results).to_string(index=False) + "\n"
