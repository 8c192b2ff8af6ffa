from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional

from app.models.sequences import as_fraction, format_rational


@dataclass(frozen=True)
class LaurentInN:
    """Combinación finita Σ c_k N^k (k ∈ ℤ) con coeficientes racionales."""

    terms: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): as_fraction(v) for k, v in dict(self.terms).items()}
        object.__setattr__(self, "terms", {k: v for k, v in sorted(clean.items()) if v != 0})

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "LaurentInN":
        return cls({exponent: as_fraction(coefficient)})

    @classmethod
    def falling_factorial(cls, m: int) -> "LaurentInN":
        """(N)_m = N(N−1)⋯(N−m+1) desarrollado."""
        out = cls.monomial(0, 1)
        for j in range(m):
            out = out * cls({1: Fraction(1), 0: Fraction(-j)})
        return out

    def __add__(self, other: "LaurentInN") -> "LaurentInN":
        out: Dict[int, Fraction] = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LaurentInN(out)

    def __mul__(self, other) -> "LaurentInN":
        if not isinstance(other, LaurentInN):
            c = as_fraction(other)
            return LaurentInN({k: c * v for k, v in self.terms.items()})
        out: Dict[int, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, Fraction(0)) + x * y
        return LaurentInN(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentInN) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_exponent(self) -> Optional[int]:
        return max(self.terms) if self.terms else None

    def is_divergent(self) -> bool:
        return any(k > 0 for k in self.terms)

    def limit_at_infinity(self) -> Fraction:
        if self.is_divergent():
            raise ValueError("La expresión diverge cuando N → ∞.")
        return self.terms.get(0, Fraction(0))

    def evaluate(self, N: int) -> Fraction:
        return sum((v * Fraction(N) ** k for k, v in self.terms.items()), Fraction(0))

    def to_json(self) -> Dict[str, str]:
        return {str(k): format_rational(v) for k, v in sorted(self.terms.items(), reverse=True)}
