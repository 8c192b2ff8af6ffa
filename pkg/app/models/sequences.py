from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from app.core.errors import SeriesNotInvertible

Rational = Fraction


def as_fraction(value) -> Fraction:
    """Acepta int, Fraction o texto "p/q"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("Un booleano no es un racional.")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"'{value}' no es un racional válido (use 'p/q' o un entero).")
    raise ValueError(f"Tipo no soportado para un racional: {type(value).__name__}.")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fractions(values: Iterable) -> Tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


@dataclass(frozen=True)
class MomentSeq:
    """m_1, …, m_L; m_0 = 1 implícito."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _fractions(self.values))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(1)
        if n < 0 or n > self.order:
            raise IndexError(f"m_{n} fuera del orden de truncamiento {self.order}.")
        return self.values[n - 1]

    def truncate(self, order: int) -> "MomentSeq":
        return MomentSeq(self.values[:order])

    def to_json(self) -> List[str]:
        return [format_rational(v) for v in self.values]


@dataclass(frozen=True)
class CumulantSeq:
    """r_1, …, r_L."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _fractions(self.values))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        if n < 1 or n > self.order:
            raise IndexError(f"r_{n} fuera del orden de truncamiento {self.order}.")
        return self.values[n - 1]

    def __add__(self, other: "CumulantSeq") -> "CumulantSeq":
        k = min(self.order, other.order)
        return CumulantSeq(tuple(a + b for a, b in zip(self.values[:k], other.values[:k])))

    def truncate(self, order: int) -> "CumulantSeq":
        return CumulantSeq(self.values[:order])

    def to_json(self) -> List[str]:
        return [format_rational(v) for v in self.values]


@dataclass(frozen=True)
class SeriesQ:
    """Serie formal truncada Σ_{k≤L} c_k z^k con coeficientes racionales exactos."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = _fractions(self.coefficients)
        if not coeffs:
            raise ValueError("Una serie necesita al menos el coeficiente c_0.")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        return self.coefficients[k] if k <= self.order else Fraction(0)

    @classmethod
    def identity(cls, order: int) -> "SeriesQ":
        return cls(tuple(Fraction(1 if k == 1 else 0) for k in range(order + 1)))

    @classmethod
    def constant(cls, c, order: int) -> "SeriesQ":
        return cls((as_fraction(c),) + (Fraction(0),) * order)

    def _common(self, other: "SeriesQ") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "SeriesQ") -> "SeriesQ":
        L = self._common(other)
        return SeriesQ(tuple(self[k] + other[k] for k in range(L + 1)))

    def __sub__(self, other: "SeriesQ") -> "SeriesQ":
        L = self._common(other)
        return SeriesQ(tuple(self[k] - other[k] for k in range(L + 1)))

    def __mul__(self, other) -> "SeriesQ":
        if not isinstance(other, SeriesQ):
            c = as_fraction(other)
            return SeriesQ(tuple(c * a for a in self.coefficients))
        L = self._common(other)
        out = [Fraction(0)] * (L + 1)
        for i in range(L + 1):
            if self[i] == 0:
                continue
            for j in range(L + 1 - i):
                out[i + j] += self[i] * other[j]
        return SeriesQ(tuple(out))

    __rmul__ = __mul__

    def times_z(self) -> "SeriesQ":
        """z·f, conservando el orden + 1."""
        return SeriesQ((Fraction(0),) + self.coefficients)

    def divide_z(self) -> "SeriesQ":
        """f/z; requiere c_0 = 0 y pierde un orden."""
        if self[0] != 0:
            raise SeriesNotInvertible("f/z requiere c_0 = 0.")
        return SeriesQ(self.coefficients[1:] or (Fraction(0),))

    def reciprocal(self) -> "SeriesQ":
        """1/f; requiere c_0 ≠ 0."""
        if self[0] == 0:
            raise SeriesNotInvertible("1/f requiere c_0 ≠ 0.")
        out = [Fraction(1) / self[0]]
        for k in range(1, self.order + 1):
            acc = sum((self[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
            out.append(-acc / self[0])
        return SeriesQ(tuple(out))

    def compose(self, inner: "SeriesQ") -> "SeriesQ":
        """f(g(z)); requiere g(0) = 0."""
        if inner[0] != 0:
            raise SeriesNotInvertible("La composición requiere g(0) = 0.")
        L = self._common(inner)
        result = SeriesQ.constant(self[L], L)
        # Horner: f(g) = c_0 + g(c_1 + g(c_2 + …))
        for k in range(L - 1, -1, -1):
            result = result * inner + SeriesQ.constant(self[k], L)
        return result

    def reversion(self) -> "SeriesQ":
        """Inversa composicional: g con f(g(w)) = w mod w^{L+1}."""
        if self[0] != 0:
            raise SeriesNotInvertible("La inversa composicional requiere c_0 = 0.")
        if self.order < 1 or self[1] == 0:
            raise SeriesNotInvertible("La inversa composicional requiere c_1 ≠ 0.")
        L = self.order
        a1 = self[1]
        g = [Fraction(0), Fraction(1) / a1] + [Fraction(0)] * (L - 1)
        # coeficiente a coeficiente
        for k in range(2, L + 1):
            err = self.compose(SeriesQ(tuple(g)))[k]
            g[k] -= err / a1
        return SeriesQ(tuple(g))

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self.coefficients]
