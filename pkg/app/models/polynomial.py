from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Tuple, Union

from sympy import Poly, Rational, Symbol

from app.models.sequences import as_fraction, format_rational

# X conmuta con todo; t es el parámetro escalar φ(X) (o |A|)
X = Symbol("X")
T = Symbol("t")

Word = Tuple[int, ...]
ScalarPolynomial = Poly   # polinomio en (X, t) sobre QQ
Coefficient = Union[int, Fraction, Poly]


def to_rational(q) -> Rational:
    q = as_fraction(q)
    return Rational(q.numerator, q.denominator)


def to_fraction(r) -> Fraction:
    r = Rational(r)
    return Fraction(int(r.p), int(r.q))


def t_poly(value: Coefficient) -> Poly:
    """Coeficiente en ℚ[t]."""
    if isinstance(value, Poly):
        return Poly(value.as_expr(), T, domain="QQ")
    return Poly(to_rational(value), T, domain="QQ")


def t_power(k: int) -> Poly:
    return Poly(T**k, T, domain="QQ")


def scalar(expr) -> ScalarPolynomial:
    return Poly(expr, X, T, domain="QQ")


def scalar_to_json(p: ScalarPolynomial) -> Dict[str, str]:
    """{"i,j": c} para c·X^i t^j, en orden descendente."""
    p = scalar(p.as_expr())
    return {f"{i},{j}": format_rational(to_fraction(c)) for (i, j), c in sorted(p.terms(), reverse=True)}


def scalar_coefficients_in_x(p: ScalarPolynomial) -> List[Poly]:
    """Coeficientes de X^0, X^1, … como polinomios en t."""
    p = scalar(p.as_expr())
    deg = p.degree(X)
    out = [Poly(0, T, domain="QQ") for _ in range(max(deg, 0) + 1)]
    for (i, j), c in p.terms():
        out[i] = out[i] + Poly(c * T**j, T, domain="QQ")
    return out


@dataclass(frozen=True, eq=False)
class DiagonalPolynomial:
    """Polinomio no conmutativo en Δ_1, Δ_2, … con coeficientes en ℚ[t].

    La palabra (k_1, …, k_m) es Δ_{k_1}⋯Δ_{k_m}; la palabra vacía es 1.
    """

    terms: Mapping[Word, Poly] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[Word, Poly] = {}
        for word, coef in dict(self.terms).items():
            word = tuple(int(k) for k in word)
            if any(k < 1 for k in word):
                raise ValueError(f"Palabra inválida {word}: los índices de Δ empiezan en 1.")
            c = t_poly(coef)
            if not c.is_zero:
                clean[word] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def one(cls) -> "DiagonalPolynomial":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "DiagonalPolynomial":
        return cls()

    @classmethod
    def delta(cls, k: int) -> "DiagonalPolynomial":
        """Δ_k; Δ_0 = 1."""
        if k < 0:
            raise ValueError("k debe ser ≥ 0.")
        return cls.one() if k == 0 else cls({(k,): 1})

    @classmethod
    def word(cls, word: Word, coefficient: Coefficient = 1) -> "DiagonalPolynomial":
        return cls({tuple(word): coefficient})

    # ------------------------------
    # Aritmética
    # ------------------------------

    def __add__(self, other: "DiagonalPolynomial") -> "DiagonalPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return DiagonalPolynomial(out)

    def __neg__(self) -> "DiagonalPolynomial":
        return DiagonalPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "DiagonalPolynomial") -> "DiagonalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "DiagonalPolynomial":
        if not isinstance(other, DiagonalPolynomial):
            c = t_poly(other)
            return DiagonalPolynomial({w: v * c for w, v in self.terms.items()})
        out: Dict[Word, Poly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                prod = c1 * c2
                out[w] = out[w] + prod if w in out else prod
        return DiagonalPolynomial(out)

    def __rmul__(self, other) -> "DiagonalPolynomial":
        # escalares y ℚ[t] conmutan con las palabras
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagonalPolynomial):
            return NotImplemented
        return self.terms.keys() == other.terms.keys() and all(
            self.terms[w] == other.terms[w] for w in self.terms
        )

    __hash__ = None

    def __iter__(self) -> Iterator[Tuple[Word, Poly]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Máximo grado total Σ k_j de las palabras."""
        return max((sum(w) for w in self.terms), default=0)

    def coefficient(self, word: Word) -> Poly:
        return self.terms.get(tuple(word), Poly(0, T, domain="QQ"))

    def substitute_t(self, value) -> "DiagonalPolynomial":
        v = to_rational(value)
        return DiagonalPolynomial({w: Poly(c.eval(v), T, domain="QQ") for w, c in self.terms.items()})

    def reduce_commutative(self, image: Callable[[int], object]) -> ScalarPolynomial:
        """Cociente conmutativo: Δ_k ↦ image(k), una expresión en X y t."""
        cache: Dict[int, ScalarPolynomial] = {}
        total = scalar(0)
        for w, c in self.terms.items():
            term = scalar(c.as_expr())
            for k in w:
                if k not in cache:
                    cache[k] = scalar(image(k))
                term = term * cache[k]
            total = total + term
        return total

    def to_json(self) -> List[dict]:
        return [
            {
                "word": list(w),
                "coefficient": [format_rational(to_fraction(c)) for c in coef.all_coeffs()],
            }
            for w, coef in self.terms.items()
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            mono = "".join(f"Δ{k}" for k in w) or "1"
            coef = str(c.as_expr())
            if coef == "1":
                parts.append(mono)
            elif coef == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"({coef})*{mono}" if mono != "1" else f"({coef})")
        return " + ".join(parts)
