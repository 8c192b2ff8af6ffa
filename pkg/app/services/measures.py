import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from sympy import Poly

from app.core.config import require_cap
from app.core.errors import (
    ClosedFormNotAvailable,
    CrossingPartitionError,
    VerificationFailed,
)
from app.core.logs import get_logger
from app.models.laurent import LaurentInN
from app.models.partition import SetPartition
from app.models.polynomial import T, X, scalar_to_json, to_rational
from app.models.process import ProcessModel
from app.models.sequences import as_fraction
from app.services.mobius import lattice_service
from app.services.partitions import (
    classify_blocks,
    covers,
    crossing_number,
    enumerate_all,
    enumerate_noncrossing,
    expand,
    has_inner_singleton,
    is_noncrossing,
    meet,
    noncrossing_refinements,
)
from app.services.transforms import moment_seq_power, moments_from_cumulants

Combination = List[Tuple[Fraction, SetPartition]]

logger = get_logger("measures")


def _require_noncrossing(pi: SetPartition, op: str) -> None:
    if not is_noncrossing(pi):
        raise CrossingPartitionError(f"{op} requiere una partición noncrossing, recibió '{pi}'.")


def _r_product(pi: SetPartition, P: ProcessModel) -> Fraction:
    out = Fraction(1)
    for b in pi.blocks:
        out *= P.cumulant_at(len(b))
        if out == 0:
            break
    return out


# ==============================
# St_π y Pr_π
# ==============================

def st_expectation(pi: SetPartition, P: ProcessModel) -> Fraction:
    """φ(St_π): R_π(X) si π es noncrossing, 0 si tiene cruces."""
    if not is_noncrossing(pi):
        return Fraction(0)
    return _r_product(pi, P)


def pr_expectation(pi: SetPartition, P: ProcessModel) -> Fraction:
    """φ(Pr_π) = Σ_{σ∈NC, σ≥π} φ(St_σ)."""
    return sum((st_expectation(s, P) for s in lattice_service.noncrossing_above(pi)), Fraction(0))


def pr_from_st(pi: SetPartition) -> Combination:
    """Pr_π = Σ_{σ∈NC(k), σ≥π} St_σ."""
    _require_noncrossing(pi, "pr_from_st")
    return [(Fraction(1), s) for s in lattice_service.interval(pi, SetPartition.one(pi.n), "nc")]


def st_from_pr(pi: SetPartition) -> Combination:
    """St_π = Σ_{σ∈NC(k), σ≥π} μ_NC(π, σ) Pr_σ."""
    _require_noncrossing(pi, "st_from_pr")
    table = lattice_service.mobius_table(pi, SetPartition.one(pi.n), "nc")
    return [(mu, s) for s, mu in table.items() if mu != 0]


def substitute(combination: Combination, table) -> Dict[SetPartition, Fraction]:
    """Reemplaza cada σ por table(σ) y agrupa coeficientes."""
    out: Dict[SetPartition, Fraction] = {}
    for coef, sigma in combination:
        for inner_coef, tau in table(sigma):
            out[tau] = out.get(tau, Fraction(0)) + coef * inner_coef
    return {k: v for k, v in out.items() if v != 0}


def evaluate_combination(combination: Combination, P: ProcessModel, kind: Literal["st", "pr"]) -> Fraction:
    fn = st_expectation if kind == "st" else pr_expectation
    return sum((c * fn(s, P) for c, s in combination), Fraction(0))


def multiplicativity_check(pi: SetPartition, P: ProcessModel) -> bool:
    _require_noncrossing(pi, "multiplicativity_check")
    rhs = Fraction(1)
    for b in pi.blocks:
        rhs *= diagonal_cumulant(1, len(b), P)   # φ(Δ_k) = r_k
    return st_expectation(pi, P) == rhs


# ==============================
# Medidas diagonales
# ==============================

def diagonal_cumulant(n: int, k: int, P: ProcessModel) -> Fraction:
    """r_n(Δ_k) = r_{nk}(X)."""
    if n < 1 or k < 1:
        raise ValueError("n y k deben ser ≥ 1.")
    return P.cumulant_at(n * k)


def diagonal_cumulant_via_generator(n: int, k: int, P: ProcessModel) -> Fraction:
    """Δ_k de un compound Poisson es compound Poisson con generador e^k."""
    if P.kind != "compound-poisson":
        raise ValueError("Esta ruta solo aplica a procesos compound-poisson.")
    diag = ProcessModel.compound_poisson(moment_seq_power(P.generator, k), t=P.t)
    return diag.cumulant_at(n)


class DeltaWordEvaluator:
    """φ(Δ_{k_1}⋯Δ_{k_n}) = Σ_{π∈NC(n)} Π_B r(Σ_{j∈B} k_j) para un proceso fijo.

    Descomposición por el bloque del primer punto: ese bloque se recorre
    desde su último elemento hacia atrás, acumulando su grado total; los
    huecos entre elementos consecutivos son palabras independientes.
    Memoiza sobre subpalabras contiguas.
    """

    def __init__(self, P: ProcessModel):
        self.P = P
        self._moments: Dict[Tuple[int, ...], Fraction] = {(): Fraction(1)}
        self._spines: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
        self._lock = threading.Lock()
        self._logger = get_logger(self.__class__.__name__)

    def _spine(self, w: Tuple[int, ...]) -> Dict[int, Fraction]:
        """Particiones de w con el primer y el último punto en el mismo bloque."""
        cached = self._spines.get(w)
        if cached is not None:
            return cached
        if len(w) == 1:
            out = {w[0]: Fraction(1)}
        else:
            out: Dict[int, Fraction] = {}
            last = len(w) - 1
            for p in range(last):
                gap = self.moment(w[p + 1:last])
                if gap == 0:
                    continue
                for c, v in self._spine(w[:p + 1]).items():
                    key = c + w[last]
                    out[key] = out.get(key, Fraction(0)) + v * gap
        with self._lock:
            self._spines[w] = out
        return out

    def moment(self, w: Tuple[int, ...]) -> Fraction:
        cached = self._moments.get(w)
        if cached is not None:
            return cached
        total = Fraction(0)
        for l in range(len(w)):
            rest = self.moment(w[l + 1:])
            if rest == 0:
                continue
            for c, v in self._spine(w[:l + 1]).items():
                r = self.P.cumulant_at(c)
                if r:
                    total += v * r * rest
        with self._lock:
            self._moments[w] = total
        return total


@lru_cache(maxsize=64)
def delta_word_evaluator(P: ProcessModel) -> DeltaWordEvaluator:
    return DeltaWordEvaluator(P)


def _check_word(kvec: Sequence[int]) -> Tuple[int, ...]:
    word = tuple(int(k) for k in kvec)
    if any(k < 1 for k in word):
        raise ValueError("Los índices de Δ deben ser enteros positivos.")
    return word


def delta_word_moment(
    kvec: Sequence[int],
    P: ProcessModel,
    method: Literal["recursive", "enumerate"] = "recursive",
) -> Fraction:
    word = _check_word(kvec)
    require_cap("noncrossing", len(word))
    if method == "recursive":
        return delta_word_evaluator(P).moment(word)

    total = Fraction(0)
    for pi in enumerate_noncrossing(len(word)):
        term = Fraction(1)
        for b in pi.blocks:
            term *= P.cumulant_at(sum(word[j - 1] for j in b))
            if term == 0:
                break
        total += term
    return total


# ==============================
# Oráculo de N finito
# ==============================

def finite_n_laurent(pi: SetPartition, kvec: Sequence[int], P: ProcessModel) -> LaurentInN:
    """(N)_{|π|} · Σ_{σ∈NC, σ≤π^k} N^{−|σ|} R_σ(X), como Laurent exacto en N."""
    word = _check_word(kvec)
    big = expand(pi, word)
    require_cap("noncrossing", big.n)
    inner: Dict[int, Fraction] = {}
    for sigma in noncrossing_refinements(big):
        value = _r_product(sigma, P)
        if value:
            inner[-len(sigma)] = inner.get(-len(sigma), Fraction(0)) + value
    return LaurentInN.falling_factorial(len(pi)) * LaurentInN(inner)


def finite_n_expectation(pi: SetPartition, kvec: Sequence[int], P: ProcessModel, N: int) -> Fraction:
    if N < 1:
        raise ValueError("N debe ser un entero positivo.")
    if N < len(pi):
        # S^n_π es vacío
        return Fraction(0)
    return finite_n_laurent(pi, kvec, P).evaluate(N)


def word_limit_from_oracle(kvec: Sequence[int], P: ProcessModel) -> Fraction:
    """lim_N Σ_{π∈P(n)} del oráculo: la otra ruta hacia φ(Δ_{k_1}⋯Δ_{k_n})."""
    word = _check_word(kvec)
    total = LaurentInN()
    for pi in enumerate_all(len(word)):
        total = total + finite_n_laurent(pi, word, P)
    return total.limit_at_infinity()


def vanishing_order_check(pi: SetPartition, P: Optional[ProcessModel] = None) -> bool:
    """Exponente máximo del Laurent ≤ −c(π) (peor caso: Poisson libre)."""
    P = P or ProcessModel.free_poisson(1)
    laurent = finite_n_laurent(pi, [1] * pi.n, P)
    if laurent.is_zero():
        return True
    return laurent.max_exponent <= -crossing_number(pi)


def inner_singleton_vanishing(pi: SetPartition, P: ProcessModel) -> Fraction:
    _require_noncrossing(pi, "inner_singleton_vanishing")
    if not P.centered:
        raise ValueError("inner_singleton_vanishing requiere un proceso centrado.")
    value = st_expectation(pi, P)
    if has_inner_singleton(pi) and value != 0:
        raise VerificationFailed("inner-singleton", [str(pi)])
    return value


# ==============================
# Medidas producto en forma cerrada
# ==============================

@dataclass(frozen=True)
class ProductMeasureForm:
    """Resultado de una fórmula cerrada de Pr_π.

    Browniano: X^a |A|^b 0^z. Poisson: X^o (1 + t)^i.
    """

    family: Literal["brownian", "poisson"]
    status: Literal["zero", "closed", "not-covered"]
    x_power: int = 0
    t_power: int = 0
    zero_power: int = 0
    polynomial: Optional[Poly] = None

    def is_zero(self) -> bool:
        return self.status == "zero"

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "status": self.status,
            "x_power": self.x_power,
            "t_power": self.t_power,
            "zero_power": self.zero_power,
        }
        if self.polynomial is not None:
            out["polynomial"] = scalar_to_json(self.polynomial)
        return out


def _singleton_alone_in_gap(pi: SetPartition) -> bool:
    for b in pi.blocks:
        s = b[0]
        if len(b) == 1 and 1 < s < pi.n and pi.same_block(s - 1, s + 1):
            return True
    return False


def brownian_product_measure(pi: SetPartition) -> ProductMeasureForm:
    _require_noncrossing(pi, "brownian_product_measure")
    if has_inner_singleton(pi):
        if _singleton_alone_in_gap(pi):
            # X_i (Σ_j X_j) X_i → φ(X) Δ_2 = 0
            return ProductMeasureForm(family="brownian", status="zero")
        raise ClosedFormNotAvailable(
            f"'{pi}' tiene singletons internos que comparten hueco; no hay forma cerrada."
        )
    sizes = pi.block_sizes()
    a = sizes.count(1)
    b = sizes.count(2)
    z = sum(1 for s in sizes if s >= 3)
    return ProductMeasureForm(
        family="brownian",
        status="zero" if z else "closed",
        x_power=a,
        t_power=b,
        zero_power=z,
        polynomial=None if z else Poly(X**a * T**b, X, T, domain="QQ"),
    )


def poisson_separation_predicate(pi: SetPartition) -> bool:
    _require_noncrossing(pi, "poisson_separation_predicate")
    for w, children in covers(pi).items():
        W = pi.blocks[w]
        for u in children:
            for v in children:
                U, V = pi.blocks[u], pi.blocks[v]
                if U[-1] < V[0] and not any(U[-1] < e < V[0] for e in W):
                    return False
    return True


def poisson_product_measure(pi: SetPartition, t=None) -> ProductMeasureForm:
    if not poisson_separation_predicate(pi):
        return ProductMeasureForm(family="poisson", status="not-covered")
    roles = classify_blocks(pi)
    poly = Poly(X**roles.outer_count * (1 + T) ** roles.inner_count, X, T, domain="QQ")
    if t is not None:
        poly = Poly(poly.as_expr().subs(T, to_rational(as_fraction(t))), X, T, domain="QQ")
    return ProductMeasureForm(
        family="poisson",
        status="closed",
        x_power=roles.outer_count,
        t_power=roles.inner_count,
        polynomial=poly,
    )


def _closed_form_expectation(form: ProductMeasureForm, P: ProcessModel, factor: Fraction) -> Fraction:
    if form.status == "not-covered":
        raise ClosedFormNotAvailable("La fórmula cerrada no cubre esta partición.")
    if form.is_zero():
        return Fraction(0)
    mom = moments_from_cumulants(P.cumulants(max(form.x_power, 1)))
    return mom[form.x_power] * factor ** form.t_power


def brownian_product_expectation(form: ProductMeasureForm, P: ProcessModel) -> Fraction:
    """φ(X^a) |A|^b con X browniano libre."""
    return _closed_form_expectation(form, P, P.t)


def poisson_product_expectation(form: ProductMeasureForm, P: ProcessModel) -> Fraction:
    """φ(X^o) (1 + t)^i con X Poisson libre."""
    return _closed_form_expectation(form, P, 1 + P.t)


# ==============================
# Fórmula de Itô
# ==============================

def ito_expand(pi: SetPartition) -> List[SetPartition]:
    """σ ∈ NC(k) con σ ∧ π = 0̂."""
    zero = SetPartition.zero(pi.n)
    return [s for s in enumerate_noncrossing(pi.n) if meet(s, pi) == zero]


def ito_expectation(pi: SetPartition, P: ProcessModel) -> Fraction:
    return sum((st_expectation(s, P) for s in ito_expand(pi)), Fraction(0))


def ito_orthogonality_expectation(pi: SetPartition, P: ProcessModel) -> Fraction:
    """Σ_{σ∧π=0̂} Π_B φ(Δ_{|B|})."""
    total = Fraction(0)
    for s in ito_expand(pi):
        term = Fraction(1)
        for b in s.blocks:
            term *= diagonal_cumulant(1, len(b), P)
        total += term
    return total


def ito_mobius_expand(pi: SetPartition, lattice: Literal["auto", "nc", "p"] = "auto") -> Combination:
    """(μ(0̂, σ), σ) para σ ≤ π.

    En NC la identidad vale para π noncrossing; con cruces se usa P(k).
    """
    if lattice == "auto":
        lattice = "nc" if is_noncrossing(pi) else "p"
    table = lattice_service.mobius_table(SetPartition.zero(pi.n), pi, lattice)
    return [(mu, s) for s, mu in table.items() if mu != 0]


def ito_mobius_expectation(pi: SetPartition, P: ProcessModel, lattice: Literal["auto", "nc", "p"] = "auto") -> Fraction:
    return evaluate_combination(ito_mobius_expand(pi, lattice), P, "pr")


# ==============================
# Reglas sándwich
# ==============================

@dataclass(frozen=True)
class SandwichLimit:
    coefficient: Fraction
    diagonal_index: int


def sandwich_limit(m_vector: Sequence[int], z_expectations: Sequence) -> SandwichLimit:
    """Σ_i X_i^{m_1} Z_1 ⋯ Z_k X_i^{m_{k+1}} → Π φ(Z_j) · Δ_{Σ m_j}."""
    m = [int(v) for v in m_vector]
    z = [as_fraction(v) for v in z_expectations]
    if len(m) != len(z) + 1:
        raise ValueError("Se necesitan k+1 exponentes para k variables Z.")
    if any(v < 1 for v in m):
        raise ValueError("Los exponentes deben ser enteros positivos.")
    coef = Fraction(1)
    for v in z:
        coef *= v
    return SandwichLimit(coefficient=coef, diagonal_index=sum(m))


def sandwich_limit_expectation(limit: SandwichLimit, P: ProcessModel) -> Fraction:
    return limit.coefficient * P.cumulant_at(limit.diagonal_index)
