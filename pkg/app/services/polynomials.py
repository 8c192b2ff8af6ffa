from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import List, Literal, Optional, Sequence, Tuple

from sympy import chebyshevu_poly, expand, sqrt

from app.core.config import require_cap
from app.core.errors import VerificationFailed
from app.core.logs import get_logger
from app.models.partition import SetPartition
from app.models.polynomial import (
    DiagonalPolynomial,
    ScalarPolynomial,
    T,
    X,
    scalar,
    t_power,
    to_fraction,
    to_rational,
)
from app.models.process import ProcessModel
from app.models.sequences import MomentSeq, as_fraction
from app.services.measures import delta_word_evaluator

logger = get_logger("polynomials")

ONE = DiagonalPolynomial.one()
delta = DiagonalPolynomial.delta


def _check(n: int, family: str) -> None:
    if n < 0:
        raise ValueError("n debe ser ≥ 0.")
    require_cap(family, n)


# ==============================
# Fórmula de Kailath–Segall libre
# ==============================

@lru_cache(maxsize=None)
def _ks_q(n: int) -> DiagonalPolynomial:
    if n == 0:
        return ONE
    out = delta(1) * _ks_q(n - 1)
    for j in range(2, n + 1):
        sign = (-1) ** (j - 1)
        for q in range(n - j + 1):
            c = comb(n - q - 2, j - 2)
            if c:
                out = out + delta(j) * _ks_q(q) * (t_power(n - j - q) * sign * c)
    return out


@lru_cache(maxsize=None)
def _ks_m(n: int) -> DiagonalPolynomial:
    if n == 0:
        return ONE
    out = delta(1) * _ks_m(n - 1)
    for j in range(2, n + 1):
        sign = (-1) ** (j - 1)
        for m in range(n - j + 1):
            out = out + delta(j) * _ks_m(n - j - m) * (t_power(m) * sign * comb(m + j - 2, j - 2))
    return out


def ks_general(n: int, form: Literal["q", "m"] = "q") -> DiagonalPolynomial:
    """ψ_n como polinomio en Δ_1, …, Δ_n y t = φ(X).

    Las dos formas indexan la misma suma (por q o por m = n − j − q).
    """
    _check(n, "ks")
    if form == "q":
        return _ks_q(n)
    if form == "m":
        return _ks_m(n)
    raise ValueError(f"Forma desconocida: '{form}'.")


@lru_cache(maxsize=None)
def _centered_recursive(n: int) -> DiagonalPolynomial:
    if n == 0:
        return ONE
    out = DiagonalPolynomial.zero()
    for j in range(1, n + 1):
        out = out + delta(j) * _centered_recursive(n - j) * (-1) ** (j - 1)
    return out


def compositions(n: int):
    """Composiciones de n en orden lexicográfico de cortes."""
    if n == 0:
        yield ()
        return
    for cuts in product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def _centered_compositions(n: int) -> DiagonalPolynomial:
    if n == 0:
        return ONE
    terms = {}
    for word in compositions(n):
        terms[word] = (-1) ** (n - len(word))
    return DiagonalPolynomial(terms)


def ks_centered(n: int, form: Literal["recursive", "compositions"] = "recursive") -> DiagonalPolynomial:
    _check(n, "ks")
    if form == "recursive":
        return _centered_recursive(n)
    if form == "compositions":
        return _centered_compositions(n)
    raise ValueError(f"Forma desconocida: '{form}'.")


# ==============================
# Recursión α/β
# ==============================

def alpha(n: int, m: int) -> DiagonalPolynomial:
    """α(n, m) = Δ_n ψ_m."""
    if n < 0 or m < 0:
        raise ValueError("n y m deben ser ≥ 0.")
    require_cap("ks", n + m)
    return delta(n) * _ks_q(m)


@lru_cache(maxsize=None)
def _beta(n: int, m: int) -> DiagonalPolynomial:
    # n ≥ 1; α se arma con ψ obtenidos por esta misma recursión
    if m == 0:
        return delta(n)
    out = delta(n) * psi_from_beta(m)
    for l in range(m):
        out = out - _beta(n + 1, l) * t_power(m - 1 - l)
    return out


@lru_cache(maxsize=None)
def psi_from_beta(n: int) -> DiagonalPolynomial:
    if n == 0:
        return ONE
    return _beta(1, n - 1)


def beta(n: int, m: int) -> DiagonalPolynomial:
    """β(n, m) = St_{1̂_n + 0̂_m}; β(0, m) = ψ_m."""
    if n < 0 or m < 0:
        raise ValueError("n y m deben ser ≥ 0.")
    require_cap("ks", n + m)
    if n == 0:
        return psi_from_beta(m)
    return _beta(n, m)


def psi_via_beta(n: int) -> DiagonalPolynomial:
    """ψ_n = β(1, n − 1), usando solo la recursión α/β."""
    _check(n, "ks")
    return psi_from_beta(n)


def alpha_beta_residual(n: int, m: int) -> DiagonalPolynomial:
    """α(n, m) − β(n, m) − Σ_l t^{m−1−l} β(n+1, l); cero si la recursión cierra."""
    out = alpha(n, m) - beta(n, m)
    for l in range(m):
        out = out - beta(n + 1, l) * t_power(m - 1 - l)
    return out


# ==============================
# Especializaciones escalares
# ==============================

def _three_term(n: int, first: ScalarPolynomial, step) -> ScalarPolynomial:
    prev, cur = scalar(1), first
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, step(k, cur, prev)
    return cur


def brownian_recursion(n: int) -> ScalarPolynomial:
    _check(n, "scalar")
    return _three_term(n, scalar(X), lambda k, cur, prev: cur * scalar(X) - prev * scalar(T))


def brownian_closed_form(n: int) -> ScalarPolynomial:
    _check(n, "scalar")
    return scalar(sum((-1) ** j * comb(n - j, j) * T**j * X ** (n - 2 * j) for j in range(n // 2 + 1)))


def brownian_image(k: int):
    return {1: X, 2: T}.get(k, 0)


def brownian_from_ks(n: int) -> ScalarPolynomial:
    """Δ_1 → X, Δ_2 → |A|, Δ_{≥3} → 0 en ks_centered(n)."""
    return ks_centered(n).reduce_commutative(brownian_image)


def specialize_brownian(n: int) -> ScalarPolynomial:
    rec = brownian_recursion(n)
    if rec != brownian_closed_form(n):
        raise VerificationFailed("chebyshev", [f"n={n}"])
    return rec


def specialize_poisson(n: int) -> ScalarPolynomial:
    """ψ_{n+1} = (X + t − 1) ψ_n − t X ψ_{n−1}, ψ_0 = 1, ψ_1 = X."""
    _check(n, "scalar")
    return _three_term(
        n,
        scalar(X),
        lambda k, cur, prev: cur * scalar(X + T - 1) - prev * scalar(T * X),
    )


def specialize_poisson_substitution(n: int) -> ScalarPolynomial:
    """Δ_j → X en ks_general(n), reducido conmutativamente."""
    return ks_general(n).reduce_commutative(lambda k: X)


def poisson_charlier_recursion(n: int) -> ScalarPolynomial:
    _check(n, "scalar")
    return _three_term(
        n,
        scalar(X - T),
        lambda k, cur, prev: cur * scalar(X - 1 - T) - prev * scalar(T),
    )


def poisson_charlier_explicit(n: int) -> ScalarPolynomial:
    _check(n, "scalar")
    expr = (X - T) ** n
    for i in range(n - 1):
        # C(i + k, i): formas de intercalar los i factores (X − t) entre los k bloques
        inner = sum(
            comb(i + k, i) * comb(n - i - k - 1, k - 1) * (-1) ** (n - k - i) * X**k
            for k in range(1, (n - i) // 2 + 1)
        )
        expr += (X - T) ** i * inner
    return scalar(expand(expr))


def specialize_poisson_charlier_substitution(n: int) -> ScalarPolynomial:
    """Δ_1 → X − t, Δ_j → X (j ≥ 2) en ks_centered(n)."""
    return ks_centered(n).reduce_commutative(lambda k: X - T if k == 1 else X)


def poisson_charlier(n: int) -> ScalarPolynomial:
    rec = poisson_charlier_recursion(n)
    if rec != poisson_charlier_explicit(n):
        raise VerificationFailed("poisson-charlier", [f"n={n}"])
    return rec


def chebyshev_monic(n: int) -> ScalarPolynomial:
    """T_n mónico en X: X T_n = T_{n+1} + T_{n−1}."""
    _check(n, "scalar")
    return _three_term(n, scalar(X), lambda k, cur, prev: cur * scalar(X) - prev)


def chebyshev_reference(n: int) -> ScalarPolynomial:
    """U_n(X/2) de sympy, que ya es mónico."""
    return scalar(expand(chebyshevu_poly(n, X / 2)))


def chebyshev_composed(n: int) -> ScalarPolynomial:
    """P_n(x) = T_{2n}(√x)."""
    even = chebyshev_monic(2 * n).as_expr()
    return scalar(expand(even.subs(X, sqrt(X))))


# ==============================
# Compound Poisson
# ==============================

@lru_cache(maxsize=None)
def _compound(n: int) -> DiagonalPolynomial:
    if n == 0:
        return ONE
    out = delta(1) * _compound(n - 1)
    for q in range(n - 1):
        m = n - q - 2
        # s (t − e)^m e² s = Σ_j C(m, j) t^{m−j} (−1)^j Δ_{j+2}
        sandwich = DiagonalPolynomial.zero()
        for j in range(m + 1):
            sandwich = sandwich + delta(j + 2) * (t_power(m - j) * comb(m, j) * (-1) ** j)
        out = out - sandwich * _compound(q)
    return out


def compound_ks(n: int, generator: Optional[MomentSeq] = None, time=1) -> DiagonalPolynomial:
    """ψ_n de un compound Poisson libre s e s.

    Sin generador t queda simbólico; con generador t = time · m_1(e).
    """
    _check(n, "compound")
    out = _compound(n)
    if generator is None:
        return out
    if generator.order < n:
        raise ValueError(f"El generador necesita al menos {n} momentos; tiene {generator.order}.")
    return out.substitute_t(as_fraction(time) * generator[1])


# ==============================
# Producto interno
# ==============================

def expectation(p: DiagonalPolynomial, P: ProcessModel) -> Fraction:
    """φ(p) con t = φ(X) del proceso."""
    evaluator = delta_word_evaluator(P)
    t = to_rational(P.expectation)
    total = Fraction(0)
    for word, coef in p:
        c = to_fraction(coef.eval(t))
        if c == 0:
            continue
        require_cap("noncrossing", len(word))
        total += c * evaluator.moment(word)
    return total


def inner_product(p: DiagonalPolynomial, q: DiagonalPolynomial, P: ProcessModel) -> Fraction:
    return expectation(p * q, P)


def psi_for(n: int, P: ProcessModel) -> DiagonalPolynomial:
    return ks_general(n).substitute_t(P.expectation)


def gram_matrix(P: ProcessModel, max_n: int) -> List[List[Fraction]]:
    """⟨ψ_i, ψ_j⟩ para 1 ≤ i, j ≤ max_n."""
    psis = [psi_for(n, P) for n in range(1, max_n + 1)]
    matrix = [[inner_product(a, b, P) for b in psis] for a in psis]
    logger.info("Gram %dx%d para %s", max_n, max_n, P.label())
    return matrix


def expected_gram(P: ProcessModel, max_n: int) -> List[List[Fraction]]:
    r2 = P.cumulant_at(2)
    return [[r2**i if i == j else Fraction(0) for j in range(1, max_n + 1)] for i in range(1, max_n + 1)]


def ito_expectation_via_polynomials(pi: SetPartition, P: ProcessModel) -> Fraction:
    """φ(ψ_{|B_1|}⋯ψ_{|B_k|}) para π de intervalos, con el motor de polinomios."""
    if any(b[-1] - b[0] + 1 != len(b) for b in pi.blocks):
        raise ValueError(f"'{pi}' no es una partición de intervalos.")
    prod = ONE
    for b in pi.blocks:
        prod = prod * psi_for(len(b), P)
    return expectation(prod, P)


def block_sizes_to_interval(sizes: Sequence[int]) -> SetPartition:
    blocks: List[Tuple[int, ...]] = []
    start = 1
    for s in sizes:
        blocks.append(tuple(range(start, start + s)))
        start += s
    return SetPartition.from_blocks(blocks)
