from fractions import Fraction
from typing import List, Sequence

from app.core.errors import SeriesNotInvertible
from app.models.partition import SetPartition
from app.models.sequences import CumulantSeq, MomentSeq, SeriesQ, as_fraction
from app.services.partitions import enumerate_noncrossing, kreweras


def _power_coefficients(base: Sequence[Fraction], s: int, upto: int) -> List[Fraction]:
    """Coeficientes 0..upto de (Σ base_k z^k)^s."""
    out = [Fraction(1)] + [Fraction(0)] * upto
    for _ in range(s):
        nxt = [Fraction(0)] * (upto + 1)
        for i, a in enumerate(out):
            if a == 0:
                continue
            for j in range(upto + 1 - i):
                if j < len(base):
                    nxt[i + j] += a * base[j]
        out = nxt
    return out


def moments_from_cumulants(r: CumulantSeq) -> MomentSeq:
    """m_n = Σ_{σ∈NC(n)} Π_B r_{|B|}, por la descomposición en el primer bloque."""
    L = r.order
    m: List[Fraction] = [Fraction(1)]
    for n in range(1, L + 1):
        total = Fraction(0)
        for s in range(1, n + 1):
            if r[s] == 0:
                continue
            total += r[s] * _power_coefficients(m, s, n - s)[n - s]
        m.append(total)
    return MomentSeq(tuple(m[1:]))


def cumulants_from_moments(m: MomentSeq) -> CumulantSeq:
    """Inversa exacta de moments_from_cumulants."""
    L = m.order
    full = [Fraction(1)] + list(m.values)
    r: List[Fraction] = []
    for n in range(1, L + 1):
        acc = full[n]
        for s in range(1, n):
            acc -= r[s - 1] * _power_coefficients(full[:n], s, n - s)[n - s]
        r.append(acc)
    return CumulantSeq(tuple(r))


def _block_product(pi: SetPartition, seq, label: str) -> Fraction:
    out = Fraction(1)
    for b in pi.blocks:
        if len(b) > seq.order:
            raise ValueError(
                f"El bloque de tamaño {len(b)} supera el orden de {label} ({seq.order})."
            )
        out *= seq[len(b)]
    return out


def m_pi(pi: SetPartition, m: MomentSeq) -> Fraction:
    return _block_product(pi, m, "los momentos")


def r_pi(pi: SetPartition, r: CumulantSeq) -> Fraction:
    return _block_product(pi, r, "los cumulantes")


def alternating_moment(x_cumulants: CumulantSeq, y_moments: MomentSeq, n: int) -> Fraction:
    """φ(x_1 y_1 ⋯ x_n y_n) = Σ_{π∈NC(n)} R_{K(π)}(x) M_π(y)."""
    if n > min(x_cumulants.order, y_moments.order):
        raise ValueError(f"n={n} supera el orden de truncamiento de las secuencias.")
    total = Fraction(0)
    for pi in enumerate_noncrossing(n):
        total += r_pi(kreweras(pi), x_cumulants) * m_pi(pi, y_moments)
    return total


def scale_time(r: CumulantSeq, t) -> CumulantSeq:
    t = as_fraction(t)
    return CumulantSeq(tuple(t * v for v in r.values))


def center(r: CumulantSeq) -> CumulantSeq:
    if r.order == 0:
        return r
    return CumulantSeq((Fraction(0),) + r.values[1:])


def free_additive_convolution(rx: CumulantSeq, ry: CumulantSeq) -> CumulantSeq:
    """Los cumulantes libres se suman."""
    return rx + ry


def moment_seq_power(m: MomentSeq, k: int) -> MomentSeq:
    """Momentos de e^k: m_n(e^k) = m_{nk}(e)."""
    if k < 1:
        raise ValueError("k debe ser ≥ 1.")
    return MomentSeq(tuple(m[n * k] for n in range(1, m.order // k + 1)))


# ==============================
# Series R y S
# ==============================

def r_series(r: CumulantSeq) -> SeriesQ:
    """R(z) = Σ_{n≥1} r_n z^{n−1}."""
    if r.order == 0:
        raise ValueError("Se necesita al menos r_1.")
    return SeriesQ(r.values)


def cumulants_from_r_series(R: SeriesQ) -> CumulantSeq:
    return CumulantSeq(R.coefficients)


def s_from_r(R: SeriesQ) -> SeriesQ:
    """S(w) = α⁻¹(w)/w con α(z) = z R(z)."""
    if R[0] == 0:
        raise SeriesNotInvertible("La transformada S requiere r_1 ≠ 0.")
    alpha = R.times_z()
    return alpha.reversion().divide_z()


def r_from_s(S: SeriesQ) -> SeriesQ:
    if S[0] == 0:
        raise SeriesNotInvertible("La serie S debe tener término constante no nulo.")
    alpha_inv = S.times_z()
    return alpha_inv.reversion().divide_z()


def s_transform_of_moments(m: MomentSeq) -> SeriesQ:
    return s_from_r(r_series(cumulants_from_moments(m)))


def free_multiplicative_convolution(mx: MomentSeq, my: MomentSeq) -> MomentSeq:
    """Momentos de x^{1/2} y x^{1/2} vía S_x · S_y (requiere m_1 ≠ 0 en ambos)."""
    S = s_transform_of_moments(mx) * s_transform_of_moments(my)
    return moments_from_cumulants(cumulants_from_r_series(r_from_s(S)))


def sandwich_transform(x_moments: MomentSeq) -> CumulantSeq:
    """Cumulantes de y = s x s: r_n(y) = m_n(x) (mapa compound-Poisson)."""
    return CumulantSeq(x_moments.values)


def sandwich_s_route(x_moments: MomentSeq) -> SeriesQ:
    """S_y(w) = S_x(w)/(1 + w), la otra ruta hacia la misma serie."""
    S_x = s_transform_of_moments(x_moments)
    one_plus_w = SeriesQ((Fraction(1), Fraction(1)) + (Fraction(0),) * max(S_x.order - 1, 0))
    return S_x * one_plus_w.reciprocal()
