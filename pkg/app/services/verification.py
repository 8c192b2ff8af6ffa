import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence

from app.core.errors import VerificationFailed
from app.core.logs import get_logger
from app.models.partition import SetPartition
from app.models.polynomial import T, scalar
from app.models.process import ProcessModel
from app.models.sequences import CumulantSeq, MomentSeq, SeriesQ, format_rational
from app.services import measures, polynomials
from app.services.mobius import mobius_nc, mobius_p
from app.services.partitions import (
    bell,
    catalan,
    enumerate_all,
    enumerate_interval,
    enumerate_noncrossing,
    kreweras,
)
from app.services.transforms import (
    cumulants_from_moments,
    moments_from_cumulants,
    r_from_s,
    r_series,
    s_from_r,
)

logger = get_logger("verification")

DEFAULT_TIMES = (Fraction(1), Fraction(1, 2), Fraction(3))


@dataclass
class VerifyOptions:
    max_n: Optional[int] = None
    times: Sequence[Fraction] = DEFAULT_TIMES
    processes: Optional[List[ProcessModel]] = None


@dataclass
class SuiteReport:
    suite: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    def check(self, ok: bool, label: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(label)
            logger.error("[%s] falla: %s", self.suite, label)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checks": self.checks,
            "failures": list(self.failures),
            "passed": self.passed,
            "details": self.details,
        }


def unit_compound_generator(order: int) -> MomentSeq:
    """m = (0, 1, 1/2, 1/4, …): centrado y de varianza unitaria."""
    return MomentSeq(tuple(Fraction(0) if k == 1 else Fraction(1, 2 ** (k - 2)) for k in range(1, order + 1)))


def centered_battery(t: Fraction, order: int) -> List[ProcessModel]:
    return [
        ProcessModel.semicircular(t),
        ProcessModel.free_poisson(t, centered=True),
        ProcessModel.compound_poisson(unit_compound_generator(order), t=t, centered=True),
    ]


def general_battery(order: int = 12) -> List[ProcessModel]:
    return [
        ProcessModel.semicircular(2),
        ProcessModel.free_poisson(Fraction(3, 2)),
        ProcessModel.compound_poisson(MomentSeq(tuple(range(1, order + 1))), t=Fraction(1, 2)),
    ]


# ==============================
# Suites
# ==============================

def suite_lattice(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("lattice")
    top = opts.max_n or 8
    for n in range(1, min(top, 7) + 1):
        report.check(sum(1 for _ in enumerate_noncrossing(n)) == catalan(n), f"|NC({n})|")
        report.check(sum(1 for _ in enumerate_interval(n)) == 2 ** (n - 1), f"|Int({n})|")
        report.check(sum(1 for _ in enumerate_all(n)) == bell(n), f"|P({n})|")
    for n in range(1, top + 1):
        images = set()
        for pi in enumerate_noncrossing(n):
            k = kreweras(pi)
            images.add(k)
            report.check(len(k) + len(pi) == n + 1, f"|K(π)| + |π| en {pi}")
        report.check(len(images) == catalan(n), f"K biyectiva en NC({n})")
    return report


def suite_mobius(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("mobius")
    top = opts.max_n or 7
    for n in range(1, top + 1):
        zero, one = SetPartition.zero(n), SetPartition.one(n)
        sign = (-1) ** (n - 1)
        report.check(mobius_p(zero, one) == sign * factorial(n - 1), f"μ_P(0̂_{n}, 1̂_{n})")
        report.check(mobius_nc(zero, one) == sign * catalan(n - 1), f"μ_NC(0̂_{n}, 1̂_{n})")
    for n in range(1, min(top, 5) + 1):
        for pi in enumerate_noncrossing(n):
            round_trip = measures.substitute(measures.st_from_pr(pi), measures.pr_from_st)
            report.check(round_trip == {pi: Fraction(1)}, f"St→Pr→St en {pi}")
    return report


def suite_vanishing(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("vanishing")
    top = opts.max_n or 6
    poisson = ProcessModel.free_poisson(1)
    centered = ProcessModel.free_poisson(1, centered=True)
    for n in range(1, top + 1):
        for pi in enumerate_all(n):
            laurent = measures.finite_n_laurent(pi, [1] * n, poisson)
            report.check(not laurent.is_divergent(), f"divergencia en {pi}")
            report.check(
                laurent.limit_at_infinity() == measures.st_expectation(pi, poisson),
                f"límite de N finito en {pi}",
            )
            report.check(measures.vanishing_order_check(pi, poisson), f"orden −c(π) en {pi}")
            if 1 in pi.block_sizes():
                report.check(
                    measures.finite_n_laurent(pi, [1] * n, centered).is_zero(),
                    f"singleton centrado en {pi}",
                )
    report.details["example"] = measures.finite_n_laurent(
        SetPartition.from_blocks([(1, 3), (2, 4)]), [1, 1, 1, 1], poisson
    ).to_json()
    return report


def suite_oracle(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("oracle")
    top = opts.max_n or 6
    models = [ProcessModel.free_poisson(2), ProcessModel.custom(CumulantSeq(tuple(range(1, 13))), t=Fraction(1, 3))]
    for P in models:
        for degree in range(1, top + 1):
            for word in polynomials.compositions(degree):
                fast = measures.delta_word_moment(word, P)
                slow = measures.delta_word_moment(word, P, method="enumerate")
                oracle = measures.word_limit_from_oracle(word, P)
                report.check(fast == slow == oracle, f"Δ{list(word)} con {P.label()}")
        for k in range(1, 4):
            moments = MomentSeq(tuple(measures.delta_word_moment([k] * n, P) for n in range(1, 5)))
            expected = tuple(P.cumulant_at(n * k) for n in range(1, 5))
            report.check(cumulants_from_moments(moments).values == expected, f"r_n(Δ_{k}) con {P.label()}")
    poisson = ProcessModel.free_poisson(Fraction(2, 3))
    for n in range(1, 5):
        expected = sum((poisson.t ** len(pi) for pi in enumerate_noncrossing(n)), Fraction(0))
        for word in product(range(1, 4), repeat=n):
            report.check(measures.delta_word_moment(word, poisson) == expected, f"Poisson Δ{list(word)}")
    return report


def suite_ito(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("ito")
    top = opts.max_n or 5
    for P in general_battery():
        for k in range(1, top + 1):
            for pi in enumerate_all(k):
                direct = measures.ito_expectation(pi, P)
                report.check(direct == measures.ito_mobius_expectation(pi, P), f"Möbius {pi} con {P.label()}")
                report.check(
                    direct == measures.ito_orthogonality_expectation(pi, P),
                    f"Π φ(Δ) {pi} con {P.label()}",
                )
            for pi in enumerate_interval(k):
                report.check(
                    measures.ito_expectation(pi, P) == polynomials.ito_expectation_via_polynomials(pi, P),
                    f"ψ-producto {pi} con {P.label()}",
                )
    return report


def suite_orthogonality(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("orthogonality")
    top = opts.max_n or 6
    models = [P.centered_version() for P in opts.processes] if opts.processes else None
    if models is None:
        models = [P for t in opts.times for P in centered_battery(t, 2 * top)]
    for P in models:
        gram = polynomials.gram_matrix(P, top)
        report.check(gram == polynomials.expected_gram(P, top), f"Gram de {P.label()}")
        report.details[P.label()] = [[format_rational(v) for v in row] for row in gram]
    return report


def suite_ks_consistency(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("ks-consistency")
    top = opts.max_n or 10
    for n in range(top + 1):
        general = polynomials.ks_general(n)
        report.check(general == polynomials.ks_general(n, form="m"), f"formas q/m en ψ_{n}")
        centered = polynomials.ks_centered(n)
        report.check(general.substitute_t(0) == centered, f"t=0 en ψ_{n}")
        report.check(centered == polynomials.ks_centered(n, form="compositions"), f"composiciones en ψ_{n}")
        report.check(polynomials.psi_via_beta(n) == general, f"β(1, n−1) en ψ_{n}")
    for n in range(1, top + 1):
        for m in range(0, top - n + 1):
            report.check(polynomials.alpha_beta_residual(n, m).is_zero(), f"α/β en ({n}, {m})")
    return report


def suite_chebyshev(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("chebyshev")
    top = opts.max_n or 20
    for n in range(top + 1):
        rec = polynomials.brownian_recursion(n)
        report.check(rec == polynomials.brownian_closed_form(n), f"forma cerrada n={n}")
        report.check(
            polynomials.chebyshev_monic(n) == polynomials.chebyshev_reference(n),
            f"U_n(x/2) n={n}",
        )
        if n <= 10:
            report.check(rec == polynomials.brownian_from_ks(n), f"Δ-sustitución n={n}")
    return report


def suite_poisson_charlier(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("poisson-charlier")
    top = opts.max_n or 12
    for n in range(top + 1):
        rec = polynomials.poisson_charlier_recursion(n)
        report.check(rec == polynomials.poisson_charlier_explicit(n), f"explícita n={n}")
        if n <= 10:
            report.check(
                rec == polynomials.specialize_poisson_charlier_substitution(n),
                f"Δ-sustitución n={n}",
            )
        if n <= 8:
            at_one = scalar(rec.as_expr().subs(T, 1))
            report.check(at_one == polynomials.chebyshev_composed(n), f"T_2n(√x) n={n}")
            report.check(
                polynomials.specialize_poisson(n) == polynomials.specialize_poisson_substitution(n),
                f"Poisson no centrado n={n}",
            )
    return report


def suite_compound(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("compound")
    top = opts.max_n or 8
    generator = MomentSeq(tuple(Fraction(k, k + 1) for k in range(1, 13)))
    P = ProcessModel.compound_poisson(generator, t=Fraction(5, 2))
    for n in range(1, 13):
        for k in range(1, 12 // n + 1):
            report.check(
                measures.diagonal_cumulant(n, k, P) == measures.diagonal_cumulant_via_generator(n, k, P),
                f"r_{n}(Δ_{k})",
            )
    for n in range(top + 1):
        report.check(polynomials.compound_ks(n) == polynomials.ks_general(n), f"ψ_{n} simbólico")
        report.check(
            polynomials.compound_ks(n, generator, time=P.t) == polynomials.ks_general(n).substitute_t(P.expectation),
            f"ψ_{n} con t = φ(X)",
        )
    return report


def suite_transforms(opts: VerifyOptions) -> SuiteReport:
    report = SuiteReport("transforms")
    order = opts.max_n or 8
    poisson = moments_from_cumulants(CumulantSeq((1,) * order))
    report.check(
        poisson.values[:5] == tuple(Fraction(catalan(n)) for n in range(1, 6)),
        "momentos de Poisson libre = Catalan",
    )
    S = s_from_r(r_series(CumulantSeq((1,) * (order + 1))))
    expected = SeriesQ(tuple(Fraction((-1) ** k) for k in range(S.order + 1)))
    report.check(S == expected, "S(w) = 1/(1+w)")
    rng = random.Random(20240611)
    for trial in range(10):
        coeffs = [Fraction(rng.randint(1, 9), rng.randint(1, 5))]
        coeffs += [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order)]
        R = SeriesQ(tuple(coeffs))
        report.check(r_from_s(s_from_r(R)) == R, f"r_from_s ∘ s_from_r #{trial}")
    return report


SUITES: Dict[str, Callable[[VerifyOptions], SuiteReport]] = {
    "lattice": suite_lattice,
    "mobius": suite_mobius,
    "vanishing": suite_vanishing,
    "oracle": suite_oracle,
    "ito": suite_ito,
    "orthogonality": suite_orthogonality,
    "ks-consistency": suite_ks_consistency,
    "chebyshev": suite_chebyshev,
    "poisson-charlier": suite_poisson_charlier,
    "compound": suite_compound,
    "transforms": suite_transforms,
}


def run_suite(name: str, opts: Optional[VerifyOptions] = None) -> List[SuiteReport]:
    """Ejecuta una suite (o todas con "all") y levanta VerificationFailed si algo falla."""
    opts = opts or VerifyOptions()
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES:
            raise ValueError(f"Suite desconocida: '{n}'. Opciones: {', '.join(SUITES)}, all.")

    reports = []
    failures: List[str] = []
    for n in names:
        logger.info("Suite %s...", n)
        report = SUITES[n](opts)
        logger.info("Suite %s: %d comprobaciones, %d fallos", n, report.checks, len(report.failures))
        reports.append(report)
        failures.extend(f"{n}: {f}" for f in report.failures)
    if failures:
        raise VerificationFailed(name, failures)
    return reports
