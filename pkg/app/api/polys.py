from typing import List

from app.api.common import add_process_args, process_from_args, rat, rationals
from app.core.errors import UsageError
from app.models.polynomial import DiagonalPolynomial, scalar_to_json
from app.models.sequences import MomentSeq
from app.schemas.results import CommandResult, PolyTableRow
from app.services import polynomials

OPERATIONS = (
    "ks_general",
    "ks_centered",
    "alpha",
    "beta",
    "psi_via_beta",
    "specialize_brownian",
    "brownian_from_ks",
    "specialize_poisson",
    "specialize_poisson_substitution",
    "poisson_charlier",
    "poisson_charlier_explicit",
    "specialize_poisson_charlier_substitution",
    "chebyshev_monic",
    "chebyshev_composed",
    "compound_ks",
    "inner_product",
    "gram_matrix",
)

DIAGONAL_FAMILIES = ("general", "centered", "compound", "beta-route", "alpha", "beta")
SCALAR_FAMILIES = ("brownian", "poisson", "poisson-charlier", "chebyshev", "chebyshev-composed")


def _scalar(family: str, n: int, route: str):
    if family == "brownian":
        return polynomials.brownian_from_ks(n) if route == "substitution" else polynomials.specialize_brownian(n)
    if family == "poisson":
        if route == "substitution":
            return polynomials.specialize_poisson_substitution(n)
        return polynomials.specialize_poisson(n)
    if family == "poisson-charlier":
        if route == "substitution":
            return polynomials.specialize_poisson_charlier_substitution(n)
        if route == "explicit":
            return polynomials.poisson_charlier_explicit(n)
        return polynomials.poisson_charlier(n)
    if family == "chebyshev":
        return polynomials.chebyshev_monic(n)
    return polynomials.chebyshev_composed(n)


def _diagonal(family: str, n: int, args) -> DiagonalPolynomial:
    if family == "general":
        return polynomials.ks_general(n, form=args.form if args.form in ("q", "m") else "q")
    if family == "centered":
        form = args.form if args.form in ("recursive", "compositions") else "recursive"
        return polynomials.ks_centered(n, form=form)
    if family == "beta-route":
        return polynomials.psi_via_beta(n)
    if family == "alpha":
        return polynomials.alpha(n, args.m)
    if family == "beta":
        return polynomials.beta(n, args.m)
    generator = MomentSeq(tuple(rationals(args.generator))) if args.generator else None
    return polynomials.compound_ks(n, generator=generator, time=rationals([args.t])[0])


def cmd_polys(args) -> List[CommandResult]:
    family = args.family
    t_value = rationals([args.t])[0] if args.substitute else None
    results = []
    for n in range(args.n_min, args.n_max + 1):
        if family in SCALAR_FAMILIES:
            poly = _scalar(family, n, args.route)
            row = PolyTableRow(family=family, n=n, t=None, terms=_scalar_terms(poly), kind="scalar")
        else:
            poly = _diagonal(family, n, args)
            if t_value is not None:
                poly = poly.substitute_t(t_value)
            row = PolyTableRow(
                family=family,
                n=n,
                t=rat(t_value) if t_value is not None else None,
                terms=poly.to_json(),
            )
        results.append(CommandResult(command="polys", inputs={"family": family, "n": n}, value=row.model_dump()))

    if (args.check_orthogonality or args.inner) and args.process is None:
        raise UsageError("--check-orthogonality e --inner necesitan --process.")
    if args.check_orthogonality:
        P = process_from_args(args)
        gram = polynomials.gram_matrix(P, args.n_max)
        results.append(
            CommandResult(
                command="polys gram",
                inputs={"process": P.to_json(), "max_n": args.n_max},
                value={
                    "gram": [[rat(v) for v in row] for row in gram],
                    "orthogonal": gram == polynomials.expected_gram(P, args.n_max),
                },
            )
        )
    if args.inner:
        P = process_from_args(args)
        a, b = args.inner
        value = polynomials.inner_product(polynomials.psi_for(a, P), polynomials.psi_for(b, P), P)
        results.append(
            CommandResult(command="polys inner", inputs={"process": P.to_json(), "n": a, "m": b}, value=rat(value))
        )
    return results


def _scalar_terms(poly) -> List[dict]:
    return [{"monomial": k, "coefficient": v} for k, v in scalar_to_json(poly).items()]


def register(subparsers) -> None:
    p = subparsers.add_parser("polys", help="polinomios de Kailath–Segall y familias ortogonales")
    p.add_argument("family", choices=DIAGONAL_FAMILIES + SCALAR_FAMILIES)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--m", type=int, default=0, help="segundo índice para alpha/beta")
    p.add_argument("--form", default="q", help="q|m (general), recursive|compositions (centered)")
    p.add_argument(
        "--route",
        choices=["recursion", "explicit", "substitution"],
        default="recursion",
        help="ruta para las familias escalares",
    )
    p.add_argument("--substitute", action="store_true", help="sustituye t por --t")
    p.add_argument("--check-orthogonality", action="store_true", help="matriz de Gram ⟨ψ_i, ψ_j⟩")
    p.add_argument("--inner", nargs=2, type=int, default=None, metavar=("N", "M"), help="⟨ψ_N, ψ_M⟩")
    add_process_args(p, default=None)
    p.set_defaults(func=cmd_polys)
