from typing import List

from app.api.common import (
    add_partition_arg,
    add_process_args,
    combination_json,
    integers,
    partition_arg,
    process_from_args,
    rat,
    rationals,
)
from app.core.errors import UsageError
from app.schemas.results import CommandResult
from app.services import measures, polynomials

OPERATIONS = (
    "st_expectation",
    "pr_expectation",
    "st_from_pr",
    "pr_from_st",
    "multiplicativity_check",
    "inner_singleton_vanishing",
    "brownian_product_measure",
    "brownian_product_expectation",
    "poisson_separation_predicate",
    "poisson_product_measure",
    "poisson_product_expectation",
    "ito_expand",
    "ito_expectation",
    "ito_orthogonality_expectation",
    "ito_mobius_expand",
    "ito_mobius_expectation",
    "ito_expectation_via_polynomials",
    "finite_n_laurent",
    "finite_n_expectation",
    "vanishing_order_check",
    "diagonal_cumulant",
    "diagonal_cumulant_via_generator",
    "delta_word_moment",
    "word_limit_from_oracle",
    "sandwich_limit",
    "sandwich_limit_expectation",
)


def _inputs(pi, P, **extra) -> dict:
    return {"partition": str(pi), "process": P.to_json(), **extra}


def cmd_st(args) -> List[CommandResult]:
    pi = partition_arg(args.partition, n=args.n)
    P = process_from_args(args)
    value = {"expectation": rat(measures.st_expectation(pi, P))}
    if args.table:
        value["in_pr"] = combination_json(measures.st_from_pr(pi))
    if args.multiplicativity:
        value["multiplicative"] = measures.multiplicativity_check(pi, P)
    if args.inner_singleton:
        value["inner_singleton_value"] = rat(measures.inner_singleton_vanishing(pi, P))
    return [CommandResult(command="st", inputs=_inputs(pi, P), value=value)]


def cmd_pr(args) -> List[CommandResult]:
    pi = partition_arg(args.partition, n=args.n)
    P = process_from_args(args)
    value = {"expectation": rat(measures.pr_expectation(pi, P))}
    if args.table:
        value["in_st"] = combination_json(measures.pr_from_st(pi))
    if args.closed_form == "brownian":
        form = measures.brownian_product_measure(pi)
        value["closed_form"] = form.to_json()
        value["closed_form_expectation"] = rat(measures.brownian_product_expectation(form, P))
    elif args.closed_form == "poisson":
        value["separation"] = measures.poisson_separation_predicate(pi)
        form = measures.poisson_product_measure(pi, t=None if args.symbolic else P.t)
        value["closed_form"] = form.to_json()
        if form.status != "not-covered":
            value["closed_form_expectation"] = rat(measures.poisson_product_expectation(form, P))
    return [CommandResult(command="pr", inputs=_inputs(pi, P), value=value)]


def cmd_ito(args) -> List[CommandResult]:
    pi = partition_arg(args.partition, n=args.n)
    P = process_from_args(args)
    value = {
        "expansion": [s.to_json() for s in measures.ito_expand(pi)],
        "expectation": rat(measures.ito_expectation(pi, P)),
        "orthogonality_expectation": rat(measures.ito_orthogonality_expectation(pi, P)),
    }
    if args.mobius:
        value["mobius"] = combination_json(measures.ito_mobius_expand(pi, args.lattice))
        value["mobius_expectation"] = rat(measures.ito_mobius_expectation(pi, P, args.lattice))
    if args.via_polynomials:
        value["polynomial_expectation"] = rat(polynomials.ito_expectation_via_polynomials(pi, P))
    return [CommandResult(command="ito", inputs=_inputs(pi, P, lattice=args.lattice), value=value)]


def cmd_finite_n(args) -> List[CommandResult]:
    pi = partition_arg(args.partition, n=args.n)
    P = process_from_args(args)
    k = integers(args.k) if args.k else [1] * pi.n
    inputs = _inputs(pi, P, k=k)
    if args.N is not None:
        inputs["N"] = args.N
        return [CommandResult(command="finite-n", inputs=inputs, value=rat(measures.finite_n_expectation(pi, k, P, args.N)))]

    laurent = measures.finite_n_laurent(pi, k, P)
    value = {"laurent": laurent.to_json(), "divergent": laurent.is_divergent()}
    if not laurent.is_divergent():
        value["limit"] = rat(laurent.limit_at_infinity())
    if args.vanishing:
        value["vanishing_order"] = measures.vanishing_order_check(pi, P)
    return [CommandResult(command="finite-n", inputs=inputs, value=value)]


def cmd_diagonal(args) -> List[CommandResult]:
    P = process_from_args(args)
    if args.action == "cumulant":
        inputs = {"process": P.to_json(), "n": args.order, "k": args.k}
        value = {"cumulant": rat(measures.diagonal_cumulant(args.order, args.k, P))}
        if P.kind == "compound-poisson":
            value["via_generator"] = rat(measures.diagonal_cumulant_via_generator(args.order, args.k, P))
        return [CommandResult(command="diagonal cumulant", inputs=inputs, value=value)]

    if args.action == "word":
        word = integers(args.word)
        inputs = {"process": P.to_json(), "word": word, "method": args.method}
        value = {"moment": rat(measures.delta_word_moment(word, P, method=args.method))}
        if args.oracle:
            value["oracle_limit"] = rat(measures.word_limit_from_oracle(word, P))
        return [CommandResult(command="diagonal word", inputs=inputs, value=value)]

    m = integers(args.m)
    z = rationals(args.z) if args.z else []
    if len(m) != len(z) + 1:
        raise UsageError("Se necesitan k+1 exponentes --m para k valores --z.")
    limit = measures.sandwich_limit(m, z)
    inputs = {"process": P.to_json(), "m": m, "z": [rat(v) for v in z]}
    value = {
        "coefficient": rat(limit.coefficient),
        "diagonal_index": limit.diagonal_index,
        "expectation": rat(measures.sandwich_limit_expectation(limit, P)),
    }
    return [CommandResult(command="diagonal sandwich", inputs=inputs, value=value)]


def register(subparsers) -> None:
    p = subparsers.add_parser("st", help="φ(St_π)")
    add_partition_arg(p)
    add_process_args(p)
    p.add_argument("--table", action="store_true", help="St_π como combinación de Pr_σ")
    p.add_argument("--multiplicativity", action="store_true")
    p.add_argument("--inner-singleton", action="store_true", help="comprobación con proceso centrado")
    p.set_defaults(func=cmd_st)

    p = subparsers.add_parser("pr", help="φ(Pr_π)")
    add_partition_arg(p)
    add_process_args(p)
    p.add_argument("--table", action="store_true", help="Pr_π como suma de St_σ")
    p.add_argument("--closed-form", choices=["brownian", "poisson"], default=None)
    p.add_argument("--symbolic", action="store_true", help="deja t simbólico en la forma de Poisson")
    p.set_defaults(func=cmd_pr)

    p = subparsers.add_parser("ito", help="producto ordenado de ψ por bloques")
    add_partition_arg(p)
    add_process_args(p)
    p.add_argument("--mobius", action="store_true")
    p.add_argument("--lattice", choices=["auto", "nc", "p"], default="auto")
    p.add_argument("--via-polynomials", action="store_true", help="solo particiones de intervalos")
    p.set_defaults(func=cmd_ito)

    p = subparsers.add_parser("finite-n", help="oráculo exacto de N finito")
    add_partition_arg(p)
    add_process_args(p, default="poisson")
    p.add_argument("--k", nargs="+", default=None, help="vector de potencias (por defecto todo 1)")
    p.add_argument("--N", type=int, default=None, help="evalúa en N; sin --N da el Laurent")
    p.add_argument("--symbolic", action="store_true", help="Laurent en N (por defecto)")
    p.add_argument("--vanishing", action="store_true", help="compara el orden con −c(π)")
    p.set_defaults(func=cmd_finite_n)

    p = subparsers.add_parser("diagonal", help="medidas diagonales Δ_k")
    actions = p.add_subparsers(dest="action", required=True)

    a = actions.add_parser("cumulant", help="r_n(Δ_k)")
    a.add_argument("--n", dest="order", type=int, required=True)
    a.add_argument("--k", type=int, required=True)
    add_process_args(a)
    a.set_defaults(func=cmd_diagonal)

    a = actions.add_parser("word", help="φ(Δ_{k_1}⋯Δ_{k_n})")
    a.add_argument("word", nargs="+")
    a.add_argument("--method", choices=["recursive", "enumerate"], default="recursive")
    a.add_argument("--oracle", action="store_true", help="también el límite del oráculo")
    add_process_args(a)
    a.set_defaults(func=cmd_diagonal)

    a = actions.add_parser("sandwich", help="Σ_i X_i^{m_1} Z_1 ⋯ X_i^{m_{k+1}}")
    a.add_argument("--m", nargs="+", required=True)
    a.add_argument("--z", nargs="+", default=None, help="φ(Z_j)")
    add_process_args(a)
    a.set_defaults(func=cmd_diagonal)
