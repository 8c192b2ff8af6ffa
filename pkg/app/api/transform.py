from typing import List

from app.api.common import partition_arg, rat, rat_list, rationals
from app.core.errors import UsageError
from app.models.sequences import CumulantSeq, MomentSeq, SeriesQ
from app.schemas.results import CommandResult
from app.services.transforms import (
    alternating_moment,
    center,
    cumulants_from_moments,
    cumulants_from_r_series,
    free_additive_convolution,
    free_multiplicative_convolution,
    m_pi,
    moment_seq_power,
    moments_from_cumulants,
    r_from_s,
    r_pi,
    r_series,
    s_from_r,
    s_transform_of_moments,
    sandwich_s_route,
    sandwich_transform,
    scale_time,
)

OPERATIONS = (
    "moments_from_cumulants",
    "cumulants_from_moments",
    "m_pi",
    "r_pi",
    "alternating_moment",
    "scale_time",
    "center",
    "free_additive_convolution",
    "free_multiplicative_convolution",
    "moment_seq_power",
    "r_series",
    "cumulants_from_r_series",
    "s_from_r",
    "r_from_s",
    "s_transform_of_moments",
    "sandwich_transform",
    "sandwich_s_route",
)


def _result(action: str, inputs: dict, value) -> List[CommandResult]:
    return [CommandResult(command=f"transform {action}", inputs=inputs, value=value)]


def cmd_m2c(args) -> List[CommandResult]:
    m = MomentSeq(tuple(rationals(args.values)))
    r = cumulants_from_moments(m)
    value = {"cumulants": r.to_json()}
    if args.partition:
        pi = partition_arg(args.partition)
        value["m_pi"] = rat(m_pi(pi, m))
        value["r_pi"] = rat(r_pi(pi, r))
    return _result("m2c", {"moments": m.to_json()}, value)


def cmd_c2m(args) -> List[CommandResult]:
    r = CumulantSeq(tuple(rationals(args.values)))
    if args.center:
        r = center(r)
    if args.t is not None:
        r = scale_time(r, rationals([args.t])[0])
    m = moments_from_cumulants(r)
    value = {"cumulants": r.to_json(), "moments": m.to_json()}
    if args.power:
        value["power_moments"] = moment_seq_power(m, args.power).to_json()
    return _result("c2m", {"cumulants": rat_list(rationals(args.values))}, value)


def cmd_alt_moment(args) -> List[CommandResult]:
    x = CumulantSeq(tuple(rationals(args.x_cumulants)))
    y = MomentSeq(tuple(rationals(args.y_moments)))
    value = alternating_moment(x, y, args.order)
    return _result(
        "alt-moment",
        {"x_cumulants": x.to_json(), "y_moments": y.to_json(), "n": args.order},
        rat(value),
    )


def cmd_s_transform(args) -> List[CommandResult]:
    if args.inverse:
        S = SeriesQ(tuple(rationals(args.inverse)))
        R = r_from_s(S)
        return _result(
            "s-transform",
            {"s": S.to_json()},
            {"r": R.to_json(), "cumulants": cumulants_from_r_series(R).to_json()},
        )
    if args.moments:
        m = MomentSeq(tuple(rationals(args.moments)))
        return _result("s-transform", {"moments": m.to_json()}, {"s": s_transform_of_moments(m).to_json()})
    if not args.cumulants:
        raise UsageError("Indique --cumulants, --moments o --inverse.")
    r = CumulantSeq(tuple(rationals(args.cumulants)))
    R = r_series(r)
    return _result("s-transform", {"cumulants": r.to_json()}, {"r": R.to_json(), "s": s_from_r(R).to_json()})


def cmd_convolve(args) -> List[CommandResult]:
    a, b = rationals(args.first), rationals(args.second)
    if args.kind == "additive":
        value = free_additive_convolution(CumulantSeq(tuple(a)), CumulantSeq(tuple(b))).to_json()
    else:
        value = free_multiplicative_convolution(MomentSeq(tuple(a)), MomentSeq(tuple(b))).to_json()
    return _result("convolve", {"kind": args.kind, "first": rat_list(a), "second": rat_list(b)}, value)


def cmd_sandwich(args) -> List[CommandResult]:
    m = MomentSeq(tuple(rationals(args.values)))
    y = sandwich_transform(m)
    value = {"cumulants": y.to_json()}
    if m.order and m[1] != 0:
        value["s"] = sandwich_s_route(m).to_json()
    return _result("sandwich", {"moments": m.to_json()}, value)


def register(subparsers) -> None:
    parser = subparsers.add_parser("transform", help="momentos, cumulantes libres, R y S")
    actions = parser.add_subparsers(dest="action", required=True)

    p = actions.add_parser("m2c", help="momentos → cumulantes libres")
    p.add_argument("values", nargs="+")
    p.add_argument("--partition", default=None, help="también M_π y R_π")
    p.set_defaults(func=cmd_m2c)

    p = actions.add_parser("c2m", help="cumulantes libres → momentos")
    p.add_argument("values", nargs="+")
    p.add_argument("--t", default=None, help="escala temporal r_n ↦ t r_n")
    p.add_argument("--center", action="store_true")
    p.add_argument("--power", type=int, default=None, help="momentos de e^k")
    p.set_defaults(func=cmd_c2m)

    p = actions.add_parser("alt-moment", help="φ(x_1 y_1 ⋯ x_n y_n) con x, y libres")
    p.add_argument("--x-cumulants", nargs="+", required=True)
    p.add_argument("--y-moments", nargs="+", required=True)
    p.add_argument("--n", dest="order", type=int, required=True)
    p.set_defaults(func=cmd_alt_moment)

    p = actions.add_parser("s-transform", help="serie S desde R (o al revés)")
    p.add_argument("--cumulants", nargs="+", default=None)
    p.add_argument("--moments", nargs="+", default=None)
    p.add_argument("--inverse", nargs="+", default=None, help="coeficientes de S; devuelve R")
    p.set_defaults(func=cmd_s_transform)

    p = actions.add_parser("convolve", help="convolución libre aditiva o multiplicativa")
    p.add_argument("kind", choices=["additive", "multiplicative"])
    p.add_argument("--first", nargs="+", required=True)
    p.add_argument("--second", nargs="+", required=True)
    p.set_defaults(func=cmd_convolve)

    p = actions.add_parser("sandwich", help="cumulantes de s x s")
    p.add_argument("values", nargs="+")
    p.set_defaults(func=cmd_sandwich)
