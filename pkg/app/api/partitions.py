from typing import List

from app.api.common import add_partition_arg, integers, partition_arg, rat
from app.schemas.results import CommandResult
from app.services.mobius import lower_set, mobius_nc, mobius_p, upper_set
from app.services.partitions import (
    bell,
    catalan,
    classify_blocks,
    covers,
    crossing_number,
    diagonal_size,
    direct_multiple,
    direct_sum,
    enumerate_all,
    enumerate_interval,
    enumerate_noncrossing,
    expand,
    has_inner_singleton,
    interleave,
    is_noncrossing,
    join,
    kreweras,
    leq,
    meet,
    noncrossing_refinements,
    opposite,
    thicken,
)

OPERATIONS = (
    "parse_partition",
    "enumerate_all",
    "enumerate_noncrossing",
    "enumerate_interval",
    "noncrossing_refinements",
    "is_noncrossing",
    "leq",
    "meet",
    "join",
    "opposite",
    "thicken",
    "expand",
    "direct_sum",
    "direct_multiple",
    "interleave",
    "classify_blocks",
    "covers",
    "crossing_number",
    "has_inner_singleton",
    "kreweras",
    "mobius_nc",
    "mobius_p",
    "upper_set",
    "lower_set",
    "diagonal_size",
    "catalan",
    "bell",
)

ENUMERATORS = {
    "all": enumerate_all,
    "nc": enumerate_noncrossing,
    "interval": enumerate_interval,
}
COUNTS = {"all": bell, "nc": catalan, "interval": lambda n: 2 ** (n - 1) if n else 1}


def cmd_enumerate(args) -> List[CommandResult]:
    if args.refinements_of:
        source = partition_arg(args.refinements_of)
        stream = noncrossing_refinements(source)
        inputs = {"refinements_of": str(source)}
    else:
        stream = ENUMERATORS[args.family](args.size)
        inputs = {"family": args.family, "n": args.size}
    results = [CommandResult(command="partitions enumerate", inputs=inputs, value=p.to_json()) for p in stream]
    if args.count:
        expected = None if args.refinements_of else COUNTS[args.family](args.size)
        return [
            CommandResult(
                command="partitions enumerate",
                inputs=inputs,
                value={"count": len(results), "closed_form": expected},
            )
        ]
    return results


def cmd_info(args) -> List[CommandResult]:
    pi = partition_arg(args.partition, n=args.n)
    value = {
        "partition": pi.to_json(),
        "n": pi.n,
        "blocks": len(pi),
        "noncrossing": is_noncrossing(pi),
        "opposite": opposite(pi).to_json(),
    }
    if args.N is not None:
        value["diagonal_size"] = diagonal_size(pi, args.N)
    if value["noncrossing"]:
        value["roles"] = classify_blocks(pi).to_json()
        value["inner_singleton"] = has_inner_singleton(pi)
        value["covers"] = {str(k): v for k, v in covers(pi).items()}
    if args.thicken:
        value["thicken"] = thicken(pi, args.thicken).to_json()
    if args.expand:
        value["expand"] = expand(pi, integers(args.expand)).to_json()
    if args.multiple:
        value["multiple"] = direct_multiple(pi, args.multiple).to_json()
    if args.other:
        other = partition_arg(args.other)
        value["other"] = other.to_json()
        value["direct_sum"] = direct_sum(pi, other).to_json()
        if other.n == pi.n:
            value["leq"] = leq(pi, other)
            value["meet"] = meet(pi, other).to_json()
            value["join"] = join(pi, other).to_json()
            value["interleave"] = interleave(pi, other).to_json()
    return [CommandResult(command="partitions info", inputs={"partition": str(pi)}, value=value)]


def cmd_mobius(args) -> List[CommandResult]:
    sigma = partition_arg(args.sigma)
    pi = partition_arg(args.pi)
    fn = mobius_nc if args.lattice == "nc" else mobius_p
    inputs = {"sigma": str(sigma), "pi": str(pi), "lattice": args.lattice}
    results = [CommandResult(command="partitions mobius", inputs=inputs, value=rat(fn(sigma, pi)))]
    if args.upper:
        results.append(
            CommandResult(
                command="partitions mobius",
                inputs={**inputs, "set": "upper"},
                value=[p.to_json() for p in upper_set(sigma, args.lattice)],
            )
        )
    if args.lower:
        results.append(
            CommandResult(
                command="partitions mobius",
                inputs={**inputs, "set": "lower"},
                value=[p.to_json() for p in lower_set(pi, args.lattice)],
            )
        )
    return results


def cmd_kreweras(args) -> List[CommandResult]:
    pi = partition_arg(args.partition, n=args.n)
    return [CommandResult(command="partitions kreweras", inputs={"partition": str(pi)}, value=kreweras(pi).to_json())]


def cmd_crossing(args) -> List[CommandResult]:
    pi = partition_arg(args.partition, n=args.n)
    return [CommandResult(command="partitions crossing", inputs={"partition": str(pi)}, value=crossing_number(pi))]


def register(subparsers) -> None:
    parser = subparsers.add_parser("partitions", help="retículos P(n), NC(n), Int(n)")
    actions = parser.add_subparsers(dest="action", required=True)

    p = actions.add_parser("enumerate", help="lista particiones")
    p.add_argument("size", type=int, nargs="?", default=0, metavar="n")
    p.add_argument("--family", choices=sorted(ENUMERATORS), default="nc")
    p.add_argument("--refinements-of", default=None, help="refinamientos noncrossing de una partición")
    p.add_argument("--count", action="store_true", help="solo el conteo")
    p.set_defaults(func=cmd_enumerate)

    p = actions.add_parser("info", help="estructura de una partición")
    add_partition_arg(p)
    p.add_argument("--N", type=int, default=None, help="tamaño de la diagonal S^N_π")
    p.add_argument("--thicken", type=int, default=None)
    p.add_argument("--expand", nargs="+", default=None, help="vector u")
    p.add_argument("--multiple", type=int, default=None)
    p.add_argument("--other", default=None, help="segunda partición (meet, join, suma)")
    p.set_defaults(func=cmd_info)

    p = actions.add_parser("mobius", help="μ(σ, π)")
    p.add_argument("sigma")
    p.add_argument("pi")
    p.add_argument("--lattice", choices=["p", "nc"], default="nc")
    p.add_argument("--upper", action="store_true", help="también {τ ≥ σ}")
    p.add_argument("--lower", action="store_true", help="también {τ ≤ π}")
    p.set_defaults(func=cmd_mobius)

    p = actions.add_parser("kreweras", help="complemento de Kreweras")
    add_partition_arg(p)
    p.set_defaults(func=cmd_kreweras)

    p = actions.add_parser("crossing", help="número de cruces c(π)")
    add_partition_arg(p)
    p.set_defaults(func=cmd_crossing)
