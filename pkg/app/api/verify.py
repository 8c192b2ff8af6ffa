from typing import List

from app.api.common import add_process_args, process_from_args, rationals
from app.schemas.results import CommandResult
from app.services.verification import DEFAULT_TIMES, SUITES, VerifyOptions, run_suite

OPERATIONS = ("run_suite",)


def cmd_verify(args) -> List[CommandResult]:
    processes = [process_from_args(args)] if args.process else None
    opts = VerifyOptions(
        max_n=args.max_n,
        times=tuple(rationals(args.times)) if args.times else DEFAULT_TIMES,
        processes=processes,
    )
    reports = run_suite(args.suite, opts)
    return [
        CommandResult(
            command=f"verify {r.suite}",
            inputs={"max_n": args.max_n, "process": processes[0].to_json() if processes else None},
            value=r.to_json(),
        )
        for r in reports
    ]


def register(subparsers) -> None:
    p = subparsers.add_parser("verify", help="suites de aceptación")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--max-n", type=int, default=None, help="tamaño máximo (cada suite tiene el suyo por defecto)")
    p.add_argument("--times", nargs="+", default=None, help="valores de t para la batería centrada")
    add_process_args(p, default=None)
    p.set_defaults(func=cmd_verify)
