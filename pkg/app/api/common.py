import argparse
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from app.core.errors import UsageError
from app.models.partition import SetPartition
from app.models.process import ProcessModel
from app.models.sequences import as_fraction, format_rational
from app.schemas.process import ProcessSpec
from app.services.partitions import parse_partition


class CliParser(argparse.ArgumentParser):
    """argparse que levanta UsageError en vez de salir con código 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def rationals(values: Iterable[str]) -> List[Fraction]:
    """Acepta "1 2 3/4" o "1,2,3/4"."""
    out = []
    for v in values:
        out.extend(as_fraction(tok) for tok in str(v).replace(",", " ").split())
    return out


def integers(values: Iterable[str]) -> List[int]:
    out = []
    for v in values:
        for tok in str(v).replace(",", " ").split():
            try:
                out.append(int(tok))
            except ValueError:
                raise UsageError(f"'{tok}' no es un entero.")
    return out


def partition_arg(text: str, n: int | None = None) -> SetPartition:
    return parse_partition(text, n=n)


def add_partition_arg(parser: argparse.ArgumentParser, name: str = "partition") -> None:
    parser.add_argument(name, help='partición canónica, ej. "1 3|2 4"')
    parser.add_argument("--n", type=int, default=None, help="tamaño explícito (singletons al final)")


def add_process_args(parser: argparse.ArgumentParser, default: Optional[str] = "semicircular") -> None:
    g = parser.add_argument_group("proceso")
    g.add_argument("--process", default=default, help="semicircular | poisson | compound | custom")
    g.add_argument("--t", default="1", help="tiempo t = |A| (racional p/q)")
    g.add_argument("--centered", action="store_true")
    g.add_argument("--generator", nargs="+", default=None, help="momentos del generador (compound)")
    g.add_argument("--base", nargs="+", default=None, help="cumulantes por unidad de tiempo (custom)")


def process_from_args(args) -> ProcessModel:
    spec = ProcessSpec(
        kind=args.process,
        t=args.t,
        centered=args.centered,
        generator=[format_rational(v) for v in rationals(args.generator)] if args.generator else None,
        base=[format_rational(v) for v in rationals(args.base)] if args.base else None,
    )
    return spec.to_model()


def rat(q: Fraction) -> str:
    return format_rational(q)


def rat_list(values: Sequence[Fraction]) -> List[str]:
    return [format_rational(v) for v in values]


def combination_json(combination) -> List[dict]:
    return [
        {"coefficient": rat(c), "partition": p.to_json()}
        for c, p in sorted(combination, key=lambda cp: (-len(cp[1]), cp[1].blocks))
    ]
