from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Literal

from app.core.config import require_cap
from app.core.errors import CrossingPartitionError, NotInInterval
from app.core.logs import get_logger
from app.models.partition import SetPartition
from app.services.partitions import rgs_search, is_noncrossing, leq

Lattice = Literal["p", "nc"]

# tablas μ(σ, ·) retenidas
MOBIUS_CACHE_SIZE = 4096


class LatticeService:
    """Intervalos y funciones de Möbius en P(n) y NC(n).

    Las tablas μ(σ, ·) se calculan por inversión de la función zeta y se
    guardan por (σ, π, retículo) en un LRU acotado.
    """

    def __init__(self, cache_size: int = MOBIUS_CACHE_SIZE):
        self._logger = get_logger(self.__class__.__name__)
        self.mobius_table = lru_cache(maxsize=cache_size)(self._mobius_table)

    def _check_lattice(self, lattice: str, *parts: SetPartition) -> None:
        if lattice not in ("p", "nc"):
            raise ValueError("Retículo no válido (use 'p' o 'nc').")
        if lattice == "nc":
            for p in parts:
                if not is_noncrossing(p):
                    raise CrossingPartitionError(f"'{p}' no pertenece a NC({p.n}).")

    def _noncrossing_coarsenings(self, sigma: SetPartition) -> List[SetPartition]:
        require_cap("noncrossing", sigma.n)
        return list(rgs_search(sigma.n, noncrossing=True, above=sigma))

    def interval(self, sigma: SetPartition, pi: SetPartition, lattice: Lattice) -> List[SetPartition]:
        """[σ, π] en el retículo pedido, de más fina a más gruesa."""
        self._check_lattice(lattice, sigma, pi)
        if not leq(sigma, pi):
            raise NotInInterval(f"'{sigma}' no es ≤ '{pi}'.")

        if sigma.is_zero():
            # desde abajo: refinamientos de π
            require_cap("crossing" if lattice == "nc" else "all", pi.n)
            out = list(rgs_search(pi.n, noncrossing=(lattice == "nc"), key_of=pi.block_index))
        elif lattice == "nc":
            # desde arriba, sin salir de NC(n)
            out = [tau for tau in self._noncrossing_coarsenings(sigma) if leq(tau, pi)]
        else:
            # desde arriba: particiones del conjunto de bloques de σ
            require_cap("all", len(sigma))
            out = []
            for coarse in rgs_search(len(sigma), noncrossing=False):
                blocks = [
                    [e for idx in cb for e in sigma.blocks[idx - 1]]
                    for cb in coarse.blocks
                ]
                tau = SetPartition.from_blocks(blocks, n=sigma.n)
                if leq(tau, pi):
                    out.append(tau)
        out.sort(key=lambda p: (-len(p), p.blocks))
        return out

    def noncrossing_above(self, pi: SetPartition) -> List[SetPartition]:
        """{τ ∈ NC(n) : τ ≥ π}; π puede tener cruces."""
        out = self._noncrossing_coarsenings(pi)
        out.sort(key=lambda p: (-len(p), p.blocks))
        return out

    def _mobius_table(
        self, sigma: SetPartition, pi: SetPartition, lattice: Lattice
    ) -> Dict[SetPartition, Fraction]:
        """μ(σ, τ) para todo τ en [σ, π]."""
        elems = self.interval(sigma, pi, lattice)
        table: Dict[SetPartition, Fraction] = {}
        for tau in elems:
            if tau == sigma:
                table[tau] = Fraction(1)
                continue
            # μ(σ, τ) = −Σ_{σ ≤ ρ < τ} μ(σ, ρ)
            total = Fraction(0)
            for rho, mu in table.items():
                if len(rho) > len(tau) and leq(rho, tau):
                    total += mu
            table[tau] = -total

        self._logger.debug("tabla de Möbius %s [%s, %s]: %d elementos", lattice, sigma, pi, len(table))
        return table

    def mobius(self, sigma: SetPartition, pi: SetPartition, lattice: Lattice) -> Fraction:
        return self.mobius_table(sigma, pi, lattice)[pi]

    def clear(self) -> None:
        self.mobius_table.cache_clear()


lattice_service = LatticeService()


def mobius_p(sigma: SetPartition, pi: SetPartition) -> Fraction:
    return lattice_service.mobius(sigma, pi, "p")


def mobius_nc(sigma: SetPartition, pi: SetPartition) -> Fraction:
    return lattice_service.mobius(sigma, pi, "nc")


def upper_set(pi: SetPartition, lattice: Lattice) -> List[SetPartition]:
    """{σ : σ ≥ π} dentro del retículo."""
    return lattice_service.interval(pi, SetPartition.one(pi.n), lattice)


def lower_set(pi: SetPartition, lattice: Lattice) -> List[SetPartition]:
    """{σ : σ ≤ π} dentro del retículo."""
    return lattice_service.interval(SetPartition.zero(pi.n), pi, lattice)
