from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import sympy

from app.core.config import require_cap
from app.core.errors import (
    CrossingPartitionError,
    LatticeMismatch,
    PartitionFormatError,
)
from app.models.partition import BlockRoleLabeling, SetPartition


# ==============================
# Formato canónico
# ==============================

def parse_partition(text: str, n: Optional[int] = None) -> SetPartition:
    """Lee "1 5 8|2 7|3|4 6". n explícito permite singletons al final."""
    text = text.strip()
    blocks: List[Tuple[int, ...]] = []
    if text:
        for chunk in text.split("|"):
            tokens = chunk.split()
            if not tokens:
                raise PartitionFormatError(f"Bloque vacío en '{text}'.")
            try:
                block = tuple(int(tok) for tok in tokens)
            except ValueError:
                raise PartitionFormatError(f"'{chunk.strip()}' no es una lista de enteros.")
            if any(e <= 0 for e in block):
                raise PartitionFormatError("Los elementos deben ser enteros positivos.")
            blocks.append(block)

    inferred = max((max(b) for b in blocks), default=0)
    if n is None:
        n = inferred
    elif n < inferred:
        raise PartitionFormatError(f"n={n} es menor que el elemento máximo {inferred}.")

    elems = [e for b in blocks for e in b]
    if len(elems) != len(set(elems)):
        dup = sorted({e for e in elems if elems.count(e) > 1})
        raise PartitionFormatError(f"Elementos duplicados: {dup}.")
    faltan = sorted(set(range(1, inferred + 1)) - set(elems))
    if faltan:
        raise PartitionFormatError(f"Huecos en la cobertura de 1..{inferred}: {faltan}.")
    # singletons al final hasta n
    blocks.extend((e,) for e in range(inferred + 1, n + 1))
    return SetPartition.from_blocks(blocks, n=n)


def format_partition(pi: SetPartition) -> str:
    return str(pi)


# ==============================
# Enumeración
# ==============================

def rgs_search(
    n: int,
    noncrossing: bool,
    key_of: Optional[Callable[[int], int]] = None,
    above: Optional[SetPartition] = None,
) -> Iterator[SetPartition]:
    """DFS sobre restricted growth strings, en orden lexicográfico.

    Con key_of, cada bloque hereda la clave de su primer elemento y solo
    acepta posiciones con la misma clave. Con above=π solo se generan
    τ ≥ π: cada punto que no abre su bloque de π va forzado al bloque
    del punto anterior de ese bloque. Con noncrossing=True se podan los
    cruces al vuelo.
    """
    if above is not None and above.n != n:
        raise LatticeMismatch(f"above tiene n={above.n}, se esperaba {n}.")
    labels: List[int] = []
    mins: List[int] = []
    lasts: List[int] = []
    keys: List[int] = []

    def can_join(i: int, b: int) -> bool:
        last = lasts[b]
        # todo lo que quedó entre `last` e i debe estar anidado dentro
        for e in range(last + 1, i):
            if mins[labels[e - 1]] < last:
                return False
        return True

    def walk(i: int) -> Iterator[SetPartition]:
        if i > n:
            yield SetPartition.from_labels(labels)
            return
        key = key_of(i) if key_of else 0
        forced: Optional[int] = None
        if above is not None:
            blk = above.block_of(i)
            if blk[0] != i:
                forced = labels[blk[blk.index(i) - 1] - 1]
        for b in range(len(mins)):
            if keys[b] != key:
                continue
            if forced is not None and b != forced:
                continue
            if noncrossing and not can_join(i, b):
                continue
            prev = lasts[b]
            labels.append(b)
            lasts[b] = i
            yield from walk(i + 1)
            lasts[b] = prev
            labels.pop()
        if forced is not None:
            return
        labels.append(len(mins))
        mins.append(i)
        lasts.append(i)
        keys.append(key)
        yield from walk(i + 1)
        keys.pop()
        lasts.pop()
        mins.pop()
        labels.pop()

    return walk(1)


def enumerate_all(n: int) -> Iterator[SetPartition]:
    require_cap("all", n)
    return rgs_search(n, noncrossing=False)


def enumerate_noncrossing(n: int) -> Iterator[SetPartition]:
    require_cap("noncrossing", n)
    return rgs_search(n, noncrossing=True)


def enumerate_interval(n: int) -> Iterator[SetPartition]:
    require_cap("interval", n)

    def gen() -> Iterator[SetPartition]:
        if n == 0:
            yield SetPartition.zero(0)
            return
        for mask in range(2 ** (n - 1)):
            labels = [0]
            for pos in range(1, n):
                step = (mask >> (n - 1 - pos)) & 1
                labels.append(labels[-1] + step)
            yield SetPartition.from_labels(labels)

    return gen()


def noncrossing_refinements(pi: SetPartition) -> Iterator[SetPartition]:
    """Todas las σ noncrossing con σ ≤ π."""
    require_cap("crossing", pi.n)
    return rgs_search(pi.n, noncrossing=True, key_of=pi.block_index)


# ==============================
# Estructura
# ==============================

def is_noncrossing(pi: SetPartition) -> bool:
    arcs: List[Tuple[int, int, int]] = []
    for idx, b in enumerate(pi.blocks):
        for a, c in zip(b, b[1:]):
            arcs.append((a, c, idx))
    for a, c, x in arcs:
        for b, d, y in arcs:
            if x != y and a < b < c < d:
                return False
    return True


def _check_same_n(sigma: SetPartition, pi: SetPartition) -> None:
    if sigma.n != pi.n:
        raise LatticeMismatch(f"Las particiones tienen distinto n ({sigma.n} y {pi.n}).")


def leq(sigma: SetPartition, pi: SetPartition) -> bool:
    _check_same_n(sigma, pi)
    return all(len({pi.block_index(e) for e in b}) == 1 for b in sigma.blocks)


def meet(sigma: SetPartition, pi: SetPartition) -> SetPartition:
    _check_same_n(sigma, pi)
    pairs = [(sigma.block_index(i), pi.block_index(i)) for i in range(1, sigma.n + 1)]
    return SetPartition.from_labels(pairs)


def join(sigma: SetPartition, pi: SetPartition) -> SetPartition:
    _check_same_n(sigma, pi)
    g = nx.Graph()
    g.add_nodes_from(range(1, sigma.n + 1))
    for part in (sigma, pi):
        for b in part.blocks:
            nx.add_path(g, b)
    return SetPartition.from_blocks(nx.connected_components(g), n=sigma.n)


def opposite(pi: SetPartition) -> SetPartition:
    n = pi.n
    return SetPartition.from_blocks(([n - e + 1 for e in b] for b in pi.blocks), n=n)


def expand(pi: SetPartition, u: Sequence[int]) -> SetPartition:
    """Reemplaza el punto i por u_i puntos consecutivos del mismo bloque."""
    u = list(u)
    if len(u) != pi.n:
        raise ValueError(f"El vector u debe tener longitud {pi.n}, no {len(u)}.")
    if any(k < 1 for k in u):
        raise ValueError("Todas las entradas de u deben ser ≥ 1.")
    labels: List[int] = []
    for i, k in enumerate(u, start=1):
        labels.extend([pi.block_index(i)] * k)
    return SetPartition.from_labels(labels)


def thicken(pi: SetPartition, k: int) -> SetPartition:
    if k < 1:
        raise ValueError("k debe ser ≥ 1.")
    return expand(pi, [k] * pi.n)


def direct_sum(pi: SetPartition, sigma: SetPartition) -> SetPartition:
    shifted = [[e + pi.n for e in b] for b in sigma.blocks]
    return SetPartition.from_blocks(list(pi.blocks) + shifted, n=pi.n + sigma.n)


def direct_multiple(pi: SetPartition, m: int) -> SetPartition:
    """mπ = π + π + … + π (m sumandos)."""
    out = SetPartition.zero(0)
    for _ in range(m):
        out = direct_sum(out, pi)
    return out


def interleave(pi: SetPartition, other: SetPartition) -> SetPartition:
    """π sobre 1,3,5,… y `other` sobre 2,4,6,… (puntos 1, 1̄, 2, 2̄, …)."""
    _check_same_n(pi, other)
    blocks = [[2 * e - 1 for e in b] for b in pi.blocks]
    blocks += [[2 * e for e in b] for b in other.blocks]
    return SetPartition.from_blocks(blocks, n=2 * pi.n)


def _require_noncrossing(pi: SetPartition, op: str) -> None:
    if not is_noncrossing(pi):
        raise CrossingPartitionError(f"{op} requiere una partición noncrossing, recibió '{pi}'.")


def height_order(pi: SetPartition) -> nx.DiGraph:
    """B → C si existen i, j ∈ B y k ∈ C con i < k < j."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(pi)))
    for x, b in enumerate(pi.blocks):
        for y, c in enumerate(pi.blocks):
            if x != y and any(b[0] < k < b[-1] for k in c):
                g.add_edge(x, y)
    return g


def covers(pi: SetPartition) -> Dict[int, List[int]]:
    """Para cada bloque, los bloques que cubre directamente en el orden de altura."""
    _require_noncrossing(pi, "covers")
    reduced = nx.transitive_reduction(height_order(pi))
    return {x: sorted(reduced.successors(x)) for x in range(len(pi))}


def classify_blocks(pi: SetPartition) -> BlockRoleLabeling:
    _require_noncrossing(pi, "classify_blocks")
    g = height_order(pi)
    roles = tuple("inner" if g.in_degree(x) > 0 else "outer" for x in range(len(pi)))
    inner = roles.count("inner")
    return BlockRoleLabeling(
        partition=pi,
        roles=roles,
        inner_count=inner,
        outer_count=len(roles) - inner,
    )


def has_inner_singleton(pi: SetPartition) -> bool:
    labeling = classify_blocks(pi)
    return any(
        labeling.is_inner(x) and len(b) == 1 for x, b in enumerate(pi.blocks)
    )


def crossing_number(pi: SetPartition) -> int:
    """min(|σ| − |π|) sobre σ noncrossing, σ ≤ π (branch-and-bound)."""
    require_cap("crossing", pi.n)
    if is_noncrossing(pi):
        return 0

    n = pi.n
    best = [n]   # 0̂ siempre es una cota
    labels: List[int] = []
    mins: List[int] = []
    lasts: List[int] = []
    parent: List[int] = []
    started = set()
    remaining_starts = [len(pi)]

    def can_join(i: int, b: int) -> bool:
        last = lasts[b]
        for e in range(last + 1, i):
            if mins[labels[e - 1]] < last:
                return False
        return True

    def walk(i: int) -> None:
        # cota: bloques abiertos + bloques de π que aún no empezaron
        if len(mins) + remaining_starts[0] >= best[0]:
            return
        if i > n:
            best[0] = len(mins)
            return
        p = pi.block_index(i)
        for b in range(len(mins)):
            if parent[b] == p and can_join(i, b):
                prev = lasts[b]
                labels.append(b)
                lasts[b] = i
                walk(i + 1)
                lasts[b] = prev
                labels.pop()
        first = p not in started
        if first:
            started.add(p)
            remaining_starts[0] -= 1
        labels.append(len(mins))
        mins.append(i)
        lasts.append(i)
        parent.append(p)
        walk(i + 1)
        parent.pop()
        lasts.pop()
        mins.pop()
        labels.pop()
        if first:
            started.discard(p)
            remaining_starts[0] += 1

    walk(1)
    return best[0] - len(pi)


def kreweras(pi: SetPartition) -> SetPartition:
    """Complemento de Kreweras estándar: K(π) = π⁻¹ ∘ γ, γ = (1 2 … n)."""
    _require_noncrossing(pi, "kreweras")
    n = pi.n
    if n == 0:
        return pi
    inverse: Dict[int, int] = {}
    for b in pi.blocks:
        for a, c in zip(b, b[1:] + b[:1]):
            inverse[c] = a
    perm = {x: inverse[x % n + 1] for x in range(1, n + 1)}

    seen = set()
    cycles = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(x)
            x = perm[x]
        cycles.append(cycle)
    return SetPartition.from_blocks(cycles, n=n)


# ==============================
# Diagonales y conteos
# ==============================

def falling_factorial(N: int, m: int) -> int:
    return int(sympy.ff(N, m))


def diagonal_size(pi: SetPartition, N: int) -> int:
    """|S^n_π|: tuplas en {1..N}^n con i_a = i_b exactamente cuando a ∼ b."""
    if N < len(pi):
        return 0
    return falling_factorial(N, len(pi))


def catalan(n: int) -> int:
    return int(sympy.catalan(n))


def bell(n: int) -> int:
    return int(sympy.bell(n))
