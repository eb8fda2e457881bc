"""
Inversionsarrangement und Schnittverband

Der Schnittverband L_w ist der Bond-Verband des Inversionsgraphen: Elemente
sind Mengenpartitionen von [n], deren Blöcke zusammenhängend sind. Die
Hyperebenen H_1 > H_2 > ... > H_k kommen aus der Reflexionsfolge eines
reduzierten Ausdrucks. Ein Label ist der Index der kleinsten Hyperebene im
Sinne dieser Ordnung, also der GRÖSSTE Index.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from chromobruhat.permutation import (
    ExpressionError, InversionGraph, Permutation, ReducedExpression, Transposition,
    evaluate, inversion_graph, reduced_expression, reflection_sequence,
)
from chromobruhat.polynomial import IntPolynomial

logger = logging.getLogger(__name__)


class LatticeError(ValueError):
    """Interne Unstimmigkeit im Schnittverband (deutet auf einen Konstruktionsfehler)."""


@dataclass(frozen=True)
class SetPartition:
    """Kanonisch: Blöcke nach Minimum sortiert, innerhalb aufsteigend."""
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(b)) for b in self.blocks if b))
        object.__setattr__(self, 'blocks', canon)

    @classmethod
    def bottom(cls, n: int) -> 'SetPartition':
        return cls(tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> 'SetPartition':
        blocks = []
        for chunk in text.split('|'):
            if ',' in chunk:
                blocks.append(tuple(int(x) for x in chunk.split(',')))
            else:
                blocks.append(tuple(int(x) for x in chunk))
        return cls(tuple(blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def rank(self) -> int:
        return self.n - len(self.blocks)

    def block_of(self, a: int) -> Tuple[int, ...]:
        for b in self.blocks:
            if a in b:
                return b
        raise KeyError(a)

    def contains_pair(self, a: int, b: int) -> bool:
        """H_{ab} <= X: beide Punkte liegen im selben Block."""
        return b in self.block_of(a)

    def merge(self, a: int, b: int) -> 'SetPartition':
        ba = self.block_of(a)
        bb = self.block_of(b)
        if ba == bb:
            return self
        rest = [blk for blk in self.blocks if blk != ba and blk != bb]
        return SetPartition(tuple(rest) + (ba + bb,))

    def leq(self, other: 'SetPartition') -> bool:
        """Verfeinerung: jeder Block liegt in einem Block von other."""
        return all(set(b) <= set(other.block_of(b[0])) for b in self.blocks)

    def format(self) -> str:
        sep = '' if self.n <= 9 else ','
        return '|'.join(sep.join(str(x) for x in b) for b in self.blocks)

    def __str__(self) -> str:
        return self.format()

    def growth_string(self) -> Tuple[int, ...]:
        """Restricted-growth-Wort: Position a trägt die Nummer des Blocks von a."""
        index = {a: k for k, b in enumerate(self.blocks, start=1) for a in b}
        return tuple(index[a] for a in range(1, self.n + 1))

    def sort_key(self):
        return (self.rank, self.growth_string())


@dataclass(frozen=True)
class DecreasingChain:
    """Gesättigte Kette ab 0̂ mit streng steigenden Label-Indizes."""
    elements: Tuple[SetPartition, ...]
    labels: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.labels)

    @property
    def top(self) -> SetPartition:
        return self.elements[-1]

    def label_text(self) -> str:
        if not self.labels:
            return '∅'
        return ''.join(f"t{j}" for j in self.labels)


@dataclass(frozen=True, eq=False)
class IntersectionLattice:
    w: Permutation
    expression: ReducedExpression
    hyperplanes: Tuple[Transposition, ...]
    elements: Tuple[SetPartition, ...]
    covers: Dict[SetPartition, Tuple[Tuple[SetPartition, int], ...]] = field(repr=False)

    @property
    def n(self) -> int:
        return self.w.n

    @property
    def bottom(self) -> SetPartition:
        return self.elements[0]

    @property
    def top(self) -> SetPartition:
        return self.elements[-1]

    @property
    def rank(self) -> int:
        return self.top.rank

    def label(self, lower: SetPartition, upper: SetPartition) -> int:
        for target, lab in self.covers[lower]:
            if target == upper:
                return lab
        raise LatticeError(f"{upper} does not cover {lower}")

    def hasse_rows(self) -> List[Tuple[str, str, int]]:
        """(untere, obere, Label) aller Überdeckungen in deterministischer Reihenfolge."""
        rows = []
        for x in self.elements:
            for y, lab in self.covers[x]:
                rows.append((x.format(), y.format(), lab))
        return rows


# --- Aufbau ------------------------------------------------------------------

def _cover_label(lower: SetPartition, upper: SetPartition,
                 hyperplanes: Sequence[Transposition]) -> int:
    qualifying = [
        idx for idx, h in enumerate(hyperplanes, start=1)
        if upper.contains_pair(h.i, h.j) and not lower.contains_pair(h.i, h.j)
    ]
    return max(qualifying)


def build_lattice(w: Permutation, expr: Optional[ReducedExpression] = None) -> IntersectionLattice:
    """Schnittverband durch Join-Abschluss ab den Atomen.

    Jeder Überdeckungsschritt verschmilzt zwei Blöcke entlang einer
    Hyperebene, die noch nicht unter dem Element liegt.
    """
    if expr is None:
        expr = reduced_expression(w)
    if expr.n != w.n or evaluate(expr) != w:
        raise ExpressionError(f"expression {expr.format()} does not evaluate to {w}")
    hyperplanes = tuple(reflection_sequence(expr))

    bottom = SetPartition.bottom(w.n)
    seen: Set[SetPartition] = {bottom}
    frontier = [bottom]
    covers: Dict[SetPartition, Tuple[Tuple[SetPartition, int], ...]] = {}
    while frontier:
        nxt = []
        for x in frontier:
            ups: Dict[SetPartition, int] = {}
            for h in hyperplanes:
                if x.contains_pair(h.i, h.j):
                    continue
                y = x.merge(h.i, h.j)
                if y not in ups:
                    ups[y] = _cover_label(x, y, hyperplanes)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
            covers[x] = tuple(sorted(ups.items(), key=lambda item: (item[1], item[0].blocks)))
        frontier = nxt

    elements = tuple(sorted(seen, key=SetPartition.sort_key))
    logger.debug("lattice of %s: %d elements, %d hyperplanes", w, len(elements), len(hyperplanes))
    return IntersectionLattice(w, expr, hyperplanes, elements, covers)


def bond_partitions_bruteforce(graph: InversionGraph) -> Set[SetPartition]:
    """Alle Komponentenpartitionen über alle Kantenteilmengen (nur für kleine Graphen)."""
    edges = sorted(graph.edges)
    result = set()
    for r in range(len(edges) + 1):
        for subset in itertools.combinations(edges, r):
            g = graph.to_networkx(subset)
            result.add(SetPartition(tuple(tuple(c) for c in nx.connected_components(g))))
    return result


# --- Ketten ------------------------------------------------------------------

def iter_decreasing_chains(lattice: IntersectionLattice) -> Iterator[DecreasingChain]:
    """Tiefensuche nach Labels sortiert, Präfixe zuerst."""
    def walk(elements: List[SetPartition], labels: List[int]):
        yield DecreasingChain(tuple(elements), tuple(labels))
        last = labels[-1] if labels else 0
        for upper, lab in sorted(lattice.covers[elements[-1]], key=lambda item: item[1]):
            if lab > last:
                elements.append(upper)
                labels.append(lab)
                yield from walk(elements, labels)
                elements.pop()
                labels.pop()

    yield from walk([lattice.bottom], [])


def decreasing_chains(lattice: IntersectionLattice) -> List[DecreasingChain]:
    return list(iter_decreasing_chains(lattice))


def increasing_chain_counts(lattice: IntersectionLattice) -> Dict[Tuple[SetPartition, SetPartition], int]:
    """Anzahl λ-steigender maximaler Ketten in jedem Intervall [A,B].

    Steigend in der Hyperebenen-Ordnung heißt: Indizes streng fallend.
    Für eine EL-Markierung ist jeder Wert genau 1.
    """
    counts: Dict[Tuple[SetPartition, SetPartition], int] = {}
    for start in lattice.elements:
        reached: Dict[SetPartition, int] = {}

        def walk(x: SetPartition, last: int):
            reached[x] = reached.get(x, 0) + 1
            for upper, lab in lattice.covers[x]:
                if lab < last:
                    walk(upper, lab)

        walk(start, len(lattice.hyperplanes) + 1)
        for end in lattice.elements:
            if start.leq(end):
                counts[(start, end)] = reached.get(end, 0)
    return counts


def split_by_last_hyperplane(lattice: IntersectionLattice) -> Tuple[List[DecreasingChain], List[DecreasingChain]]:
    """Teilt C↓ in Ketten, deren Spitze H_k nicht enthält, und Ketten mit letztem Label k.

    Anfügen von X_m ∨ H_k bildet die erste Hälfte bijektiv auf die zweite ab.
    """
    k = len(lattice.hyperplanes)
    chains = decreasing_chains(lattice)
    if k == 0:
        return chains, []
    h = lattice.hyperplanes[-1]
    without = [c for c in chains if not c.top.contains_pair(h.i, h.j)]
    ending = [c for c in chains if c.labels and c.labels[-1] == k]
    if len(without) + len(ending) != len(chains):
        raise LatticeError(f"chains of {lattice.w} do not split along H_{k}")
    return without, ending


def extend_by_last_hyperplane(lattice: IntersectionLattice, chain: DecreasingChain) -> DecreasingChain:
    k = len(lattice.hyperplanes)
    h = lattice.hyperplanes[-1]
    upper = chain.top.merge(h.i, h.j)
    lab = lattice.label(chain.top, upper)
    if lab != k:
        raise LatticeError(f"extending {chain.label_text()} by H_{k} gives label {lab}")
    return DecreasingChain(chain.elements + (upper,), chain.labels + (k,))


# --- Möbius-Funktion und abgeleitete Größen ------------------------------------

def lower_covers(lattice: IntersectionLattice) -> Dict[SetPartition, List[SetPartition]]:
    """Umgekehrte Überdeckungsrelation: X -> alle A mit A ⋖ X."""
    lower: Dict[SetPartition, List[SetPartition]] = {x: [] for x in lattice.elements}
    for x in lattice.elements:
        for y, _ in lattice.covers[x]:
            lower[y].append(x)
    return lower


def _block_partition(n: int, block: Tuple[int, ...]) -> SetPartition:
    return SetPartition((block,) + tuple((a,) for a in range(1, n + 1) if a not in block))


def signed_mobius(lattice: IntersectionLattice) -> Dict[SetPartition, int]:
    """μ(0̂, X) als Produkt über die Blöcke von X.

    [0̂, X] zerfällt in die Bond-Verbände der von den Blöcken induzierten
    Teilgraphen. Der Wert eines Blocks B kommt aus der Möbius-Rekursion
    über die Unterhalbmenge von B|Singletons, erreicht über umgekehrte
    Überdeckungen, und wird pro Block gemerkt.
    """
    lower = lower_covers(lattice)
    by_block: Dict[Tuple[int, ...], int] = {}

    def block_value(block: Tuple[int, ...]) -> int:
        if block not in by_block:
            top = _block_partition(lattice.n, block)
            if top not in lower:
                raise LatticeError(f"block {block} of {lattice.w} is not connected in the inversion graph")
            seen = {top}
            stack = [top]
            while stack:
                for a in lower[stack.pop()]:
                    if a not in seen:
                        seen.add(a)
                        stack.append(a)
            by_block[block] = -sum(value(a) for a in seen if a != top)
        return by_block[block]

    def value(x: SetPartition) -> int:
        result = 1
        for block in x.blocks:
            if len(block) > 1:
                result *= block_value(block)
        return result

    return {x: value(x) for x in lattice.elements}


def mobius_values(lattice: IntersectionLattice) -> Dict[SetPartition, int]:
    """|μ(0̂, X)|, auf zwei Wegen berechnet und abgeglichen."""
    mu = signed_mobius(lattice)
    by_chains: Dict[SetPartition, int] = {x: 0 for x in lattice.elements}
    for chain in iter_decreasing_chains(lattice):
        by_chains[chain.top] += 1
    for x in lattice.elements:
        if abs(mu[x]) != by_chains[x]:
            raise LatticeError(
                f"Möbius mismatch at {x} for {lattice.w}: recursion {abs(mu[x])}, chains {by_chains[x]}"
            )
    return {x: abs(mu[x]) for x in lattice.elements}


def betti_numbers(lattice: IntersectionLattice) -> Tuple[int, ...]:
    values = mobius_values(lattice)
    betti = [0] * (lattice.rank + 1)
    for x, m in values.items():
        betti[x.rank] += m
    return tuple(betti)


def characteristic_polynomial(lattice: IntersectionLattice) -> IntPolynomial:
    """Σ μ(0̂,X) t^{n - rank X}; stimmt mit χ des Inversionsgraphen überein."""
    result = IntPolynomial(())
    for x, m in signed_mobius(lattice).items():
        result = result + IntPolynomial.monomial(lattice.n - x.rank, m)
    return result


def region_count(w: Permutation) -> int:
    """re(w) nach Zaslavsky: Summe der |μ| über den Verband."""
    return sum(mobius_values(build_lattice(w)).values())


def lattice_of_graph_matches(w: Permutation) -> bool:
    """Join-Abschluss liefert genau die Bond-Partitionen des Inversionsgraphen."""
    return set(build_lattice(w).elements) == bond_partitions_bruteforce(inversion_graph(w))
