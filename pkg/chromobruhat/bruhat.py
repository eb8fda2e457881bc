"""
Bruhat-Ordnung auf S_n

Vergleich über Rangmatrix, Blasen und rechte Hülle, Intervalle [e,w]
und ihre Größe br(w), der Bruhat-Graph mit gerichtetem Abstand sowie
die schwachen Ordnungen.
"""
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from chromobruhat.permutation import (
    Permutation, PermutationError, all_permutations, identity, inverse,
    inversions, length, swap_positions,
)
from chromobruhat.polynomial import IntPolynomial

logger = logging.getLogger(__name__)

BACKENDS = ('rank', 'bubble', 'hull')


class PatternClassError(ValueError):
    """Operation für diese Permutationsklasse nicht zulässig."""


@dataclass(frozen=True)
class RankMatrix:
    """w[i,j] = |{m <= i : mw >= j}|, Zeilen und Spalten 1-basiert."""
    n: int
    counts: Tuple[Tuple[int, ...], ...]

    def at(self, i: int, j: int) -> int:
        return self.counts[i - 1][j - 1]


@dataclass(frozen=True)
class RightHull:
    """Felder mit einem Turm schwach südwestlich und einem schwach nordöstlich."""
    n: int
    mask: Tuple[Tuple[bool, ...], ...]

    def __contains__(self, square: Tuple[int, int]) -> bool:
        i, j = square
        return self.mask[i - 1][j - 1]

    def contains_rooks_of(self, u: Permutation) -> bool:
        return all(self.mask[i][v - 1] for i, v in enumerate(u.word))

    def rotated(self) -> 'RightHull':
        return RightHull(self.n, tuple(tuple(reversed(row)) for row in reversed(self.mask)))

    def rows_as_text(self) -> List[str]:
        return [''.join('1' if cell else '0' for cell in row) for row in self.mask]


# --- Rangmatrix und Kriterien -------------------------------------------------

@lru_cache(maxsize=65536)
def _rank_table(word: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    n = len(word)
    rows = []
    current = [0] * (n + 2)
    for i in range(n):
        v = word[i]
        # Eintrag v zählt für alle Spalten j <= v
        for j in range(1, v + 1):
            current[j] += 1
        rows.append(tuple(current[1:n + 1]))
    return tuple(rows)


def rank_matrix(w: Permutation) -> RankMatrix:
    return RankMatrix(w.n, _rank_table(w.word))


def bubbles(w: Permutation) -> FrozenSet[Tuple[int, int]]:
    """Felder mit Turm strikt links in der Zeile und strikt unterhalb in der Spalte."""
    winv = inverse(w)
    result = set()
    for i in range(1, w.n + 1):
        for j in range(w(i) + 1, w.n + 1):
            if winv(j) > i:
                result.add((i, j))
    return frozenset(result)


def right_hull(w: Permutation) -> RightHull:
    n = w.n
    word = w.word
    # Zeile i der Hülle ist das Spaltenintervall [min Spalte unterhalb, max Spalte oberhalb]
    min_below = [0] * n
    running = n + 1
    for i in range(n - 1, -1, -1):
        running = min(running, word[i])
        min_below[i] = running
    max_above = [0] * n
    running = 0
    for i in range(n):
        running = max(running, word[i])
        max_above[i] = running
    mask = tuple(
        tuple(min_below[i] <= j <= max_above[i] for j in range(1, n + 1))
        for i in range(n)
    )
    return RightHull(n, mask)


def bruhat_leq(u: Permutation, w: Permutation, backend: str = 'rank') -> bool:
    """u <= w in der Bruhat-Ordnung.

    backend='rank' vergleicht die volle Rangmatrix, 'bubble' nur an den Blasen
    von w, 'hull' prüft die rechte Hülle (nur für w ohne die vier Muster).
    """
    if u.n != w.n:
        raise PermutationError(f"size mismatch: {u} vs {w}")
    if backend == 'rank':
        ru = _rank_table(u.word)
        rw = _rank_table(w.word)
        return all(a <= b for row_u, row_w in zip(ru, rw) for a, b in zip(row_u, row_w))
    if backend == 'bubble':
        ru = _rank_table(u.word)
        rw = _rank_table(w.word)
        return all(ru[i - 1][j - 1] <= rw[i - 1][j - 1] for i, j in bubbles(w))
    if backend == 'hull':
        from chromobruhat.patterns import is_chromobruhatic
        if not is_chromobruhatic(w):
            raise PatternClassError(f"hull criterion requires a chromobruhatic permutation, got {w}")
        return right_hull(w).contains_rooks_of(u)
    raise ValueError(f"unknown Bruhat backend {backend!r}, expected one of {BACKENDS}")


def bruhat_less(u: Permutation, w: Permutation) -> bool:
    return u != w and bruhat_leq(u, w)


# --- Intervalle ---------------------------------------------------------------

def _prefix_ok(mask: int, size: int, limits: Tuple[int, ...], n: int) -> bool:
    """Ranggrenzen für die Wertemenge der ersten size Positionen."""
    count = 0
    for j in range(n, 0, -1):
        if mask >> (j - 1) & 1:
            count += 1
        if count > limits[j - 1]:
            return False
    return True


def interval(w: Permutation) -> List[Permutation]:
    """[e,w] lexikographisch, per Tiefensuche über zulässige Präfixe."""
    n = w.n
    table = _rank_table(w.word)
    result: List[Permutation] = []
    prefix: List[int] = []

    def extend(mask: int):
        size = len(prefix)
        if size == n:
            result.append(Permutation(tuple(prefix)))
            return
        for v in range(1, n + 1):
            bit = 1 << (v - 1)
            if mask & bit:
                continue
            nxt = mask | bit
            if _prefix_ok(nxt, size + 1, table[size], n):
                prefix.append(v)
                extend(nxt)
                prefix.pop()

    extend(0)
    return result


def interval_by_filter(w: Permutation) -> List[Permutation]:
    """Langsamer Referenzweg: alle von S_n filtern."""
    return [u for u in all_permutations(w.n) if bruhat_leq(u, w)]


def _count_by_rank_profile(w: Permutation) -> int:
    """Zählt u <= w per DP über die Wertemengen der Präfixe (2^n Zustände)."""
    n = w.n
    table = _rank_table(w.word)
    ways: Dict[int, int] = {0: 1}
    for size in range(n):
        nxt: Dict[int, int] = {}
        for mask, count in ways.items():
            for v in range(n):
                bit = 1 << v
                if mask & bit:
                    continue
                target = mask | bit
                if target in nxt:
                    nxt[target] += count
                elif _prefix_ok(target, size + 1, table[size], n):
                    nxt[target] = count
        ways = nxt
    return sum(ways.values())


def permanent(mask: Tuple[Tuple[bool, ...], ...]) -> int:
    """Permanente einer 0/1-Matrix nach Ryser mit Gray-Code-Durchlauf."""
    n = len(mask)
    if n == 0:
        return 1
    row_sums = [0] * n
    total = 0
    subset_size = 0
    in_subset = [False] * n
    for k in range(1, 1 << n):
        # Spalte, deren Bit sich im Gray-Code ändert
        col = (k & -k).bit_length() - 1
        sign = -1 if in_subset[col] else 1
        in_subset[col] = not in_subset[col]
        subset_size += sign
        for i in range(n):
            if mask[i][col]:
                row_sums[i] += sign
        prod = 1
        for s in row_sums:
            if s == 0:
                prod = 0
                break
            prod *= s
        if prod:
            total += prod if (n - subset_size) % 2 == 0 else -prod
    return total


def interval_size(w: Permutation, method: Optional[str] = None) -> int:
    """br(w). Für musterfreie w über die Permanente der Hülle, sonst Rang-DP."""
    if method is None:
        from chromobruhat.patterns import is_chromobruhatic
        method = 'permanent' if is_chromobruhatic(w) else 'profile'
    if method == 'permanent':
        return permanent(right_hull(w).mask)
    if method == 'profile':
        return _count_by_rank_profile(w)
    if method == 'filter':
        return len(interval_by_filter(w))
    raise ValueError(f"unknown interval_size method {method!r}")


def poincare_polynomial(w: Permutation) -> IntPolynomial:
    """sum_{u <= w} q^{l(u)}: Betti-Zahlen der Schubert-Varietät."""
    return IntPolynomial.from_counts(length(u) for u in interval(w))


# --- Bruhat-Graph -------------------------------------------------------------

def _transpositions(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def bruhat_graph(w: Permutation) -> nx.DiGraph:
    """Bruhat-Graph auf [e,w]: Kanten x -> tx mit l(x) < l(tx)."""
    graph = nx.DiGraph()
    pairs = _transpositions(w.n)
    elements = interval(w)
    members = set(elements)
    lengths = {x: length(x) for x in elements}
    for x in elements:
        graph.add_node(x, length=lengths[x])
    for x in elements:
        for i, j in pairs:
            if x(i) < x(j):
                y = swap_positions(x, i, j)
                if y in members:
                    graph.add_edge(x, y, reflection=(i, j))
    return graph


def distances_to(w: Permutation, graph: Optional[nx.DiGraph] = None) -> Dict[Permutation, int]:
    """al(u,w) für alle u <= w mit einer einzigen Breitensuche rückwärts ab w."""
    if graph is None:
        graph = bruhat_graph(w)
    return dict(nx.single_source_shortest_path_length(graph.reverse(copy=False), w))


def directed_distance(u: Permutation, w: Permutation) -> int:
    if not bruhat_leq(u, w):
        raise ValueError(f"directed distance needs u <= w, but {u} is not below {w}")
    return distances_to(w)[u]


def directed_distance_unrestricted(u: Permutation, w: Permutation) -> Optional[int]:
    """Referenz: Breitensuche im Bruhat-Graph auf ganz S_n."""
    pairs = _transpositions(u.n)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == w:
            return dist[x]
        for i, j in pairs:
            if x(i) < x(j):
                y = swap_positions(x, i, j)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
    return None


# --- Schwache Ordnungen -------------------------------------------------------

def weak_leq_right(u: Permutation, w: Permutation) -> bool:
    """INV(u) ist Teilmenge von INV(w)."""
    if u.n != w.n:
        raise PermutationError(f"size mismatch: {u} vs {w}")
    return set(inversions(u)) <= set(inversions(w))


def weak_leq_left(u: Permutation, w: Permutation) -> bool:
    return weak_leq_right(inverse(u), inverse(w))


def right_weak_covers(w: Permutation) -> List[Permutation]:
    """Elemente direkt unter w in der rechten schwachen Ordnung (benachbarte Werte tauschen)."""
    winv = inverse(w)
    result = []
    for k in range(1, w.n):
        # Wert k+1 steht vor Wert k
        if winv(k + 1) < winv(k):
            result.append(swap_positions(w, winv(k), winv(k + 1)))
    return sorted(result)


def left_weak_covers(w: Permutation) -> List[Permutation]:
    return sorted(inverse(u) for u in right_weak_covers(inverse(w)))


def two_sided_weak_covers(w: Permutation) -> List[Permutation]:
    return sorted(set(right_weak_covers(w)) | set(left_weak_covers(w)))


def weak_chain_to_identity(w: Permutation) -> Optional[List[Permutation]]:
    """Gesättigte zweiseitig-schwache Kette musterfreier Permutationen von w bis e.

    Gibt None zurück, wenn w selbst nicht musterfrei ist oder kein Schritt existiert.
    """
    from chromobruhat.patterns import is_chromobruhatic
    if not is_chromobruhatic(w):
        return None
    chain = [w]
    current = w
    while not current.is_identity:
        step = next((c for c in two_sided_weak_covers(current) if is_chromobruhatic(c)), None)
        if step is None:
            logger.warning("weak chain from %s stuck at %s", w, current)
            return None
        chain.append(step)
        current = step
    return chain
