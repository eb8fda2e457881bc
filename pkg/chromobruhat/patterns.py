"""
Muster-Vermeidung, Reduktionspaare und Zeugen unterhalb von w

Turmdiagramm: Zeilen von oben nach unten (Position i), Spalten von links
nach rechts (Wert iw). Ein Turm ist das Paar (i, iw).
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from chromobruhat.bruhat import PatternClassError, bruhat_less, distances_to
from chromobruhat.permutation import (
    Permutation, Transposition, absolute_length, all_permutations, compose,
    delete_rooks, from_cycles, inverse, rotate, swap_positions,
)

logger = logging.getLogger(__name__)

__all__ = [
    'PatternClass', 'PatternClassError', 'CHROMOBRUHATIC', 'SMOOTH',
    'contains', 'occurrences', 'first_occurrence', 'is_chromobruhatic', 'is_smooth',
    'Rook', 'ReductionPair', 'ReductionStep', 'ReductionPairError',
    'first_descent', 'is_light', 'is_heavy', 'find_reduction_pair', 'reduction_step',
    'Witness', 'witness_below', 'witness_step_down', 'class_counts',
]


class ReductionPairError(ValueError):
    """Das Turmpaar ist kein Abstieg oder erfüllt seine Bedingungen nicht."""


# --- Muster ------------------------------------------------------------------

def _pruning_table(p: Sequence[int]) -> List[Tuple[Optional[int], Optional[int]]]:
    """Für jede Musterstelle k: frühere Stellen mit nächstkleinerem und nächstgrößerem Wert."""
    table = []
    for k, v in enumerate(p):
        below = [t for t in range(k) if p[t] < v]
        above = [t for t in range(k) if p[t] > v]
        lo = max(below, key=lambda t: p[t]) if below else None
        hi = min(above, key=lambda t: p[t]) if above else None
        table.append((lo, hi))
    return table


def occurrences(w: Permutation, p: Permutation) -> Iterator[Tuple[int, ...]]:
    """Alle Positionsfolgen i_1 < ... < i_m, an denen w das Muster p trägt, lexikographisch."""
    n, m = w.n, p.n
    if m > n:
        return
    table = _pruning_table(p.word)
    word = w.word
    chosen_pos: List[int] = []
    chosen_val: List[int] = []

    def extend(start: int) -> Iterator[Tuple[int, ...]]:
        k = len(chosen_pos)
        if k == m:
            yield tuple(chosen_pos)
            return
        lo, hi = table[k]
        low = chosen_val[lo] if lo is not None else 0
        high = chosen_val[hi] if hi is not None else n + 1
        # genug Stellen für den Rest übrig lassen
        for pos in range(start, n - (m - k) + 1):
            v = word[pos]
            if low < v < high:
                chosen_pos.append(pos + 1)
                chosen_val.append(v)
                yield from extend(pos + 1)
                chosen_pos.pop()
                chosen_val.pop()

    yield from extend(0)


def first_occurrence(w: Permutation, p: Permutation) -> Optional[Tuple[int, ...]]:
    return next(occurrences(w, p), None)


def contains(w: Permutation, p: Permutation) -> bool:
    return first_occurrence(w, p) is not None


@dataclass(frozen=True)
class PatternClass:
    name: str
    patterns: Tuple[Permutation, ...]

    def avoided_by(self, w: Permutation) -> bool:
        return not any(contains(w, p) for p in self.patterns)

    def first_contained(self, w: Permutation) -> Optional[Tuple[Permutation, Tuple[int, ...]]]:
        for p in self.patterns:
            occ = first_occurrence(w, p)
            if occ is not None:
                return p, occ
        return None

    def closed_under_symmetries(self) -> bool:
        members = set(self.patterns)
        return all(inverse(p) in members and rotate(p) in members for p in self.patterns)


CHROMOBRUHATIC = PatternClass('chromobruhatic', tuple(
    Permutation.parse(text) for text in ('4231', '35142', '42513', '351624')
))
SMOOTH = PatternClass('smooth', tuple(Permutation.parse(text) for text in ('3412', '4231')))


def is_chromobruhatic(w: Permutation) -> bool:
    return CHROMOBRUHATIC.avoided_by(w)


def is_smooth(w: Permutation) -> bool:
    return SMOOTH.avoided_by(w)


def class_counts(n: int) -> Dict[str, int]:
    counts = {'total': 0, 'chromobruhatic': 0, 'smooth': 0}
    for w in all_permutations(n):
        counts['total'] += 1
        if is_chromobruhatic(w):
            counts['chromobruhatic'] += 1
        if is_smooth(w):
            counts['smooth'] += 1
    return counts


# --- Reduktionspaare ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class Rook:
    i: int
    j: int

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


SYMMETRIES = ('identity', 'inverse', 'rotate', 'rotate-inverse')


def apply_symmetry(w: Permutation, symmetry: str) -> Permutation:
    if symmetry == 'identity':
        return w
    if symmetry == 'inverse':
        return inverse(w)
    if symmetry == 'rotate':
        return rotate(w)
    if symmetry == 'rotate-inverse':
        return inverse(rotate(w))
    raise ValueError(f"unknown symmetry {symmetry!r}, expected one of {SYMMETRIES}")


@dataclass(frozen=True)
class ReductionPair:
    """Abstiegspaar x, y im Diagramm von target: y liegt direkt über x und rechts davon."""
    kind: str
    symmetry: str
    target: Permutation
    x: Rook
    y: Rook

    def describe(self) -> str:
        return f"{self.kind} pair x={self.x}, y={self.y} in {self.symmetry} image {self.target}"


@dataclass(frozen=True)
class ReductionStep:
    target: Permutation
    rho: Permutation
    minus_x: Permutation
    minus_y: Permutation
    minus_xy: Optional[Permutation]


def _any_rook(w: Permutation, rows: Tuple[int, int], cols: Tuple[int, int]) -> bool:
    """Gibt es einen Turm im Rechteck rows x cols (jeweils inklusive)?"""
    r0, r1 = rows
    c0, c1 = cols
    return any(c0 <= w(i) <= c1 for i in range(max(r0, 1), min(r1, w.n) + 1))


def first_descent(w: Permutation) -> Optional[Tuple[Rook, Rook]]:
    """x_i = min{i : iw < (i-1)w}, y ist der Turm direkt darüber."""
    for i in range(2, w.n + 1):
        if w(i) < w(i - 1):
            return Rook(i, w(i)), Rook(i - 1, w(i - 1))
    return None


def _check_descent(w: Permutation, x: Rook, y: Rook):
    if not (y.i == x.i - 1 and w(x.i) == x.j and w(y.i) == y.j and x.j < y.j):
        raise ReductionPairError(f"rooks x={x}, y={y} are not a descent of {w}")


def is_light(w: Permutation, x: Rook, y: Rook) -> bool:
    _check_descent(w, x, y)
    n = w.n
    # nichts nordöstlich von y, nichts unter x zwischen den Spalten
    return (not _any_rook(w, (1, y.i - 1), (y.j + 1, n))
            and not _any_rook(w, (x.i + 1, n), (x.j + 1, y.j - 1)))


def is_heavy(w: Permutation, x: Rook, y: Rook) -> bool:
    _check_descent(w, x, y)
    n = w.n
    if _any_rook(w, (x.i + 1, n), (1, x.j - 1)):
        return False
    if _any_rook(w, (1, y.i - 1), (y.j + 1, n)):
        return False
    above = [w(i) for i in range(1, y.i) if x.j < w(i) < y.j]
    below = [w(i) for i in range(x.i + 1, n + 1) if x.j < w(i) < y.j]
    return not any(a < b for a in above for b in below)


def _classify(w: Permutation, symmetry: str) -> Optional[ReductionPair]:
    """Prüft den ersten Abstieg von w auf leicht, dann auf schwer."""
    descent = first_descent(w)
    if descent is None:
        return None
    x, y = descent
    if is_light(w, x, y):
        return ReductionPair('light', symmetry, w, x, y)
    if is_heavy(w, x, y):
        return ReductionPair('heavy', symmetry, w, x, y)
    return None


def find_reduction_pair(w: Permutation) -> Optional[ReductionPair]:
    """Reduktionspaar unter den ersten Abstiegen von w und w^-1.

    Für musterfreie w != e existiert immer eins unter diesen beiden. Die
    gedrehten Bilder werden nur danach versucht; für andere w kann das
    Ergebnis None sein.
    """
    for symmetry in SYMMETRIES:
        pair = _classify(apply_symmetry(w, symmetry), symmetry)
        if pair is not None:
            if symmetry in ('rotate', 'rotate-inverse'):
                logger.debug("reduction pair for %s only in %s image", w, symmetry)
            return pair
    return None


def reduction_step(w: Permutation, pair: ReductionPair) -> ReductionStep:
    """ρ und die Löschungen π-x, π-y, π-x-y für das Paar im Diagramm von pair.target.

    w muss die Ausgangspermutation sein, deren Symmetriebild pair.target ist.
    """
    if apply_symmetry(w, pair.symmetry) != pair.target:
        raise ReductionPairError(f"{pair.target} is not the {pair.symmetry} image of {w}")
    target = pair.target
    x, y = pair.x, pair.y
    if pair.kind == 'light':
        valid = is_light(target, x, y)
    elif pair.kind == 'heavy':
        valid = is_heavy(target, x, y)
    else:
        raise ReductionPairError(f"unknown pair kind {pair.kind!r}")
    if not valid:
        raise ReductionPairError(f"{pair.describe()} does not satisfy the {pair.kind} conditions")
    rho = swap_positions(target, y.i, x.i)
    minus_x = delete_rooks(target, [x.i])
    minus_y = delete_rooks(target, [y.i])
    minus_xy = delete_rooks(target, [x.i, y.i]) if target.n > 2 else None
    return ReductionStep(target, rho, minus_x, minus_y, minus_xy)


# --- Zeugen ------------------------------------------------------------------

# Zyklen über die Positionen n_1..n_m des ersten Vorkommens
WITNESS_CYCLES: Dict[str, Tuple[Tuple[int, ...], ...]] = {
    '4231': ((1, 4), (2, 3)),
    '35142': ((1, 3, 4), (2, 5)),
    '42513': ((2, 5, 3), (1, 4)),
    '351624': ((1, 3, 6, 4), (2, 5)),
}


@dataclass(frozen=True)
class Witness:
    pattern: Permutation
    positions: Tuple[int, ...]
    cycle: Permutation
    u: Permutation

    @property
    def absolute_gap(self) -> int:
        """ℓ'(uw^-1); gleich ℓ' des Zyklenprodukts."""
        return absolute_length(self.cycle)


def witness_below(w: Permutation) -> Optional[Witness]:
    """u = c·w für das erste enthaltene der vier Muster, sonst None."""
    found = CHROMOBRUHATIC.first_contained(w)
    if found is None:
        return None
    pattern, positions = found
    template = WITNESS_CYCLES[pattern.format()]
    cycles = [tuple(positions[k - 1] for k in c) for c in template]
    c = from_cycles(w.n, cycles)
    u = compose(c, w)
    if not bruhat_less(u, w):
        raise PatternClassError(f"witness {u} for {pattern} is not below {w}")
    return Witness(pattern, positions, c, u)


def witness_step_down(w: Permutation) -> Optional[Tuple[Transposition, Permutation]]:
    """Transposition t mit tu < u und ℓ'(tuw^-1) = aℓ(tu,w) = ℓ'(uw^-1) - 1."""
    witness = witness_below(w)
    if witness is None:
        return None
    distances = distances_to(w)
    winv = inverse(w)
    target = absolute_length(compose(witness.u, winv)) - 1
    u = witness.u
    for i in range(1, w.n + 1):
        for j in range(i + 1, w.n + 1):
            if u(i) < u(j):
                continue
            tu = swap_positions(u, i, j)
            if absolute_length(compose(tu, winv)) == target and distances.get(tu) == target:
                return Transposition(i, j), tu
    return None
