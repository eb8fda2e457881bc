"""
Permutationen - Kern-Arithmetik

Permutationen in Einzeilennotation, die von rechts wirken: Position i
trägt den Wert iw, und uw bedeutet "erst u, dann w", also i(uw) = (iu)w.
Alle Positionen der öffentlichen Schnittstelle sind 1-basiert.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

# Obergrenze für n in der öffentlichen API (12! passt in 64 Bit)
MAX_N = 12


class PermutationError(ValueError):
    """Ungültige Permutation, Parse-Fehler oder Größenkonflikt."""


class ExpressionError(ValueError):
    """Ausdruck ist nicht reduziert oder passt nicht zur Permutation."""


@dataclass(frozen=True)
class Permutation:
    word: Tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        object.__setattr__(self, 'word', word)
        n = len(word)
        if n < 1:
            raise PermutationError("Permutation needs at least one letter")
        if n > MAX_N:
            raise PermutationError(f"n={n} exceeds the supported maximum {MAX_N}")
        if sorted(word) != list(range(1, n + 1)):
            raise PermutationError(f"{word} is not a bijection on [1, {n}]")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        """Bild der Position i (1-basiert)."""
        return self.word[i - 1]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def __lt__(self, other: 'Permutation') -> bool:
        # Lexikographisch, nur für deterministische Sortierung
        return self.word < other.word

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        """Einzeilennotation: Ziffern für n <= 9, sonst kommagetrennt."""
        if self.n <= 9:
            return ''.join(str(v) for v in self.word)
        return ','.join(str(v) for v in self.word)

    @classmethod
    def parse(cls, text: str) -> 'Permutation':
        """Liest Einzeilennotation ("4132" oder "10,3,1,...")."""
        raw = text.strip()
        if not raw:
            raise PermutationError("empty permutation text")
        if ',' in raw:
            tokens = [tok.strip() for tok in raw.split(',')]
        else:
            tokens = list(raw)
        values = []
        for tok in tokens:
            if not tok.isdigit():
                raise PermutationError(f"invalid token {tok!r} in {text!r}")
            values.append(int(tok))
        return cls(tuple(values))

    @property
    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.word, start=1))


@dataclass(frozen=True, order=True)
class Transposition:
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise PermutationError(f"transposition needs 1 <= i < j, got ({self.i} {self.j})")

    def as_permutation(self, n: int) -> Permutation:
        return transposition(n, self.i, self.j)

    def __str__(self) -> str:
        return f"({self.i} {self.j})"


@dataclass(frozen=True)
class InversionGraph:
    """Inversionsgraph: Ecken = Türme (Positionen 1..n), Kante {i,j} für jede Inversion."""
    n: int
    edges: FrozenSet[Tuple[int, int]]

    def neighbors(self, v: int) -> List[int]:
        return sorted({b for a, b in self.edges if a == v} | {a for a, b in self.edges if b == v})

    def to_networkx(self, edges: Optional[Iterable[Tuple[int, int]]] = None) -> nx.Graph:
        """Alle n Ecken; Kanten = edges (Teilmenge) oder alle Inversionen."""
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(sorted(self.edges if edges is None else edges))
        return graph


@dataclass(frozen=True)
class ReducedExpression:
    """Wort s_{a_1}...s_{a_k} in einfachen Transpositionen."""
    letters: Tuple[int, ...]
    n: int

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, 'letters', letters)
        for a in letters:
            if not 1 <= a < self.n:
                raise ExpressionError(f"letter s_{a} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def format(self) -> str:
        if not self.letters:
            return 'e'
        return ''.join(f"s{a}" for a in self.letters)


# --- Konstruktion -----------------------------------------------------------

def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    """Das maximale Element pi_0 = n(n-1)...1."""
    return Permutation(tuple(range(n, 0, -1)))


def simple(n: int, a: int) -> Permutation:
    return transposition(n, a, a + 1)


def transposition(n: int, i: int, j: int) -> Permutation:
    word = list(range(1, n + 1))
    word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
    return Permutation(tuple(word))


def from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    """Zyklus (a b c) bildet a -> b -> c -> a ab."""
    word = list(range(1, n + 1))
    for cycle in cycles:
        for k, a in enumerate(cycle):
            word[a - 1] = cycle[(k + 1) % len(cycle)]
    return Permutation(tuple(word))


def all_permutations(n: int) -> Iterator[Permutation]:
    """Alle Permutationen von [n] in lexikographischer Reihenfolge."""
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation(word)


def _check_same_size(u: Permutation, w: Permutation):
    if u.n != w.n:
        raise PermutationError(f"size mismatch: {u} has n={u.n}, {w} has n={w.n}")


# --- Operationen ------------------------------------------------------------

def compose(u: Permutation, w: Permutation) -> Permutation:
    """Produkt uw mit i(uw) = (iu)w."""
    _check_same_size(u, w)
    ww = w.word
    return Permutation(tuple(ww[v - 1] for v in u.word))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, v in enumerate(w.word, start=1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


def transpose(w: Permutation) -> Permutation:
    """Transposition des Turmdiagramms (= Inverse)."""
    return inverse(w)


def rotate(w: Permutation) -> Permutation:
    """pi_0 w pi_0: Drehung des Turmdiagramms um 180 Grad."""
    n = w.n
    return Permutation(tuple(n + 1 - w.word[n - i] for i in range(1, n + 1)))


def inversions(w: Permutation) -> List[Tuple[int, int]]:
    """Alle Paare i < j mit iw > jw, lexikographisch."""
    word = w.word
    n = w.n
    return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if word[i] > word[j]]


def length(w: Permutation) -> int:
    word = w.word
    n = w.n
    return sum(1 for i in range(n) for j in range(i + 1, n) if word[i] > word[j])


def descents(w: Permutation) -> List[int]:
    """Positionen a mit aw > (a+1)w."""
    word = w.word
    return [a for a in range(1, w.n) if word[a - 1] > word[a]]


def cycles(w: Permutation, include_fixed: bool = False) -> List[Tuple[int, ...]]:
    """Zykelzerlegung, jeder Zyklus beginnt mit seinem Minimum."""
    seen = set()
    result = []
    for start in range(1, w.n + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = w(start)
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = w(nxt)
        if len(cycle) > 1 or include_fixed:
            result.append(tuple(cycle))
    return result


def format_cycles(w: Permutation) -> str:
    parts = cycles(w)
    if not parts:
        return 'e'
    return ''.join('(' + ' '.join(str(a) for a in c) + ')' for c in parts)


def absolute_length(w: Permutation) -> int:
    """n minus Anzahl der Zyklen (Fixpunkte zählen mit)."""
    return w.n - len(cycles(w, include_fixed=True))


def swap_positions(w: Permutation, i: int, j: int) -> Permutation:
    """(i j)w - vertauscht die Einträge an den Positionen i und j."""
    word = list(w.word)
    word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
    return Permutation(tuple(word))


def reduced_expression(w: Permutation) -> ReducedExpression:
    """Kanonischer reduzierter Ausdruck.

    Nimmt wiederholt den kleinsten Abstieg a des laufenden Wortes, notiert s_a
    und vertauscht die Positionen a, a+1. Für 4132 ergibt das s1 s2 s3 s2.
    """
    word = list(w.word)
    letters = []
    while True:
        a = next((k for k in range(1, len(word)) if word[k - 1] > word[k]), None)
        if a is None:
            break
        letters.append(a)
        word[a - 1], word[a] = word[a], word[a - 1]
    return ReducedExpression(tuple(letters), w.n)


def evaluate(expr: ReducedExpression) -> Permutation:
    result = identity(expr.n)
    for a in expr.letters:
        result = compose(result, simple(expr.n, a))
    return result


def all_reduced_expressions(w: Permutation) -> List[ReducedExpression]:
    """Alle reduzierten Wörter für w, lexikographisch sortiert."""
    return [ReducedExpression(letters, w.n) for letters in _reduced_words(w.word)]


@lru_cache(maxsize=None)
def _reduced_words(word: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    words = []
    for a in range(1, len(word)):
        if word[a - 1] > word[a]:
            rest = list(word)
            rest[a - 1], rest[a] = rest[a], rest[a - 1]
            for tail in _reduced_words(tuple(rest)):
                words.append((a,) + tail)
    if not words:
        return ((),)
    return tuple(sorted(words))


def reflection_sequence(expr: ReducedExpression) -> List[Transposition]:
    """t_i = s_1...s_{i-1} s_i s_{i-1}...s_1 für jedes Präfix."""
    n = expr.n
    prefix = identity(n)
    result = []
    seen = set()
    for a in expr.letters:
        s = simple(n, a)
        t = compose(compose(prefix, s), inverse(prefix))
        moved = [i for i in range(1, n + 1) if t(i) != i]
        refl = Transposition(moved[0], moved[1])
        if refl in seen:
            raise ExpressionError(
                f"expression {expr.format()} is not reduced: reflection {refl} repeats"
            )
        seen.add(refl)
        result.append(refl)
        prefix = compose(prefix, s)
    return result


def inversion_graph(w: Permutation) -> InversionGraph:
    return InversionGraph(w.n, frozenset(inversions(w)))


def record_positions(w: Permutation) -> List[int]:
    """Positionen r mit rw > max{1w, ..., (r-1)w}; Position 1 immer."""
    records = []
    running = 0
    for r, v in enumerate(w.word, start=1):
        if v > running:
            records.append(r)
            running = v
    return records


def opy_exponents(w: Permutation) -> Tuple[int, ...]:
    """Exponenten e_1..e_n der Produktformel für glatte Permutationen."""
    n = w.n
    records = record_positions(w)
    exps = []
    for i in range(1, n + 1):
        r_i = max(r for r in records if r <= i)
        later = [r for r in records if r > i]
        r_next: Optional[int] = later[0] if later else None
        iw = w(i)
        e = sum(1 for j in range(r_i, i) if w(j) > iw)
        if r_next is not None:
            e += sum(1 for k in range(r_next, n + 1) if w(k) < iw)
        exps.append(e)
    return tuple(exps)


def delete_rooks(w: Permutation, positions: Sequence[int]) -> Permutation:
    """Entfernt die Türme in den gegebenen Zeilen samt Zeile und Spalte."""
    drop_rows = set(positions)
    drop_values = {w(p) for p in drop_rows}
    kept = [v for i, v in enumerate(w.word, start=1) if i not in drop_rows]
    if not kept:
        raise PermutationError(f"deleting {sorted(drop_rows)} from {w} leaves nothing")
    rank: Dict[int, int] = {}
    shift = 0
    for v in range(1, w.n + 1):
        if v in drop_values:
            shift += 1
        else:
            rank[v] = v - shift
    return Permutation(tuple(rank[v] for v in kept))
