"""
Chromatische Polynome und azyklische Orientierungen von Inversionsgraphen

Deletion-Kontraktion mit Memo-Cache über einen kanonischen Graph-Schlüssel,
die Produktformel für glatte Permutationen und die Identität zwischen
Abstandspolynom und χ.
"""
import itertools
import logging
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx

from chromobruhat.bruhat import PatternClassError, distances_to
from chromobruhat.permutation import (
    InversionGraph, Permutation, inversion_graph, opy_exponents,
)
from chromobruhat.polynomial import IntPolynomial

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
GraphKey = Tuple[int, Tuple[Edge, ...]]

# Prozesslokaler Cache; Einträge werden nur hinzugefügt, nie geändert
_CACHE: Dict[GraphKey, IntPolynomial] = {}


def clear_cache():
    _CACHE.clear()


def cache_size() -> int:
    return len(_CACHE)


# --- Kanonischer Schlüssel ---------------------------------------------------

def _canonical_key(n: int, edges: FrozenSet[Edge]) -> GraphKey:
    """Umnummerierung nach iterierter Farbverfeinerung, Gleichstand nach Index.

    Der Schlüssel enthält die vollständige Kantenliste, Treffer sind also
    immer exakt. Isomorphe Graphen teilen sich meistens einen Schlüssel.
    """
    adjacency: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    colors = [len(adj) for adj in adjacency]
    for _ in range(n):
        signatures = [(colors[v], tuple(sorted(colors[u] for u in adjacency[v]))) for v in range(n)]
        palette = {sig: k for k, sig in enumerate(sorted(set(signatures)))}
        refined = [palette[sig] for sig in signatures]
        if len(set(refined)) == len(set(colors)):
            colors = refined
            break
        colors = refined
    order = sorted(range(n), key=lambda v: (colors[v], v))
    relabel = {v: k for k, v in enumerate(order)}
    canon = tuple(sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in edges))
    return (n, canon)


# --- Deletion-Kontraktion ----------------------------------------------------

def _components(n: int, edges: FrozenSet[Edge]) -> List[List[int]]:
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _falling_factorial(n: int) -> IntPolynomial:
    return IntPolynomial.from_roots(range(n))


def _chromatic(n: int, edges: FrozenSet[Edge]) -> IntPolynomial:
    if not edges:
        return IntPolynomial.monomial(n)
    key = _canonical_key(n, edges)
    cached = _CACHE.get(key)
    if cached is not None:
        return cached

    m = len(edges)
    comps = _components(n, edges)
    if len(comps) > 1:
        result = IntPolynomial.constant(1)
        for comp in comps:
            index = {v: k for k, v in enumerate(comp)}
            sub = frozenset((index[a], index[b]) for a, b in edges if a in index)
            result = result * _chromatic(len(comp), sub)
    elif m == n * (n - 1) // 2:
        result = _falling_factorial(n)
    elif m == n - 1:
        # Baum
        result = IntPolynomial.monomial(1) * (IntPolynomial((-1, 1)) if n > 1 else IntPolynomial.constant(1))
        for _ in range(n - 2):
            result = result * IntPolynomial((-1, 1))
    else:
        a, b = max(edges)
        deleted = edges - {(a, b)}
        result = _chromatic(n, deleted) - _chromatic(n - 1, _contract(edges, a, b))

    _CACHE.setdefault(key, result)
    return result


def _contract(edges: FrozenSet[Edge], a: int, b: int) -> FrozenSet[Edge]:
    """Verschmilzt b in a (a < b) und nummeriert die Ecken > b um eins herunter."""
    def relabel(v: int) -> int:
        if v == b:
            v = a
        return v - 1 if v > b else v

    out = set()
    for u, v in edges:
        if {u, v} == {a, b}:
            continue
        ru, rv = relabel(u), relabel(v)
        if ru != rv:
            out.add((min(ru, rv), max(ru, rv)))
    return frozenset(out)


def _zero_based(graph: InversionGraph) -> FrozenSet[Edge]:
    return frozenset((a - 1, b - 1) for a, b in graph.edges)


def chromatic_polynomial(graph: InversionGraph) -> IntPolynomial:
    """χ_G(t) per Deletion-Kontraktion; normiert vom Grad n."""
    return _chromatic(graph.n, _zero_based(graph))


def permutation_chromatic(w: Permutation) -> IntPolynomial:
    return chromatic_polynomial(inversion_graph(w))


def acyclic_orientations(graph: InversionGraph) -> int:
    """ao(G) = (-1)^n χ_G(-1)."""
    value = chromatic_polynomial(graph)(-1)
    return value if graph.n % 2 == 0 else -value


def permutation_ao(w: Permutation) -> int:
    return acyclic_orientations(inversion_graph(w))


# --- Referenzzählungen (nur kleine Graphen) -----------------------------------

def acyclic_orientations_bruteforce(graph: InversionGraph) -> int:
    edges = sorted(graph.edges)
    count = 0
    for flips in itertools.product((False, True), repeat=len(edges)):
        digraph = nx.DiGraph()
        digraph.add_nodes_from(range(1, graph.n + 1))
        digraph.add_edges_from((b, a) if flip else (a, b) for (a, b), flip in zip(edges, flips))
        if nx.is_directed_acyclic_graph(digraph):
            count += 1
    return count


def count_proper_colorings(graph: InversionGraph, k: int) -> int:
    edges = sorted(graph.edges)
    return sum(
        1 for coloring in itertools.product(range(k), repeat=graph.n)
        if all(coloring[a - 1] != coloring[b - 1] for a, b in edges)
    )


# --- Glatte Permutationen und Abstandsidentität -------------------------------

def smooth(w: Permutation) -> bool:
    from chromobruhat.patterns import is_smooth
    return is_smooth(w)


def opy_chromatic(w: Permutation) -> IntPolynomial:
    """Π (t - e_i) über die Exponenten der Rekordpositionen; nur für glatte w."""
    if not smooth(w):
        raise PatternClassError(f"product formula requires a smooth permutation, got {w}")
    return IntPolynomial.from_roots(opy_exponents(w))


def distance_poly(w: Permutation) -> IntPolynomial:
    """Σ_{u <= w} q^{aℓ(u,w)}."""
    return IntPolynomial.from_counts(distances_to(w).values())


def chromatic_identity_rhs(w: Permutation) -> IntPolynomial:
    """(-q)^n χ_{G_w}(-1/q)."""
    return permutation_chromatic(w).reflect_at_minus_inverse(w.n)


def chromatic_identity_holds(w: Permutation) -> bool:
    return distance_poly(w) == chromatic_identity_rhs(w)


def heavy_coloring_identity_holds(w: Permutation, pair) -> bool:
    """χ_ρ - χ_π = χ_{π-x} + χ_{π-y} - t·χ_{π-x-y} für ein schweres Paar."""
    from chromobruhat.patterns import reduction_step
    step = reduction_step(w, pair)
    lhs = permutation_chromatic(step.rho) - permutation_chromatic(step.target)
    minus_xy = (permutation_chromatic(step.minus_xy) if step.minus_xy is not None
                else IntPolynomial.constant(1))
    rhs = (permutation_chromatic(step.minus_x) + permutation_chromatic(step.minus_y)
           - minus_xy.shift(1))
    if lhs != rhs:
        logger.info("coloring identity fails for %s: %s vs %s", w, lhs, rhs)
    return lhs == rhs
