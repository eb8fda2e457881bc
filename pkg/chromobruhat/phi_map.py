"""
Die Abbildung φ: λ-fallende Ketten -> [e,w]

Eine Kette mit Labels j_1 < ... < j_m geht auf p(C)·w mit
p(C) = t_{j_1} ... t_{j_m}. Injektiv für jedes w, surjektiv genau für
musterfreie w.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from chromobruhat.arrangement import (
    DecreasingChain, IntersectionLattice, LatticeError, SetPartition, betti_numbers,
    build_lattice, iter_decreasing_chains,
)
from chromobruhat.bruhat import bruhat_leq, bruhat_less, distances_to, interval, poincare_polynomial
from chromobruhat.permutation import (
    Permutation, ReducedExpression, absolute_length, compose, cycles, format_cycles,
    identity, inverse, length, reduced_expression,
)

logger = logging.getLogger(__name__)


class PhiInvariantError(ValueError):
    """Eine Invariante von φ ist verletzt; deutet auf einen Fehler in der Markierung."""


@dataclass(frozen=True)
class PhiImage:
    chain: DecreasingChain
    product: Permutation
    image: Permutation

    def as_row(self) -> Dict:
        return {
            'chain': [x.format() for x in self.chain.elements],
            'labels': self.chain.label_text(),
            'product': format_cycles(self.product),
            'image': self.image.format(),
            'image_word': reduced_expression(self.image).format(),
            'length': length(self.image),
        }


def _orbit_partition(p: Permutation) -> SetPartition:
    return SetPartition(tuple(cycles(p, include_fixed=True)))


def phi(chain: DecreasingChain, w: Permutation, lattice: IntersectionLattice,
        eager: bool = True) -> PhiImage:
    """Bild einer Kette; mit eager=True werden die drei Invarianten sofort geprüft."""
    labels = chain.labels
    if any(a >= b for a, b in zip(labels, labels[1:])):
        raise LatticeError(f"chain {chain.label_text()} is not λ-decreasing")
    for k, lab in enumerate(labels):
        if lattice.label(chain.elements[k], chain.elements[k + 1]) != lab:
            raise LatticeError(f"chain {chain.label_text()} carries a wrong label at step {k + 1}")

    product = identity(w.n)
    for j in labels:
        product = compose(product, lattice.hyperplanes[j - 1].as_permutation(w.n))
    image = compose(product, w)

    if eager:
        if not bruhat_leq(image, w):
            raise PhiInvariantError(f"image {image} of {chain.label_text()} is not below {w}")
        if absolute_length(product) != chain.length:
            raise PhiInvariantError(
                f"p({chain.label_text()}) = {format_cycles(product)} has absolute length "
                f"{absolute_length(product)}, expected {chain.length}"
            )
        if _orbit_partition(product) != chain.top:
            raise PhiInvariantError(
                f"orbits of {format_cycles(product)} differ from top {chain.top} of {chain.label_text()}"
            )
    return PhiImage(chain, product, image)


def phi_images(w: Permutation, expr: Optional[ReducedExpression] = None,
               eager: bool = True, lattice: Optional[IntersectionLattice] = None) -> List[PhiImage]:
    if lattice is None:
        lattice = build_lattice(w, expr)
    return [phi(chain, w, lattice, eager) for chain in iter_decreasing_chains(lattice)]


def phi_table(w: Permutation, expr: Optional[ReducedExpression] = None) -> List[Dict]:
    return [img.as_row() for img in phi_images(w, expr)]


def verify_injective(w: Permutation, expr: Optional[ReducedExpression] = None,
                     eager: bool = True) -> bool:
    images = [img.image for img in phi_images(w, expr, eager)]
    ok = len(set(images)) == len(images)
    if not ok:
        logger.error("φ is not injective for %s under %s", w, (expr or reduced_expression(w)).format())
    return ok


def verify_surjective(w: Permutation, expr: Optional[ReducedExpression] = None,
                      eager: bool = True) -> Tuple[bool, List[Permutation]]:
    """(surjektiv?, nicht getroffene Elemente von [e,w] lexikographisch)."""
    hit = {img.image for img in phi_images(w, expr, eager)}
    missed = [u for u in interval(w) if u not in hit]
    return not missed, missed


def missed_parity(w: Permutation, expr: Optional[ReducedExpression] = None) -> Tuple[int, int]:
    """(#verfehlte gerader Länge, #verfehlte ungerader Länge)."""
    _, missed = verify_surjective(w, expr, eager=False)
    even = sum(1 for u in missed if length(u) % 2 == 0)
    return even, len(missed) - even


def going_down_walk(image: PhiImage, lattice: IntersectionLattice) -> List[Permutation]:
    """w, t_{j_m}w, t_{j_{m-1}}t_{j_m}w, ..., φ(C)."""
    n = lattice.n
    walk = [lattice.w]
    current = lattice.w
    for j in reversed(image.chain.labels):
        current = compose(lattice.hyperplanes[j - 1].as_permutation(n), current)
        walk.append(current)
    return walk


def going_down_edges(w: Permutation, expr: Optional[ReducedExpression] = None) -> Set[Tuple[Permutation, Permutation]]:
    """Vereinigung aller Abstiegswege: die dicken Kanten im Bruhat-Graphen."""
    lattice = build_lattice(w, expr)
    edges = set()
    for img in phi_images(w, expr, eager=False, lattice=lattice):
        walk = going_down_walk(img, lattice)
        edges.update(zip(walk, walk[1:]))
    return edges


def verify_going_down(w: Permutation, expr: Optional[ReducedExpression] = None) -> bool:
    """Jeder Weg fällt streng in der Bruhat-Ordnung und aℓ(φ(C), w) = Kettenlänge."""
    lattice = build_lattice(w, expr)
    distances = distances_to(w)
    for img in phi_images(w, expr, eager=False, lattice=lattice):
        walk = going_down_walk(img, lattice)
        for upper, lower in zip(walk, walk[1:]):
            if not bruhat_less(lower, upper):
                logger.info("going-down fails for %s on %s at %s -> %s",
                            w, img.chain.label_text(), upper, lower)
                return False
        if distances[img.image] != img.chain.length:
            logger.info("aℓ(%s, %s) = %d differs from chain length %d",
                        img.image, w, distances[img.image], img.chain.length)
            return False
    return True


def absolute_equals_directed(w: Permutation) -> bool:
    """ℓ'(uw^-1) = aℓ(u,w) für alle u < w."""
    winv = inverse(w)
    distances = distances_to(w)
    return all(absolute_length(compose(u, winv)) == d for u, d in distances.items())


def verify_characterization(w: Permutation) -> bool:
    """Gleichheit ℓ' = aℓ auf ganz [e,w] genau dann, wenn w musterfrei ist."""
    from chromobruhat.patterns import is_chromobruhatic
    return absolute_equals_directed(w) == is_chromobruhatic(w)


# --- Betti-Ungleichungen -----------------------------------------------------

@dataclass(frozen=True)
class BettiComparison:
    schubert: Tuple[int, ...]
    arrangement: Tuple[int, ...]
    holds: bool
    equality_at_max: bool


def _coefficient(values: Tuple[int, ...], k: int) -> int:
    return values[k] if 0 <= k < len(values) else 0


def verify_betti_inequalities(w: Permutation, expr: Optional[ReducedExpression] = None) -> BettiComparison:
    """Partialsummen der Schubert-Betti-Zahlen von oben gegen die des Komplements.

    (1) Σ_{i<=r} b[L-i] <= Σ_{i<=r} β[i]
    (2) nur gerade Abstände, (3) nur ungerade Abstände.
    """
    b = poincare_polynomial(w).coefficients
    beta = betti_numbers(build_lattice(w, expr))
    top = length(w)

    def partial(indices_b, indices_beta) -> Tuple[int, int]:
        return (sum(_coefficient(b, k) for k in indices_b),
                sum(_coefficient(beta, k) for k in indices_beta))

    series = []
    for r in range(top + 1):
        series.append(('all', r, partial([top - i for i in range(r + 1)], range(r + 1))))
    for r in range(top // 2 + 1):
        series.append(('even', r, partial([top - 2 * j for j in range(r + 1)], [2 * j for j in range(r + 1)])))
    for r in range((top - 1) // 2 + 1 if top >= 1 else 0):
        series.append(('odd', r, partial([top - 2 * j - 1 for j in range(r + 1)],
                                         [2 * j + 1 for j in range(r + 1)])))

    holds = all(lhs <= rhs for _, _, (lhs, rhs) in series)
    maxima = {'all': top, 'even': top // 2, 'odd': (top - 1) // 2}
    equality = all(lhs == rhs for kind, r, (lhs, rhs) in series if r == maxima[kind])
    return BettiComparison(tuple(b), beta, holds, equality)
