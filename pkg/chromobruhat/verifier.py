"""
Verifikation - Prüfungsregister, erschöpfende Läufe über S_n und Berichte

Jede Prüfung ist eine Funktion Permutation -> CheckOutcome. Ein Lauf teilt
S_n in lexikographische Blöcke, verteilt sie auf Prozesse und führt die
Ergebnisse in Blockreihenfolge zusammen.
"""
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from chromobruhat import arrangement, bruhat, chromatics, patterns, phi_map
from chromobruhat.config import VerifierConfig
from chromobruhat.permutation import (
    Permutation, absolute_length, all_permutations, all_reduced_expressions, compose,
    format_cycles, inverse, inversion_graph, inversions, length, opy_exponents,
    reduced_expression, reflection_sequence,
)
from chromobruhat.version import SCHEMA_VERSION, get_version

logger = logging.getLogger(__name__)

GOLDEN_FILE = os.path.join(os.path.dirname(__file__), '..', 'data', 'golden_4132.json')

# Obergrenzen für intervall- und verbandsbasierte Größen in analyze
ANALYZE_INTERVAL_CEILING = 8
ANALYZE_LATTICE_CEILING = 8


class VerificationError(ValueError):
    """Unbekannte Prüfung, Obergrenze überschritten oder ungültige Laufparameter."""


class InjectivityViolation(RuntimeError):
    """φ ist nicht injektiv: widerspricht einem Satz, der Lauf bricht ab."""


@dataclass
class CheckOutcome:
    """passed=None heißt: Prüfung trifft auf diese Permutation nicht zu."""
    passed: Optional[bool]
    tally: Dict[str, int] = field(default_factory=dict)
    detail: Dict = field(default_factory=dict)


@dataclass
class Report:
    command: str
    check: str
    n: int
    population: int
    passed: bool
    counterexamples: List[Dict] = field(default_factory=list)
    failures: int = 0
    elapsed: float = 0.0
    payload: Dict = field(default_factory=dict)

    def comparison_dict(self) -> Dict:
        """Deterministischer Teil des Berichts (ohne Laufzeit)."""
        return {
            'schema_version': SCHEMA_VERSION,
            'version': get_version(),
            'command': self.command,
            'check': self.check,
            'n': self.n,
            'population': self.population,
            'passed': self.passed,
            'failures': self.failures,
            'counterexamples': self.counterexamples,
            'payload': self.payload,
        }

    def to_dict(self) -> Dict:
        data = self.comparison_dict()
        data['elapsed_seconds'] = round(self.elapsed, 3)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


# --- Hilfsgrößen ---------------------------------------------------------------

def _br(w: Optional[Permutation]) -> int:
    return 1 if w is None else bruhat.interval_size(w)


def _ao(w: Optional[Permutation]) -> int:
    return 1 if w is None else chromatics.permutation_ao(w)


def _expressions(w: Permutation, config: VerifierConfig):
    if config.expr_rule == 'all':
        return all_reduced_expressions(w)
    return [reduced_expression(w)]


# --- Prüfungen ---------------------------------------------------------------

def check_conjecture_a(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    br, re = bruhat.interval_size(w), chromatics.permutation_ao(w)
    return CheckOutcome(re <= br, {'equal': int(re == br)}, {'br': br, 're': re})


def check_conjecture_b(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    br, re = bruhat.interval_size(w), chromatics.permutation_ao(w)
    avoiding = patterns.is_chromobruhatic(w)
    return CheckOutcome((br == re) == avoiding, {'chromobruhatic': int(avoiding)},
                        {'br': br, 're': re, 'chromobruhatic': avoiding})


def check_phi_injective(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    expressions = _expressions(w, config)
    for expr in expressions:
        if not phi_map.verify_injective(w, expr, eager=config.eager_checks):
            raise InjectivityViolation(f"φ is not injective for {w} under {expr.format()}")
    return CheckOutcome(True, {'expressions': len(expressions)})


def check_phi_surjective_iff(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    surjective, missed = phi_map.verify_surjective(w, eager=config.eager_checks)
    avoiding = patterns.is_chromobruhatic(w)
    even = sum(1 for u in missed if length(u) % 2 == 0)
    parity_ok = 2 * even == len(missed)
    detail = {'surjective': surjective, 'chromobruhatic': avoiding, 'missed': len(missed)}
    return CheckOutcome(surjective == avoiding and parity_ok,
                        {'surjective': int(surjective), 'missed': len(missed)}, detail)


def check_going_down(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    return CheckOutcome(phi_map.verify_going_down(w))


def check_characterization(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    return CheckOutcome(phi_map.verify_characterization(w))


def check_betti(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    if not patterns.is_chromobruhatic(w):
        return CheckOutcome(None)
    cmp = phi_map.verify_betti_inequalities(w)
    return CheckOutcome(cmp.holds and cmp.equality_at_max, {'avoiding': 1},
                        {'schubert': list(cmp.schubert), 'arrangement': list(cmp.arrangement)})


def check_chromatic_identity(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    holds = chromatics.chromatic_identity_holds(w)
    avoiding = patterns.is_chromobruhatic(w)
    rhs = chromatics.chromatic_identity_rhs(w)
    nonnegative = all(c >= 0 for c in rhs.coefficients)
    return CheckOutcome(holds == avoiding and nonnegative, {'identity_holds': int(holds)},
                        {'distance': chromatics.distance_poly(w).to_json(), 'rhs': rhs.to_json()})


def check_opy(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    if not patterns.is_smooth(w):
        return CheckOutcome(None)
    product = chromatics.opy_chromatic(w)
    chi = chromatics.permutation_chromatic(w)
    return CheckOutcome(product == chi, {'smooth': 1},
                        {'exponents': list(opy_exponents(w)), 'chi': chi.to_json()})


def check_recurrences(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    avoiding = patterns.is_chromobruhatic(w)
    pair = patterns.find_reduction_pair(w)
    if pair is None:
        # für musterfreie w != e muss ein Paar existieren
        must_exist = avoiding and not w.is_identity
        return CheckOutcome(False if must_exist else None, {}, {'reason': 'no reduction pair'})
    if not avoiding:
        return CheckOutcome(None)

    step = patterns.reduction_step(w, pair)
    detail = {'pair': pair.describe(), 'rho': step.rho.format()}
    ok = bruhat.bruhat_less(step.rho, step.target) and patterns.is_chromobruhatic(step.rho)
    # das Paar muss schon unter den ersten Abstiegen von w oder w^-1 liegen
    ok = ok and pair.symmetry in ('identity', 'inverse')
    br_t, ao_t = _br(step.target), _ao(step.target)
    if pair.kind == 'light':
        ok = ok and br_t == _br(step.rho) + _br(step.minus_y)
        ok = ok and ao_t == _ao(step.rho) + _ao(step.minus_y)
        return CheckOutcome(ok, {'light': 1}, detail)
    ok = ok and br_t == _br(step.rho) + _br(step.minus_x) + _br(step.minus_y) - _br(step.minus_xy)
    ok = ok and ao_t == _ao(step.rho) + _ao(step.minus_x) + _ao(step.minus_y) - _ao(step.minus_xy)
    ok = ok and chromatics.heavy_coloring_identity_holds(w, pair)
    return CheckOutcome(ok, {'heavy': 1}, detail)


def check_hull_vs_standard(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    avoiding = patterns.is_chromobruhatic(w)
    for u in all_permutations(w.n):
        standard = bruhat.bruhat_leq(u, w, 'rank')
        if bruhat.bruhat_leq(u, w, 'bubble') != standard:
            return CheckOutcome(False, {}, {'u': u.format(), 'backend': 'bubble'})
        if avoiding and bruhat.bruhat_leq(u, w, 'hull') != standard:
            return CheckOutcome(False, {}, {'u': u.format(), 'backend': 'hull'})
    if avoiding and bruhat.interval_size(w, 'permanent') != bruhat.interval_size(w, 'profile'):
        return CheckOutcome(False, {}, {'reason': 'permanent differs from rank profile count'})
    return CheckOutcome(True, {'hull_compared': int(avoiding)})


def check_weak_chain(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    if not patterns.is_chromobruhatic(w):
        return CheckOutcome(None)
    chain = bruhat.weak_chain_to_identity(w)
    return CheckOutcome(chain is not None, {'avoiding': 1},
                        {'steps': len(chain) - 1 if chain else None})


def check_coherence(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    graph = inversion_graph(w)
    lattice = arrangement.build_lattice(w)
    re = sum(arrangement.mobius_values(lattice).values())
    ao = chromatics.acyclic_orientations(graph)
    ao_brute = chromatics.acyclic_orientations_bruteforce(graph)
    chi_ok = arrangement.characteristic_polynomial(lattice) == chromatics.chromatic_polynomial(graph)
    br_ok = True
    if patterns.is_chromobruhatic(w):
        br_ok = bruhat.interval_size(w, 'permanent') == len(bruhat.interval_by_filter(w))
    detail = {'re': re, 'ao': ao, 'ao_bruteforce': ao_brute}
    return CheckOutcome(re == ao == ao_brute and chi_ok and br_ok, {}, detail)


def check_lattice_el(w: Permutation, config: VerifierConfig) -> CheckOutcome:
    lattice = arrangement.build_lattice(w)
    counts = arrangement.increasing_chain_counts(lattice)
    bad = [(a.format(), b.format(), c) for (a, b), c in counts.items() if c != 1]
    bonds_ok = set(lattice.elements) == arrangement.bond_partitions_bruteforce(inversion_graph(w))
    return CheckOutcome(not bad and bonds_ok, {'elements': len(lattice.elements)},
                        {'intervals_without_unique_chain': bad[:5]})


CHECKS: Dict[str, Callable[[Permutation, VerifierConfig], CheckOutcome]] = {
    'conjectureA': check_conjecture_a,
    'conjectureB': check_conjecture_b,
    'phi-injective': check_phi_injective,
    'phi-surjective-iff': check_phi_surjective_iff,
    'going-down': check_going_down,
    'characterization': check_characterization,
    'betti': check_betti,
    'chromatic-identity': check_chromatic_identity,
    'opy': check_opy,
    'recurrences': check_recurrences,
    'hull-vs-standard': check_hull_vs_standard,
    'weak-chain': check_weak_chain,
    'coherence': check_coherence,
    'lattice-el': check_lattice_el,
}


# --- Läufe -------------------------------------------------------------------

def _run_block(check: str, words: Sequence[Tuple[int, ...]], config: VerifierConfig) -> List[Tuple[Tuple[int, ...], Dict]]:
    """Führt eine Prüfung auf einem Block aus; läuft auch im Worker-Prozess."""
    func = CHECKS[check]
    results = []
    for word in words:
        w = Permutation(word)
        try:
            outcome = func(w, config)
            results.append((word, {'passed': outcome.passed, 'tally': outcome.tally, 'detail': outcome.detail}))
        except InjectivityViolation:
            raise
        except Exception as e:
            logger.exception("check %s raised on %s", check, w)
            results.append((word, {'passed': False, 'tally': {}, 'detail': {'error': str(e)}}))
    return results


def _blocks(n: int, jobs: int) -> List[List[Tuple[int, ...]]]:
    words = [w.word for w in all_permutations(n)]
    parts = max(1, jobs * 4)
    size = max(1, -(-len(words) // parts))
    return [words[k:k + size] for k in range(0, len(words), size)]


def sweep(check: str, n: int, config: VerifierConfig) -> Report:
    """Erschöpfender Lauf über S_n; Ergebnis hängt nicht von config.jobs ab."""
    started = time.perf_counter()
    blocks = _blocks(n, config.jobs)
    if config.jobs == 1:
        block_results = [_run_block(check, block, config) for block in blocks]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(_run_block, check, block, config) for block in blocks]
            block_results = [f.result() for f in futures]

    report = Report('verify', check, n, 0, True)
    tally: Dict[str, int] = {'applicable': 0}
    for results in block_results:
        for word, outcome in results:
            report.population += 1
            if outcome['passed'] is None:
                continue
            tally['applicable'] += 1
            for key, value in outcome['tally'].items():
                tally[key] = tally.get(key, 0) + value
            if not outcome['passed']:
                report.failures += 1
                if config.full_dump or len(report.counterexamples) < config.counterexample_cap:
                    entry = {'w': Permutation(word).format()}
                    entry.update(outcome['detail'])
                    report.counterexamples.append(entry)
    report.passed = report.failures == 0
    report.payload = {'tally': tally, 'expr_rule': config.expr_rule}
    report.elapsed = time.perf_counter() - started
    return report


def cmd_verify(check: str, n: int, config: Optional[VerifierConfig] = None) -> Report:
    config = config or VerifierConfig()
    if check not in CHECKS:
        raise VerificationError(f"unknown check {check!r}, expected one of {sorted(CHECKS)}")
    if n < 1:
        raise VerificationError(f"n must be >= 1, got {n}")
    ceiling = config.ceiling(check)
    if n > ceiling:
        raise VerificationError(f"n={n} exceeds the ceiling {ceiling} for check {check}")
    if config.expr_rule == 'all' and check != 'phi-injective':
        raise VerificationError(f"--expr all only applies to phi-injective, not {check}")
    logger.info("verify %s for n=%d with %d worker(s)", check, n, config.jobs)
    try:
        return sweep(check, n, config)
    except InjectivityViolation as e:
        logger.error("run aborted: %s", e)
        return Report('verify', check, n, 0, False, [{'error': str(e)}], 1,
                      payload={'aborted': True, 'expr_rule': config.expr_rule})


# --- Analyse einer Permutation -----------------------------------------------

def analyze_payload(w: Permutation, eager: bool = True) -> Dict:
    graph = inversion_graph(w)
    expr = reduced_expression(w)
    chi = chromatics.chromatic_polynomial(graph)
    br = bruhat.interval_size(w)
    ao = chromatics.acyclic_orientations(graph)
    lattice = None
    if w.n <= ANALYZE_LATTICE_CEILING:
        lattice = arrangement.build_lattice(w, expr)
        re = sum(arrangement.mobius_values(lattice).values())
        betti = list(arrangement.betti_numbers(lattice))
    else:
        # Zaslavsky und Whitney: beides direkt aus den Koeffizienten von χ
        re = ao
        betti = [abs(chi.coefficient(w.n - i)) for i in range(w.n)]
        while betti and betti[-1] == 0:
            betti.pop()
    avoiding = patterns.is_chromobruhatic(w)
    smooth = patterns.is_smooth(w)
    contained = patterns.CHROMOBRUHATIC.first_contained(w)
    pair = patterns.find_reduction_pair(w)

    payload = {
        'permutation': w.format(),
        'n': w.n,
        'length': length(w),
        'absolute_length': absolute_length(w),
        'inversions': [list(p) for p in inversions(w)],
        'reduced_expression': expr.format(),
        'reflections': [str(t) for t in reflection_sequence(expr)],
        'br': br,
        're': re,
        'ao': ao,
        'chromatic': {'coefficients': chi.to_json(), 'text': chi.to_text('t'),
                      'factored': chi.factor_text('t')},
        'betti': betti,
        'lattice_size': len(lattice.elements) if lattice is not None else None,
        'chromobruhatic': avoiding,
        'smooth': smooth,
        'contained_pattern': contained[0].format() if contained else None,
        'reduction_pair': pair.describe() if pair else None,
        'flags': [] if br == re else ['br != re'],
    }
    if smooth:
        payload['opy_exponents'] = list(opy_exponents(w))

    skipped = []
    if lattice is None:
        skipped.append(f"lattice built only for n <= {ANALYZE_LATTICE_CEILING}, re and betti taken from the chromatic polynomial")
    if w.n <= ANALYZE_INTERVAL_CEILING:
        distance = chromatics.distance_poly(w)
        rhs = chi.reflect_at_minus_inverse(w.n)
        payload['distance_polynomial'] = {'coefficients': distance.to_json(), 'text': distance.to_text('q')}
        payload['identity_rhs'] = {'coefficients': rhs.to_json(), 'text': rhs.to_text('q')}
        payload['poincare'] = bruhat.poincare_polynomial(w).to_json()
        payload['phi_table'] = [img.as_row() for img in phi_map.phi_images(w, expr, eager, lattice)]
        payload['phi_injective'] = len({r['image'] for r in payload['phi_table']}) == len(payload['phi_table'])
        witness = patterns.witness_below(w)
        if witness is not None:
            distances = bruhat.distances_to(w)
            payload['witness'] = {
                'u': witness.u.format(),
                'pattern': witness.pattern.format(),
                'positions': list(witness.positions),
                'cycle': format_cycles(witness.cycle),
                'absolute_length': absolute_length(compose(witness.u, inverse(w))),
                'directed_distance': distances[witness.u],
            }
    else:
        skipped.append(f"interval quantities skipped for n > {ANALYZE_INTERVAL_CEILING}")
    if skipped:
        payload['skipped'] = '; '.join(skipped)
    return payload


def cmd_analyze(text: str, config: Optional[VerifierConfig] = None) -> Report:
    config = config or VerifierConfig()
    started = time.perf_counter()
    w = Permutation.parse(text)
    payload = analyze_payload(w, eager=config.eager_checks)
    passed = payload.get('phi_injective', True)
    report = Report('analyze', 'analyze', w.n, 1, passed, payload=payload)
    report.elapsed = time.perf_counter() - started
    return report


# --- Goldene Daten -----------------------------------------------------------

def load_golden(path: str = GOLDEN_FILE) -> Dict:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def golden_payload(w: Permutation) -> Dict:
    """Dieselbe Struktur wie die Fixture-Datei, aus dem Code erzeugt."""
    expr = reduced_expression(w)
    lattice = arrangement.build_lattice(w, expr)
    mobius = arrangement.mobius_values(lattice)
    chi = chromatics.permutation_chromatic(w)
    distance = chromatics.distance_poly(w)
    by_rank: List[List[int]] = [[] for _ in range(lattice.rank + 1)]
    for x in lattice.elements:
        by_rank[x.rank].append(mobius[x])
    hull_example = Permutation.parse('35124')
    return {
        'permutation': w.format(),
        'reduced_expression': expr.format(),
        'reflections': [str(t) for t in lattice.hyperplanes],
        'br': bruhat.interval_size(w),
        're': sum(mobius.values()),
        'lattice': {
            'elements': [x.format() for x in lattice.elements],
            'covers': [list(row) for row in lattice.hasse_rows()],
        },
        'mobius_by_rank': by_rank,
        'chains': [
            {k: row[k] for k in ('labels', 'product', 'image', 'image_word')}
            for row in phi_map.phi_table(w, expr)
        ],
        'chromatic': {
            'coefficients': chi.to_json(),
            'text': chi.to_text('t'),
            'opy_exponents': list(opy_exponents(w)),
        },
        'distance_polynomial': {'coefficients': distance.to_json(), 'text': distance.to_text('q')},
        'identity_rhs': chromatics.chromatic_identity_rhs(w).to_json(),
        'betti': list(arrangement.betti_numbers(lattice)),
        'fat_edges': len(phi_map.going_down_edges(w, expr)),
        'right_hull_35124': bruhat.right_hull(hull_example).rows_as_text(),
    }


def structural_diff(expected, actual, path: str = '') -> List[Dict]:
    """Liste aller abweichenden Blätter mit JSON-Pfad."""
    diffs: List[Dict] = []
    if isinstance(expected, dict) and isinstance(actual, dict):
        for key in sorted(set(expected) | set(actual)):
            sub = f"{path}.{key}" if path else key
            if key not in actual:
                diffs.append({'path': sub, 'expected': expected[key], 'actual': None})
            elif key not in expected:
                diffs.append({'path': sub, 'expected': None, 'actual': actual[key]})
            else:
                diffs.extend(structural_diff(expected[key], actual[key], sub))
    elif isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            diffs.append({'path': f"{path}.length", 'expected': len(expected), 'actual': len(actual)})
        for k, (e, a) in enumerate(zip(expected, actual)):
            diffs.extend(structural_diff(e, a, f"{path}[{k}]"))
    elif expected != actual:
        diffs.append({'path': path, 'expected': expected, 'actual': actual})
    return diffs


def cmd_golden(config: Optional[VerifierConfig] = None, path: str = GOLDEN_FILE) -> Report:
    config = config or VerifierConfig()
    started = time.perf_counter()
    expected = load_golden(path)
    w = Permutation.parse(expected['permutation'])
    actual = golden_payload(w)
    diffs = structural_diff(expected, actual)
    shown = diffs if config.full_dump else diffs[:config.counterexample_cap]
    report = Report('golden', 'golden', w.n, len(expected['chains']), not diffs, shown, len(diffs),
                    payload=actual)
    report.elapsed = time.perf_counter() - started
    return report
