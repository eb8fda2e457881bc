"""
Konfiguration für Verifikationsläufe
"""
import logging
import multiprocessing
import os
from dataclasses import dataclass
from typing import Dict

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
LOG_LEVELS = ('debug', 'info', 'warning', 'error')

EXPR_RULES = ('canonical', 'all')
OUTPUT_FORMATS = ('text', 'json')

# Obergrenzen für n je Prüfung (Intervall-Aufzählung ist der Kostentreiber)
DEFAULT_CEILINGS = {
    'conjectureA': 8,
    'conjectureB': 8,
    'phi-injective': 7,
    'phi-surjective-iff': 6,
    'going-down': 6,
    'characterization': 6,
    'betti': 6,
    'chromatic-identity': 6,
    'opy': 8,
    'recurrences': 7,
    'hull-vs-standard': 6,
    'weak-chain': 7,
    'coherence': 5,
    'lattice-el': 5,
}

# --expr all: Anzahl reduzierter Ausdrücke wächst schneller als S_n
ALL_EXPRESSIONS_CEILING = 5


@dataclass
class VerifierConfig:
    jobs: int = 1
    counterexample_cap: int = 10
    full_dump: bool = False
    expr_rule: str = 'canonical'
    eager_checks: bool = True
    output_format: str = 'text'
    log_level: str = 'info'
    ceilings: Dict[str, int] = None

    def __post_init__(self):
        if self.ceilings is None:
            self.ceilings = dict(DEFAULT_CEILINGS)
        if self.jobs == 0:
            self.jobs = multiprocessing.cpu_count()
        if self.jobs < 0:
            raise ValueError(f"jobs must be >= 0, got {self.jobs}")
        if self.counterexample_cap < 0:
            raise ValueError(f"counterexample cap must be >= 0, got {self.counterexample_cap}")
        if self.expr_rule not in EXPR_RULES:
            raise ValueError(f"expression rule {self.expr_rule!r} not in {EXPR_RULES}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output format {self.output_format!r} not in {OUTPUT_FORMATS}")
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"log level {self.log_level!r} not in {LOG_LEVELS}")

    @classmethod
    def from_env(cls, **overrides) -> 'VerifierConfig':
        """Defaults aus CHROMOBRUHAT_* Umgebungsvariablen, explizite Werte gewinnen."""
        values = {
            'jobs': int(os.environ.get('CHROMOBRUHAT_JOBS', '1')),
            'counterexample_cap': int(os.environ.get('CHROMOBRUHAT_CAP', '10')),
            'log_level': os.environ.get('CHROMOBRUHAT_LOG_LEVEL', 'info').lower(),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def ceiling(self, check: str) -> int:
        ceiling = self.ceilings.get(check, 7)
        if self.expr_rule == 'all':
            return min(ceiling, ALL_EXPRESSIONS_CEILING)
        return ceiling


def configure_logging(level: str = 'info'):
    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), format=LOG_FORMAT)
