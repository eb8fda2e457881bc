#!/usr/bin/env python3
"""
Erschöpfende Zählung über S_2 ... S_N

Führt jede registrierte Prüfung bis zu ihrer Obergrenze aus und schreibt
die Ergebnisse nach data/census_n<N>.json. Dazu die Klassengrößen
(musterfrei, glatt); conjectureA zählt zusätzlich die w mit br = re.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from chromobruhat.config import VerifierConfig, configure_logging
from chromobruhat.patterns import class_counts
from chromobruhat.verifier import CHECKS, cmd_verify

# Konfiguration
DEFAULT_MAX_N = 5
MIN_N = 2


def run_checks(max_n, config):
    """Alle Prüfungen für n = MIN_N..min(max_n, Obergrenze)"""
    results = {}
    failed = []
    for check in sorted(CHECKS):
        top = min(max_n, config.ceiling(check))
        results[check] = []
        for n in range(MIN_N, top + 1):
            report = cmd_verify(check, n, config)
            marker = '✅' if report.passed else '❌'
            print(f"   {marker} {check:<20} n={n}  failures={report.failures}  ({report.elapsed:.2f}s)")
            results[check].append(report.to_dict())
            if not report.passed:
                failed.append((check, n))
    return results, failed


def main():
    parser = argparse.ArgumentParser(description='Erschöpfende Zählung über S_n')
    parser.add_argument('--max-n', type=int, default=DEFAULT_MAX_N)
    parser.add_argument('--jobs', type=int, default=None)
    args = parser.parse_args()

    config = VerifierConfig.from_env(jobs=args.jobs, log_level='warning')
    configure_logging(config.log_level)

    print(f"🔢 Klassengrößen für n = {MIN_N}..{args.max_n}")
    classes = {}
    for n in range(MIN_N, args.max_n + 1):
        classes[n] = class_counts(n)
        print(f"   n={n}: {classes[n]}")

    print(f"\n🔍 Prüfungen ({len(CHECKS)} registriert, {config.jobs} Worker)")
    results, failed = run_checks(args.max_n, config)

    output_dir = Path(__file__).parent.parent / "data"
    output_dir.mkdir(exist_ok=True)
    output_file = output_dir / f"census_n{args.max_n}.json"
    with open(output_file, 'w', encoding='utf-8') as f:
        json.dump({'classes': classes, 'checks': results}, f, ensure_ascii=False, indent=2)
    print(f"\n✅ Ergebnisse gespeichert: {output_file}")

    print(f"\n📊 Statistik:")
    print(f"   Läufe: {sum(len(v) for v in results.values())}")
    print(f"   Fehlgeschlagen: {len(failed)}")
    for check, n in failed:
        print(f"   ⚠️  {check} bei n={n}")
    if failed:
        return 1
    print(f"\n🎉 Fertig!")
    return 0


if __name__ == "__main__":
    sys.exit(main())
