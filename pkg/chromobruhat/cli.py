"""
Kommandozeile: analyze, verify, golden
"""
import argparse
import sys

from chromobruhat.config import EXPR_RULES, LOG_LEVELS, OUTPUT_FORMATS, VerifierConfig, configure_logging
from chromobruhat.verifier import CHECKS, Report, cmd_analyze, cmd_golden, cmd_verify
from chromobruhat.version import get_version

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default='text', dest='output_format')
    common.add_argument('--log-level', choices=LOG_LEVELS, default=None)
    common.add_argument('--jobs', type=int, default=None, help='Worker-Prozesse (0 = alle Kerne)')
    common.add_argument('--cap', type=int, default=None, help='max. Gegenbeispiele im Bericht')
    common.add_argument('--dump-all', action='store_true', help='alle Gegenbeispiele ausgeben')
    common.add_argument('--no-eager', action='store_true', help='Invarianten von φ nicht sofort prüfen')
    common.add_argument('--xlsx', metavar='PATH', help='Bericht zusätzlich als Excel-Datei schreiben')
    common.add_argument('--pdf', metavar='PATH', help='Bericht zusätzlich als PDF schreiben')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='chromobruhat',
        description='Bruhat-Intervalle, Inversionsarrangements und chromatische Polynome auf S_n',
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {get_version()}")
    sub = parser.add_subparsers(dest='command', required=True)

    analyze = sub.add_parser('analyze', parents=[common], help='alle Größen einer Permutation')
    analyze.add_argument('permutation', help='Einzeilennotation, z.B. 4132 oder 10,3,1,...')

    verify = sub.add_parser('verify', parents=[common], help='erschöpfende Prüfung über S_n')
    verify.add_argument('--check', required=True, choices=sorted(CHECKS))
    verify.add_argument('--n', type=int, required=True)
    verify.add_argument('--expr', choices=EXPR_RULES, default='canonical')

    sub.add_parser('golden', parents=[common], help='Beispiel w = 4132 gegen die Fixture-Daten')
    return parser


def _print_text(report: Report, out):
    status = '✅ PASS' if report.passed else '❌ FAIL'
    print(f"{status}  {report.command} {report.check}  n={report.n}  "
          f"population={report.population}  failures={report.failures}  "
          f"({report.elapsed:.2f}s)", file=out)
    for key, value in report.payload.items():
        if key in ('phi_table', 'chains'):
            print(f"  {key}:", file=out)
            for row in value:
                print(f"    {row['labels']:<10} {row['product']:<14} {row['image']:<8} {row['image_word']}",
                      file=out)
        else:
            print(f"  {key}: {value}", file=out)
    for entry in report.counterexamples:
        print(f"  ⚠️  {entry}", file=out)


def _export(report: Report, args):
    if args.xlsx:
        from chromobruhat.excel_export import create_excel_export
        with open(args.xlsx, 'wb') as f:
            f.write(create_excel_export(report).read())
        print(f"📊 Excel written to {args.xlsx}", file=sys.stderr)
    if args.pdf:
        from chromobruhat.pdf_export import export_report_pdf
        export_report_pdf(report, args.pdf)
        print(f"📄 PDF written to {args.pdf}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = VerifierConfig.from_env(
            jobs=args.jobs,
            counterexample_cap=args.cap,
            log_level=args.log_level,
            full_dump=args.dump_all,
            eager_checks=not args.no_eager,
            output_format=args.output_format,
            expr_rule=getattr(args, 'expr', 'canonical'),
        )
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(config.log_level)
    text = config.output_format == 'text'

    try:
        if args.command == 'analyze':
            if text:
                print(f"🔍 Analysing {args.permutation}...", file=sys.stderr)
            report = cmd_analyze(args.permutation, config)
        elif args.command == 'verify':
            if text:
                print(f"🔍 Verifying {args.check} for n={args.n} ({config.jobs} worker)...", file=sys.stderr)
            report = cmd_verify(args.check, args.n, config)
        else:
            if text:
                print("🔍 Comparing w = 4132 against golden fixtures...", file=sys.stderr)
            report = cmd_golden(config)
    except ValueError as e:
        # Parse-Fehler, unbekannte Prüfung, Obergrenze
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    if text:
        _print_text(report, sys.stdout)
    else:
        print(report.to_json())
    _export(report, args)
    return EXIT_OK if report.passed else EXIT_FAILURE
