"""
cauchy-forensics CLI
Command line interface - analyze, histogram, simulate, power, reproduce
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from . import __version__
from .config import AnalysisSettings, ScenarioConfig, build_config
from .errors import EXIT_DATA_ERROR, EXIT_OK, ConfigError, ForensicsError, InputFileError
from .ingest import ingest, write_corpus, records_frame
from .models import AnalysisReport
from .pipeline import DEFAULT_REJECTION_LEVELS, analyze, turnout_histogram
from .reproduction import analyze_2004, compare_to_published
from .simulator import generate, power_study
from .svg import render_histogram, write_svg

logger = logging.getLogger(__name__)


# ============================================
# ARGUMENT PARSING HELPERS
# ============================================

def _csv_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated counts, got '{text}'")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _interval(text: str) -> Tuple[float, float]:
    values = _float_list(text)
    if len(values) != 2 or not values[0] < values[1]:
        raise argparse.ArgumentTypeError(f"interval must be 'lo,hi' with lo < hi, got '{text}'")
    return values[0], values[1]


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    """'--interval -1.1,-0.95' would otherwise be read as an unknown option"""
    out: List[str] = []
    it = iter(argv)
    for token in it:
        if token in ("--interval", "--magnitudes"):
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


# ============================================
# OUTPUT
# ============================================

def report_json(report: AnalysisReport) -> str:
    """Stable, locale-independent JSON text of a report"""
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def print_report(report: AnalysisReport):
    """Pretty print an analysis report"""
    ref = report.reference

    print(f"\n{'='*65}")
    print(f"🗳️  CAUCHY FORENSICS - ratio of normalized indicators")
    print(f"{'='*65}")
    print(f"📍 Suspect regions: {', '.join(report.suspect_regions)}")
    print(f"   Reference: {ref.n_used} records, excluded {', '.join(ref.excluded_regions) or '-'}")
    print(f"{'='*65}")

    print(f"\n📊 REFERENCE STATISTICS:")
    print(f"   {'Indicator':<18} {'Mean':>10} {'Variance':>10} {'Sigma':>8}")
    print(f"   {'-'*49}")
    for name, stats in (("Turnout %", ref.turnout), ("Against all %", ref.against_all)):
        print(f"   {name:<18} {stats.mean:>10.3f} {stats.variance:>10.3f} {stats.sigma:>8.3f}")

    print(f"\n📐 ARCTANGENT REGRESSION ({len(report.ratios)} ratios):")
    print(f"   {'Rejected':>8} {'alpha':>10} {'gamma':>10}")
    print(f"   {'-'*30}")
    for row in report.sweep:
        print(f"   {row.rejected_total:>8} {row.location_hat:>10.4f} {row.scale_hat:>10.4f}")
    if report.oracle:
        print(f"   {'oracle':>8} {report.oracle.location:>10.4f} {report.oracle.scale:>10.4f}")
    print(f"   Null law: alpha = 0, gamma = 1")

    print(f"\n🎯 PLAUSIBILITY (sample mean {report.sample_mean:.4f}):")
    if not report.probabilities:
        print(f"   No intervals requested (use --interval lo,hi)")
    for p in report.probabilities:
        print(f"   P{{alpha in [{p.lo:g}, {p.hi:g}]}} (gamma={p.scale:g}) = {p.probability:.4f}")

    if report.flags:
        print(f"\n⚠️  DATA FLAGS ({len(report.flags)}):")
        for f in report.flags[:10]:
            print(f"   • {f.region}/{f.constituency_id}: {f.code} - {f.detail}")
        if len(report.flags) > 10:
            print(f"   ... {len(report.flags) - 10} more")

    print(f"\n{'='*65}\n")


def _load_records(path: str, skip_bad: bool):
    result = ingest(path, skip_bad=skip_bad)
    for d in result.diagnostics:
        print(str(d), file=sys.stderr)
    return result.records


# ============================================
# COMMANDS
# ============================================

def cmd_analyze(args: argparse.Namespace) -> int:
    """Run the pipeline and emit the report"""
    overrides = {
        "variance_ddof": {"n-1": 1, "n": 0}.get(args.variance_divisor) if args.variance_divisor else None,
        "against_all_basis": args.against_all_basis,
    }
    settings = build_config(AnalysisSettings, args.config, overrides)
    records = _load_records(args.data, args.skip_bad)

    report = analyze(
        records,
        excluded_regions=args.exclude_regions,
        suspect_regions=args.suspect_regions,
        rejection_levels=args.reject,
        prob_intervals=args.interval or [],
        scales=args.scale or [1.0],
        settings=settings,
    )

    text = report_json(report)
    if args.out:
        _write_text(text, args.out)
    if args.json:
        sys.stdout.write(text)
    elif not args.out:
        print_report(report)
    return EXIT_OK


def cmd_histogram(args: argparse.Namespace) -> int:
    """Render turnout histogram as SVG"""
    records = _load_records(args.data, args.skip_bad)
    if not records:
        print("Error: no records to plot", file=sys.stderr)
        return EXIT_DATA_ERROR

    bins = turnout_histogram(records, args.bin_width)
    write_svg(render_histogram(bins, args.bin_width, title=args.title or ""), args.out)
    print(f"Histogram of {len(records)} records written to {args.out}", file=sys.stderr)
    return EXIT_OK


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    overrides = {
        "seed": args.seed,
        "n_reference": args.n_reference,
        "n_suspect": args.n_suspect,
        "fraud_mode": args.fraud_mode,
        "fraud_magnitude": args.fraud_magnitude,
    }
    return build_config(ScenarioConfig, args.config, overrides)


def _write_text(text: str, out: Optional[str]):
    """Write to a file, or to stdout when no path is given"""
    if out:
        try:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as e:
            raise InputFileError(f"cannot write {out}: {e}") from e
    else:
        sys.stdout.write(text)


def cmd_power(args: argparse.Namespace) -> int:
    """Detection rate per fraud magnitude"""
    base = _scenario(args)
    rows = [r.to_dict() for r in power_study(base, args.magnitudes, args.n_seeds, max_workers=args.workers)]
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        text = pd.DataFrame(rows).to_csv(index=False, lineterminator="\n")
    _write_text(text, args.out)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    """Generate a synthetic corpus in the input CSV schema"""
    if args.power:
        return cmd_power(args)

    records = generate(_scenario(args))
    if args.out:
        write_corpus(records, args.out)
        print(f"{len(records)} records written to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(records_frame(records).to_csv(index=False, lineterminator="\n"))
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    """Compare an analysis of the 2004 dataset with the published figures"""
    records = _load_records(args.data, args.skip_bad)
    deltas = compare_to_published(analyze_2004(records))

    if args.json:
        sys.stdout.write(json.dumps([d.to_dict() for d in deltas], indent=2) + "\n")
    else:
        print(f"\n{'Figure':<34} {'Published':>10} {'Observed':>10} {'Delta':>9}  ")
        print(f"{'-'*68}")
        for d in deltas:
            mark = "✓" if d.within else ("✗" if d.gated else "·")
            print(f"{d.name:<34} {d.published:>10.4f} {d.observed:>10.4f} {d.delta:>+9.4f}  {mark}")
    failed = [d for d in deltas if d.gated and not d.within]
    return EXIT_DATA_ERROR if failed else EXIT_OK


# ============================================
# PARSER
# ============================================

def _add_scenario_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key=value scenario config file")
    p.add_argument("--seed", type=int, help="Base random seed")
    p.add_argument("--n-reference", type=int, help="Reference constituencies")
    p.add_argument("--n-suspect", type=int, help="Suspect constituencies")
    p.add_argument("--fraud-mode", choices=["none", "stuffing", "turnout_shift"])
    p.add_argument("--fraud-magnitude", type=float, help="Sigma units (turnout_shift) or ballot fraction (stuffing)")


def _add_power_flags(p: argparse.ArgumentParser):
    p.add_argument("--magnitudes", type=_float_list, default=[0.0, 1.0, 2.0, 3.0],
                   help="Comma-separated fraud magnitudes (default: 0,1,2,3)")
    p.add_argument("--n-seeds", type=int, default=100, help="Seeds per magnitude (default: 100)")
    p.add_argument("--format", choices=["csv", "json"], default="csv", help="Power table format")
    p.add_argument("--workers", type=int, default=None, help="Thread pool size for seeds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchy-forensics",
        description="Election fraud forensics - ratio of normalized indicators vs Cauchy(0, 1)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Analyze suspect regions against the rest of the country
  cauchy-forensics analyze --data returns.csv --suspect-regions Donetsk,Luhansk \\
      --interval -1.1,-0.95 --scale 1 --scale 1.26 --json

  # Turnout histogram
  cauchy-forensics histogram --data pecs.csv --bin-width 1 --out turnout.svg

  # Synthetic corpus and power study
  cauchy-forensics simulate --fraud-mode turnout_shift --fraud-magnitude 3 --out corpus.csv
  cauchy-forensics power --fraud-mode turnout_shift --magnitudes 0,1,2,3 --n-seeds 100

Exit codes:
  0  success
  2  data or configuration error
  3  estimation failure
        """
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--version", action="version", version=f"cauchy-forensics {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Run the analysis on a CSV of returns")
    p.add_argument("--data", required=True, help="Input CSV")
    p.add_argument("--suspect-regions", type=_csv_list, required=True, help="Comma-separated regions")
    p.add_argument("--exclude-regions", type=_csv_list, default=None,
                   help="Regions left out of the reference statistics (default: the suspect regions)")
    p.add_argument("--reject", type=_int_list, default=list(DEFAULT_REJECTION_LEVELS),
                   help="Comma-separated rejection counts (default: 1,3,7,9)")
    p.add_argument("--interval", type=_interval, action="append", help="lo,hi (repeatable)")
    p.add_argument("--scale", type=float, action="append", help="Known gamma (repeatable, default: 1)")
    p.add_argument("--out", help="Write the JSON report to this file")
    p.add_argument("--json", "-j", action="store_true", help="JSON report on stdout")
    p.add_argument("--skip-bad", action="store_true", help="Skip malformed rows instead of failing")
    p.add_argument("--config", help="key=value analysis settings file")
    p.add_argument("--variance-divisor", choices=["n-1", "n"], help="Reference variance divisor")
    p.add_argument("--against-all-basis", choices=["ballots_cast", "registered_voters"])
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("histogram", help="Turnout histogram as SVG")
    p.add_argument("--data", required=True, help="Input CSV (constituency or PEC level)")
    p.add_argument("--bin-width", type=float, default=1.0, help="Bin width in percent (default: 1.0)")
    p.add_argument("--out", required=True, help="Output SVG path")
    p.add_argument("--title", help="Chart title")
    p.add_argument("--skip-bad", action="store_true")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("simulate", help="Generate a synthetic corpus")
    _add_scenario_flags(p)
    p.add_argument("--out", help="Output CSV (default: stdout)")
    p.add_argument("--power", action="store_true", help="Run a power study instead")
    _add_power_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("power", help="Detection rate per fraud magnitude")
    _add_scenario_flags(p)
    p.add_argument("--out", help="Output table (default: stdout)")
    _add_power_flags(p)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("reproduce", help="Compare the 2004 dataset against published figures")
    p.add_argument("--data", required=True, help="2004 first-round CSV in the input schema")
    p.add_argument("--json", "-j", action="store_true")
    p.add_argument("--skip-bad", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch and map errors to exit codes"""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_negative_values(argv))

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.func(args)
    except ConfigError as e:
        print(f"Config error: {e}", file=sys.stderr)
        return e.exit_code
    except ForensicsError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        print(f"Unexpected error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return 1


def main():
    """CLI entry point"""
    sys.exit(run())


if __name__ == "__main__":
    main()
