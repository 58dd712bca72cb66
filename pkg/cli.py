"""Command-line surface: build, simulate, search, decode."""
import argparse
import logging
import sys
from typing import List, Optional

from config import DEFAULT_SEED
from exceptions import QCodesError, UsageError
from models import ChannelKind, ChannelSpec, CodeStorage, DecoderKind
from simulation_service import SimulationService
from stabilizer_codes import build_code, check_record, search_codes, to_record, to_spec

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(UsageError.exit_code, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        CodeStorage.write_text(out, text)
    else:
        print(text)


def _load_code(path: str, max_enum: Optional[int] = None):
    spec, record = CodeStorage.load_code_file(path)
    code = build_code(spec, max_enum=max_enum)
    check_record(code, record)
    return code


def cmd_build(args) -> int:
    spec = CodeStorage.load_spec(args.spec)
    if args.omega is not None:
        spec.options.omega = args.omega
    code = build_code(spec, max_enum=args.max_enum)
    record = to_record(code)
    print(record.to_report())
    if args.out:
        CodeStorage.write_text(args.out, CodeStorage.dump_code(spec, record))
    return 0


def cmd_simulate(args) -> int:
    code = _load_code(args.spec, args.max_enum)
    service = SimulationService(code, DecoderKind(args.decoder))
    if args.exhaustive_weight is not None:
        report = service.run_exhaustive(args.exhaustive_weight)
    else:
        if args.rate is not None:
            channel = ChannelSpec(kind=ChannelKind.IID, rate=args.rate, seed=args.seed)
        else:
            weight = args.weight if args.weight is not None else max(1, (code.d - 1) // 2)
            channel = ChannelSpec(kind=ChannelKind.FIXED_WEIGHT, weight=weight, seed=args.seed)
        report = service.run_trials(channel, args.trials)
    _emit(report.render(), args.out)
    return 0


def cmd_search(args) -> int:
    codes = search_codes(args.p, args.m, args.n, args.k, args.budget, seed=args.seed, max_enum=args.max_enum)
    lines = [f"search [[{args.n},{args.k}]]_{args.p ** args.m} budget={args.budget} seed={args.seed}",
             f"{'rank':>4}  {'code':<16} {'distance':<16} construction"]
    for rank, code in enumerate(codes, 1):
        construction = (f"cyclic zeros {list(code.cyclic.zeros)}" if code.cyclic is not None
                        else "rows " + " ".join(code.classical.rows_as_strings()))
        lines.append(f"{rank:>4}  {code.label:<16} {code.distance_kind.value:<16} {construction}")
    if not codes:
        lines.append("(no codes found)")
    print("\n".join(lines))
    if codes and args.out:
        CodeStorage.write_text(args.out, CodeStorage.dump_spec(to_spec(codes[0])))
    return 0


def cmd_decode(args) -> int:
    code = _load_code(args.spec, args.max_enum)
    service = SimulationService(code, DecoderKind(args.decoder))
    for transcript in service.decode_strings(args.error):
        print(transcript.to_line())
    return 0


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="qcodes", description="Qudit stabilizer codes from classical codes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    build = sub.add_parser("build", help="build and verify a code from a spec file")
    build.add_argument("--spec", required=True)
    build.add_argument("--out")
    build.add_argument("--max-enum", type=int, default=None)
    build.add_argument("--omega", type=int, default=None, help="integer representation of ω in GF(p^2)")
    build.set_defaults(handler=cmd_build)

    simulate = sub.add_parser("simulate", help="run decoding trials on a built code")
    simulate.add_argument("--spec", required=True, help="code file written by build --out")
    simulate.add_argument("--trials", type=int, default=1000)
    simulate.add_argument("--seed", type=int, default=DEFAULT_SEED)
    channel = simulate.add_mutually_exclusive_group()
    channel.add_argument("--weight", type=int)
    channel.add_argument("--rate", type=float)
    simulate.add_argument("--exhaustive-weight", type=int)
    simulate.add_argument("--decoder", choices=[k.value for k in DecoderKind], default=DecoderKind.TABLE.value)
    simulate.add_argument("--out")
    simulate.add_argument("--max-enum", type=int, default=None)
    simulate.set_defaults(handler=cmd_simulate)

    search = sub.add_parser("search", help="search Hermitian self-orthogonal codes")
    search.add_argument("--p", type=int, required=True)
    search.add_argument("--m", type=int, default=1)
    search.add_argument("--n", type=int, required=True)
    search.add_argument("--k", type=int, required=True)
    search.add_argument("--budget", type=int, default=200)
    search.add_argument("--seed", type=int, default=DEFAULT_SEED)
    search.add_argument("--out")
    search.add_argument("--max-enum", type=int, default=None)
    search.set_defaults(handler=cmd_search)

    decode = sub.add_parser("decode", help="print decode transcripts for given errors")
    decode.add_argument("--spec", required=True, help="code file written by build --out")
    decode.add_argument("--error", action="append", required=True, help="error as a|b digit strings")
    decode.add_argument("--decoder", choices=[k.value for k in DecoderKind], default=DecoderKind.TABLE.value)
    decode.add_argument("--max-enum", type=int, default=None)
    decode.set_defaults(handler=cmd_decode)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except QCodesError as e:
        logger.error(f"Команда {args.command} завершилась с ошибкой: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        # pydantic validation of command-line values
        logger.error(f"Некорректные параметры: {e}")
        print(f"error: {e}", file=sys.stderr)
        return UsageError.exit_code
