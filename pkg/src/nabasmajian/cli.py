"""Command line front end.

Exit status: 0 when a verification is VERIFIED (and for the other
subcommands on success), 2 for PARTIAL or MISMATCH, 1 for any error.
"""

from __future__ import annotations

import argparse
import sys

from .config import PRESETS, load_config, preset
from .errors import BasmajianError
from .identity import Status, verify
from .proj_linear import anosov_gap_report, classify_pgl2, translation_length
from .surface_group import parse_word


def _load(path, check=True):
    return load_config(path).representation(check=check)


def cmd_verify(args, out):
    rep = _load(args.config)
    if args.geometric:
        from .berkovich import geometric_verify
        report = geometric_verify(rep, args.cutoff, args.window)
    else:
        report = verify(rep, args.cutoff, args.window)
    out.write(report.to_json() if args.format == "json" else report.to_text())
    return 0 if report.status is Status.VERIFIED else 2


def cmd_length(args, out):
    rep = _load(args.config, check=False)
    out.write(f"LENGTH {translation_length(rep.image(parse_word(args.word, rep.rank)))}\n")
    return 0


def cmd_classify(args, out):
    rep = _load(args.config, check=False)
    cls = classify_pgl2(rep.image(parse_word(args.word, rep.rank)))
    out.write(f"CLASS {cls.value}\n")
    return 0


def cmd_gap(args, out):
    rep = _load(args.config, check=False)
    for length, gap in anosov_gap_report(rep, args.max_len):
        out.write(f"GAP len={length} min_gap={gap}\n")
    return 0


def cmd_preset(args, out):
    text = preset(args.name).to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nabasmajian",
        description="Check the non-Archimedean Basmajian identity with exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="compare boundary lengths with the double coset sum")
    p.add_argument("config")
    p.add_argument("--geometric", action="store_true",
                   help="use axis intervals in the Berkovich line (d = 2 only)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cutoff", type=_nonneg, help="longest representative to scan")
    p.add_argument("--window", type=_nonneg, help="trailing all-zero lengths required")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("length", help="translation length of the image of a word")
    p.add_argument("config")
    p.add_argument("word")
    p.set_defaults(func=cmd_length)

    p = sub.add_parser("classify", help="type of the image of a word (d = 2)")
    p.add_argument("config")
    p.add_argument("word")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gap", help="minimal Cartan gap per word length")
    p.add_argument("config")
    p.add_argument("--max-len", type=_nonneg, default=6)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("preset", help="print a built-in configuration")
    p.add_argument("name", choices=sorted(PRESETS))
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except BasmajianError as exc:
        err.write(f"error: {exc.code}: {exc}\n")
    except (OSError, ValueError, ArithmeticError) as exc:
        err.write(f"error: {exc}\n")
    return 1


if __name__ == "__main__":
    sys.exit(main())
