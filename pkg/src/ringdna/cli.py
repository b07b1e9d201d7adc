"""Command-line interface.

Exit codes: 0 success, 1 constraint violation found by ``check``, 2 invalid
input, 3 span larger than the configured guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import audit, codes as cb, dna, kernels, psi_map
from .ring import ELEMENTS, RingError, parse_element

log = logging.getLogger("ringdna")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- FASTA -------------------------------------------------------------------


def write_fasta(path: Path | None, seqs: list[str], tag: str) -> None:
    lines = "".join(f">cw_{i}{tag}\n{s}\n" for i, s in enumerate(seqs))
    data = lines.encode("ascii")
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        path.write_bytes(data)


def read_fasta(path: Path) -> list[tuple[str, str]]:
    """Parse FASTA; sequences may span lines. Raises InputError with a line number."""
    records: list[tuple[str, list[str]]] = []
    length = None
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            records.append((line[1:], []))
            continue
        if not records:
            raise InputError(f"{path}:{lineno}: sequence data before the first header")
        try:
            records[-1][1].append(dna.normalize(line))
        except dna.DnaError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
    out = []
    for header, parts in records:
        seq = "".join(parts)
        if not seq:
            raise InputError(f"{path}: record {header!r} has no sequence")
        if length is None:
            length = len(seq)
        elif len(seq) != length:
            raise InputError(f"{path}: record {header!r} has length {len(seq)}, expected {length}")
        out.append((header, seq))
    if not out:
        raise InputError(f"{path}: no FASTA records")
    return out


# -- helpers -----------------------------------------------------------------


def _element(text: str):
    try:
        return parse_element(text)
    except RingError as exc:
        raise InputError(str(exc)) from None


def _generator(args) -> cb.GeneratorMatrix:
    if getattr(args, "matrix", None):
        try:
            return cb.GeneratorMatrix.from_text(Path(args.matrix).read_text())
        except OSError as exc:
            raise InputError(f"cannot read matrix file: {exc}") from None
        except RingError as exc:
            raise InputError(f"{args.matrix}: {exc}") from None
    if args.m is None or args.z is None:
        raise InputError("give --m and --z, or --matrix FILE")
    if args.m < 1:
        raise InputError(f"m must be >= 1, got {args.m}")
    z = _element(args.z)
    try:
        return cb.rm_generator(args.m, z)
    except RingError as exc:
        raise InputError(str(exc)) from None


def _constraints(text: str) -> tuple[str, ...]:
    names = tuple(t.strip().replace("-", "_") for t in text.split(",") if t.strip())
    for n in names:
        if n not in audit.ALL_CONSTRAINTS:
            raise InputError(f"unknown constraint {n!r}; choose from {', '.join(audit.ALL_CONSTRAINTS)}")
    return names


def _emit(text: str, output: str | None) -> None:
    if output:
        try:
            Path(output).write_text(text, encoding="ascii")
        except OSError as exc:
            raise InputError(f"cannot write {output}: {exc}") from None
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------


def cmd_table(args) -> int:
    if args.format == "json":
        rows = [{"element": str(x), "dna": psi_map.FORWARD[x.index]} for x in ELEMENTS]
        _emit(json.dumps(rows, indent=2) + "\n", None)
    else:
        _emit("".join(f"{x}\t{psi_map.FORWARD[x.index]}\n" for x in ELEMENTS), None)
    return EXIT_OK


def cmd_rm(args) -> int:
    g = _generator(args)
    _emit(g.to_text(), args.output)
    return EXIT_OK


def _render_text(report: audit.CodeReport) -> str:
    label = "exact" if report.distance_exact else "upper bound, non-exhaustive"
    lines = [
        f"code        R(1,{report.m}) z={report.z}" if report.m is not None else "code        matrix",
        f"n_ring      {report.n_ring}",
        f"n_dna       {report.n_dna}",
        f"size        {report.size}",
        f"d_gau       {report.d_gau} ({label})",
        f"d_hamming   {report.d_hamming} ({label})",
        f"rate        {report.rate.text} ({report.rate.exact})",
        f"rel. dist   {report.relative_distance.text} ({report.relative_distance.exact})",
    ]
    for name, v in report.constraints.items():
        state = {True: "yes", False: "no", None: "undecided"}[v.satisfied]
        lines.append(f"{name:<22s}{state} [{v.method}]")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    g = _generator(args)
    if args.distance == "sample" and not args.sample_pairs:
        raise InputError("--distance sample needs --sample-pairs N")
    report = audit.full_report(
        g, distance=args.distance, pairs=args.sample_pairs or 1_000_000, seed=args.seed,
        slow=args.slow, k=args.k, constraints=_constraints(args.constraints),
        pair_method=args.method, limit=args.limit, threads=args.threads,
    )
    if args.format == "json":
        text = json.dumps(report.to_json(), indent=2) + "\n"
    else:
        text = _render_text(report)
    _emit(text, args.output)
    return EXIT_OK


def cmd_export(args) -> int:
    g = _generator(args)
    code = cb.span(g, args.limit)
    seqs = dna.decode(psi_map.image_codes(code.words))
    tag = f" m={g.provenance[0]} z={g.provenance[1]}" if g.provenance else ""
    try:
        write_fasta(Path(args.output) if args.output else None, seqs, tag)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc}") from None
    return EXIT_OK


def cmd_check(args) -> int:
    records = read_fasta(Path(args.fasta))
    code = audit.DnaCode.from_strings([s for _, s in records])
    if args.d is not None and args.d < 1:
        raise InputError("--d must be >= 1")
    names = _constraints(args.constraints)
    pair_names = {"reversible", "reversible_complement"} & set(names)
    if pair_names and args.d is None and len(code) < 2:
        raise InputError("a single codeword has no minimum distance; give --d")
    method = args.method
    uses_closure = method == "closure" or (method == "auto" and len(code) > audit.EXHAUSTIVE_PAIR_GATE)
    if uses_closure and pair_names and args.d is not None and len(code) >= 2:
        # an explicit threshold needs the file's own minimum distance
        code.minimum_distance(threads=args.threads)
    verdicts = {}
    for name in names:
        if name == "gc":
            verdicts[name] = audit.check_gc_constraint(code)
        elif name == "homopolymer":
            verdicts[name] = audit.check_homopolymer(code, args.k)
        elif name == "reversible":
            verdicts[name] = audit.check_reversible(code, args.d, method, threads=args.threads)
        else:
            verdicts[name] = audit.check_reversible_complement(code, args.d, method, threads=args.threads)
    summary = {
        "file": str(args.fasta),
        "size": len(code),
        "length": code.length,
        "constraints": {k: v.satisfied for k, v in verdicts.items()},
        "details": {k: v.as_dict() for k, v in verdicts.items()},
    }
    if args.format == "json":
        _emit(json.dumps(summary, indent=2) + "\n", None)
    else:
        out = [f"{len(code)} sequences of length {code.length}"]
        for name, v in verdicts.items():
            state = {True: "pass", False: "FAIL", None: "undecided"}[v.satisfied]
            out.append(f"{name:<22s}{state} [{v.method}] {json.dumps(v.evidence)}")
        _emit("\n".join(out) + "\n", None)
    return EXIT_OK if all(v.satisfied for v in verdicts.values()) else EXIT_VIOLATION


def cmd_map(args) -> int:
    tokens = [t for tok in args.tokens for t in tok.split()]
    out = []
    for tok in tokens:
        if args.direction == "ring-to-dna":
            out.append(psi_map.psi(_element(tok)))
        else:
            if len(tok) != 3:
                raise InputError(f"token {tok!r} is not a DNA triple")
            try:
                out.append(str(psi_map.psi_inv(tok)))
            except dna.DnaError as exc:
                raise InputError(f"token {tok!r}: {exc}") from None
    _emit(" ".join(out) + "\n", None)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="Reed-Muller order parameter (length 2^m)")
    p.add_argument("--z", help="generator element as 'abc'")
    p.add_argument("--matrix", help="generator matrix file, one row per line")
    p.add_argument("--limit", type=int, default=cb.DEFAULT_LIMIT, help="span size guard")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringdna", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print the ring-to-DNA table")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("rm", help="print a Reed-Muller type generator matrix")
    _code_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_rm)

    p = sub.add_parser("analyze", help="parameters and constraint verdicts of a code")
    _code_args(p)
    p.add_argument("--distance", choices=("exact", "sample"), default="exact")
    p.add_argument("--sample-pairs", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slow", action="store_true", help="allow exhaustive sweeps above 2^16 codewords")
    p.add_argument("--constraints", default=",".join(audit.ALL_CONSTRAINTS))
    p.add_argument("-k", type=int, default=2, help="homopolymer run-length bound")
    p.add_argument("--method", choices=("auto", "exhaustive", "closure"), default="auto")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export", help="write the DNA image of a code as FASTA")
    _code_args(p)
    p.add_argument("-o", "--output", help="FASTA path (stdout if omitted)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("check", help="audit the DNA code in a FASTA file")
    p.add_argument("fasta")
    p.add_argument("--d", type=int, help="distance threshold (default: the file's own minimum)")
    p.add_argument("--constraints", default=",".join(audit.ALL_CONSTRAINTS))
    p.add_argument("-k", type=int, default=2, help="homopolymer run-length bound")
    p.add_argument("--method", choices=("auto", "exhaustive", "closure"), default="auto")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("map", help="convert between ring elements and DNA triples")
    p.add_argument("direction", choices=("ring-to-dna", "dna-to-ring"))
    p.add_argument("tokens", nargs="+")
    p.set_defaults(func=cmd_map)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    log.debug("kernel backend: %s", kernels.backend_name())
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except cb.SpanTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
