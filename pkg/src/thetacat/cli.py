"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on unparseable
input, 3 when the input parses but the operation does not apply to it.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import presheaf as P
from . import simplex
from . import theta as th
from .shift import collapse_maps, eckmann_hilton
from .skeletal import EMPTY, classify, coface_factor, coface_pullback, skeletal_factorize
from .spectra import (is_kan_spectrum, stable_cell_normalize, stable_map,
                      suspension_spectrum_prefix, window_from_text, window_to_text)
from .suites import run_suite
from .syntax import ParseError, format_globular_sum, parse_cell, parse_map


class DomainError(Exception):
    pass


class _Out:
    """Collects records; lines mode prints key=value records in field order."""

    def __init__(self, fmt):
        self.fmt = fmt
        self.rows = []

    def rec(self, text=None, **fields):
        self.rows.append((text, fields))

    def emit(self, stream):
        for text, row in self.rows:
            if self.fmt == "lines":
                line = "\t".join(f"{k}={v}" for k, v in row.items())
            elif text is not None:
                line = text
            elif list(row) == ["kind", "value"]:
                line = f"{row['kind']}: {row['value']}"
            elif len(row) == 1:
                line = str(next(iter(row.values())))
            else:
                line = " ".join(f"{k}={v}" for k, v in row.items())
            stream.write(line + "\n")


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _fixture(path):
    try:
        return P.from_text(_read(path))
    except ParseError:
        raise
    except (ValueError, KeyError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def _cell_or_map(text):
    return parse_map(text) if "->" in text else parse_cell(text)


fm = th.format_map
fc = th.format_cell


# -- verbs ------------------------------------------------------------------

def _decompose(a, out):
    T = parse_cell(a.cell)
    total = format_globular_sum(th.cell_to_globular_sum(T))
    out.rec(total, cell=fc(T), sum=total)


def _hom(a, out):
    S, T = parse_cell(a.src), parse_cell(a.tgt)
    maps = th.hom(S, T)
    if a.count:
        out.rec(count=len(maps))
    else:
        for f in maps:
            out.rec(map=fm(f))


def _compose(a, out):
    g, f = parse_map(a.g), parse_map(a.f)
    if f.tgt is not g.src:
        raise DomainError(f"target {fc(f.tgt)} of f is not the source {fc(g.src)} of g")
    out.rec(map=fm(th.compose(g, f)))


def _factor(a, out):
    f = parse_map(a.map)
    p, d = skeletal_factorize(f)
    out.rec(kind="class", value=classify(f))
    out.rec(kind="epi", value=fm(p))
    out.rec(kind="mono", value=fm(d))
    for c in coface_factor(d):
        out.rec(kind="coface", value=fm(c))


def _pullback(a, out):
    f, g = parse_map(a.f), parse_map(a.g)
    if f.tgt is not g.tgt:
        raise DomainError("the two maps need a common target")
    try:
        pb = coface_pullback(f, g)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if pb is EMPTY:
        out.rec(kind="pullback", value="empty")
        return
    out.rec(kind="width", value=pb.width)
    if pb.representable:
        out.rec(kind="cell", value=fc(pb.cell))
        out.rec(kind="left", value=fm(pb.proj_left))
        out.rec(kind="right", value=fm(pb.proj_right))
    else:
        out.rec(kind="pullback", value="not representable")
        for R in th.enumerate_cells(f.tgt.degree):
            n = len(pb.pairs(R))
            if n:
                out.rec(kind="elements", value=f"{fc(R)} {n}")


def _shift(a, out):
    x = _cell_or_map(a.target)
    if isinstance(x, th.Cell):
        out.rec(cell=fc(th.shift_cell(x)))
    else:
        out.rec(map=fm(th.shift_map(x)))


def _collapse(a, out):
    T = parse_cell(a.cell)
    if a.p < 1:
        raise DomainError("p must be at least 1")
    data = collapse_maps(a.p, T)
    out.rec(kind="cell", value=fc(data.cell))
    out.rec(kind="c", value=fm(data.c_map))
    out.rec(kind="d", value=fm(data.d_map))
    out.rec(kind="f", value=fm(data.f_map))


def _eh(a, out):
    T = parse_cell(a.cell)
    E = eckmann_hilton(T)
    out.rec(kind="map", value=fm(E))
    out.rec(kind="class", value=classify(E))


def _emit_presheaf(X, out):
    for line in P.to_text(X, all_maps=False).splitlines():
        out.rec(fixture=line)


def _suspend(a, out):
    X = _fixture(a.fixture)
    if X.site.kind != "theta":
        raise DomainError("suspend needs a presheaf on Theta")
    try:
        SX = P.sigma_J(X, a.bound)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    _emit_presheaf(SX, out)


def _omega(a, out):
    Y = _fixture(a.fixture)
    try:
        _emit_presheaf(P.omega(Y), out)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def _smash(a, out):
    X, Y = _fixture(a.left), _fixture(a.right)
    if X.site is not Y.site:
        raise DomainError("smash needs presheaves on the same truncation")
    Z, _ = P.smash(X, Y)
    _emit_presheaf(Z, out)


def _check_mono(a, out):
    T = parse_cell(a.cell)
    N = T.degree if a.bound is None else a.bound
    if N < T.degree:
        raise DomainError(f"bound must be at least {T.degree}")
    B, inc = P.boundary(T, N)
    image = P.sigma_J_map(inc, N + 1)
    ok = P.is_mono(image)
    out.rec(cell=fc(T), mono="yes" if ok else "no")
    return 0 if ok else 1


_SIMPLEX_MAP = re.compile(r"^\s*\[\d+\]\s*->\s*\[\d+\]\s*:\s*\(")


def _stabilize(a, out):
    if _SIMPLEX_MAP.match(a.target):
        try:
            phi = simplex.parse_map(a.target)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        f = stable_map(a.level, phi)
        out.rec(level=f.level, src=f.src_degree, tgt=f.tgt_degree,
                map=f"({' '.join(map(str, f.map.values))})")
    else:
        c = stable_cell_normalize(a.shift, parse_cell(a.target))
        out.rec(shift=c.degree_shift, base=fc(c.base))


def _check_spectrum(a, out):
    if a.sphere is not None:
        S0 = P.representable(P.simplex_cell(0), 2 if a.bound is None else a.bound, True, "simplicial")
        try:
            W = suspension_spectrum_prefix(S0, a.sphere, opbound=a.opbound).window
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        if a.emit:
            for line in window_to_text(W).splitlines():
                out.rec(window=line)
    elif a.fixture:
        try:
            W = window_from_text(_read(a.fixture))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if a.opbound is not None:
            if a.opbound > W.opbound:
                raise DomainError(f"the window only lists operators up to {W.opbound}")
            W.opbound = a.opbound
    else:
        raise DomainError("give a window fixture or --sphere DEPTH")
    ok, report = is_kan_spectrum(W)
    for line in report.lines():
        out.rec(report=line)
    return 0 if ok else 1


def _verify(a, out):
    try:
        outcomes = run_suite(a.suite)
    except KeyError as exc:
        raise DomainError(exc.args[0]) from None
    failed = 0
    for o in outcomes:
        status = "ok" if o.ok else "FAIL"
        if o.ok:
            out.rec(check=o.name, status=status, cases=o.cases)
        else:
            failed += 1
            out.rec(check=o.name, status=status, cases=o.cases, counterexample=o.counterexample)
    return 1 if failed else 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="degree bound for truncations")
    common.add_argument("--opbound", type=int, default=None, help="operator bound for spectrum windows")
    common.add_argument("--format", choices=("text", "lines"), default="text")

    parser = argparse.ArgumentParser(prog="thetacat", description="Computations in the cell category Theta.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    verb("decompose", _decompose, "globular sum of a cell").add_argument("cell")
    p = verb("hom", _hom, "enumerate maps between two cells")
    p.add_argument("src")
    p.add_argument("tgt")
    p.add_argument("--count", action="store_true")
    p = verb("compose", _compose, "composite g . f")
    p.add_argument("g")
    p.add_argument("f")
    verb("factor", _factor, "epi-mono factorization and coface chain").add_argument("map")
    p = verb("pullback", _pullback, "fibre product of two cofaces")
    p.add_argument("f")
    p.add_argument("g")
    verb("shift", _shift, "apply J to a cell or map").add_argument("target")
    p = verb("collapse", _collapse, "K_p of a cell with its maps c, d, f")
    p.add_argument("p", type=int)
    p.add_argument("cell")
    verb("eh", _eh, "the Eckmann-Hilton degeneracy of a cell").add_argument("cell")
    verb("suspend", _suspend, "suspension of a presheaf fixture").add_argument("fixture")
    verb("omega", _omega, "loops of a presheaf fixture").add_argument("fixture")
    p = verb("smash", _smash, "smash product of two presheaf fixtures")
    p.add_argument("left")
    p.add_argument("right")
    verb("check-mono", _check_mono, "is the suspended boundary inclusion of a cell mono").add_argument("cell")
    p = verb("stabilize", _stabilize, "normal form of a stable cell or stable simplex map")
    p.add_argument("target")
    p.add_argument("--shift", type=int, default=0, help="degree shift of a stable cell")
    p.add_argument("--level", type=int, default=0, help="level of a stable simplex map")
    p = verb("check-spectrum", _check_spectrum, "local finiteness of a spectrum window")
    p.add_argument("fixture", nargs="?")
    p.add_argument("--sphere", type=int, default=None, metavar="DEPTH",
                   help="check the sphere spectrum prefix of this depth instead")
    p.add_argument("--emit", action="store_true", help="also print the window")
    verb("verify", _verify, "run an invariant suite").add_argument("suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.bound is not None and args.bound < 0:
        print("error: --bound must be non-negative", file=sys.stderr)
        return 2
    if args.opbound is not None and args.opbound < 0:
        print("error: --opbound must be non-negative", file=sys.stderr)
        return 2
    out = _Out(args.format)
    try:
        status = args.fn(args, out) or 0
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    out.emit(sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
