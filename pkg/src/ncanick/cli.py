"""Command line interface.

Inputs are ``un:<n>`` for the builtin presentation of U_n^+, ``bfgkt:<n>``
(``verify`` only) or a presentation file.  Structured reports are line
based::

    REPORT <command>
    PARAM <name> <value>
    DATA <kind> <text>
    CHECK <name> <pass|fail> <detail>
    HASH <name> sha256:<hex>
    SUMMARY <pass|fail> <passed>/<total>

Reports depend only on the presentation, never on how it was named, so a
builtin written out with ``export`` and read back gives the same bytes.
The exit status is 0 iff every check passed, 1 if some check failed and
2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field

from .anick import AnickResolution, verify_complex
from .cohom import counit_matrix, ext_from_resolution
from .presentation import Presentation, PresentationError, format_presentation, parse_presentation
from .quasiiso import verify_quasiiso
from .rewrite import RewriteSystem, check_diamond, complete, core_obstructions, reduce_gb
from .unitary import UnsupportedParameter, build_presentation, verify_un


class UsageError(Exception):
    pass


def _sha(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


@dataclass
class Report:
    command: str
    params: list = field(default_factory=list)
    data: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    hashes: list = field(default_factory=list)
    elapsed: float = 0.0

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), " ".join(str(detail).split()) or "-"))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def _summary(self) -> tuple:
        good = sum(ok for _, ok, _ in self.checks)
        return ("pass" if self.passed else "fail"), good, len(self.checks)

    def structured(self, timing: bool = False) -> str:
        lines = [f"REPORT {self.command}"]
        lines += [f"PARAM {k} {v}" for k, v in self.params]
        lines += [f"DATA {k} {v}" for k, v in self.data]
        lines += [f"CHECK {n} {'pass' if ok else 'fail'} {d}" for n, ok, d in self.checks]
        lines += [f"HASH {k} {v}" for k, v in self.hashes]
        if timing:
            lines.append(f"TIME {self.elapsed:.3f}")
        status, good, total = self._summary()
        lines.append(f"SUMMARY {status} {good}/{total}")
        return "\n".join(lines) + "\n"

    def human(self, timing: bool = True) -> str:
        lines = [f"{self.command}:"]
        lines += [f"  {k} = {v}" for k, v in self.params]
        kind = None
        for k, v in self.data:
            if k != kind:
                lines.append(f"{k}:")
                kind = k
            lines.append(f"  {v}")
        if self.checks:
            lines.append("checks:")
            lines += [f"  [{'pass' if ok else 'FAIL'}] {n}: {d}" for n, ok, d in self.checks]
        lines += [f"{k}: {v}" for k, v in self.hashes]
        status, good, total = self._summary()
        lines.append(f"{status.upper()}: {good} of {total} checks passed")
        if timing:
            lines.append(f"time: {self.elapsed:.2f} s")
        return "\n".join(lines) + "\n"


def parse_target(target: str, allow_bfgkt: bool = False):
    """Return ("un", n), ("bfgkt", n) or ("file", Presentation)."""
    for prefix in ("un", "bfgkt"):
        if target.startswith(prefix + ":"):
            if prefix == "bfgkt" and not allow_bfgkt:
                raise UsageError("bfgkt:<n> is only accepted by verify")
            try:
                n = int(target[len(prefix) + 1:])
            except ValueError:
                raise UsageError(f"bad size in {target!r}") from None
            if n < 2:
                raise UnsupportedParameter(f"n must be at least 2, got {n}")
            return prefix, n
    try:
        with open(target, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {target}: {exc.strerror}") from None
    try:
        return "file", parse_presentation(text)
    except PresentationError as exc:
        raise UsageError(f"{target}: {exc}") from None


def load_presentation(target: str) -> Presentation:
    kind, val = parse_target(target)
    return build_presentation(val) if kind == "un" else val


def _groebner(pres: Presentation, degree_bound: int, rep: Report):
    """Complete and reduce; returns the reduced system or None if uncertified."""
    done = complete(pres.relations, pres.order, degree_bound)
    rep.check("completion.finished", not done.partial,
              f"degree bound {degree_bound}" + (" reached" if done.partial else ""))
    if done.partial:
        return None
    gb = reduce_gb(done)
    rep.check("diamond.basis", check_diamond(gb).passed, f"{len(gb)} rules")
    return gb


def _resolution(pres: Presentation, degree_bound: int, lmax: int, rep: Report) -> AnickResolution:
    gb = _groebner(pres, degree_bound, rep)
    if gb is None:
        raise UsageError(f"no certified Groebner basis within degree bound {degree_bound}")
    return AnickResolution(gb, pres.augmentation, lmax)


def _header(rep: Report, pres: Presentation, args) -> None:
    rep.params.append(("presentation", _sha(format_presentation(pres))))
    for name in ("lmax", "degree_bound"):
        if getattr(args, name, None) is not None:
            rep.params.append((name, getattr(args, name)))


def cmd_gb(args) -> Report:
    pres = load_presentation(args.input)
    rep = Report("gb")
    _header(rep, pres, args)
    a, order = pres.alphabet, pres.order
    diamond = check_diamond(RewriteSystem(order, pres.relations))
    rep.data.append(("input", f"{len(pres.relations)} relations, {len(diamond.entries)} ambiguities, "
                              f"{len(diamond.failures)} unresolved"))
    for e in diamond.failures:
        amb = e.ambiguity
        rep.data.append(("unresolved", f"{amb.kind} rules {amb.rule1 + 1},{amb.rule2 + 1} "
                                       f"at {a.format_word(amb.word(RewriteSystem(order, pres.relations)))}"))
    gb = _groebner(pres, args.degree_bound, rep)
    if gb is not None:
        listing = [g.format(a, order) for g in gb.rules]
        rep.data += [("basis", g) for g in listing]
        core = sorted(core_obstructions(gb), key=order.key)
        rep.data += [("core", a.format_word(w)) for w in core]
        rep.hashes.append(("basis", _sha("\n".join(listing))))
    return rep


def cmd_resolve(args) -> Report:
    pres = load_presentation(args.input)
    rep = Report("resolve")
    _header(rep, pres, args)
    res = _resolution(pres, args.degree_bound, args.lmax, rep)
    a = pres.alphabet
    counts = [len(res.chain_words(ell)) for ell in range(args.lmax + 1)]
    rep.data.append(("chains", " ".join(map(str, counts))))
    table = []
    for ell in range(args.lmax + 1):
        for c in res.chain_words(ell):
            rep.data.append(("chain", f"{ell} {a.format_word(c)}"))
    for ell in range(args.lmax + 1):
        for c in res.chain_words(ell):
            d = res.d_chain(ell, c)
            text = str(d) if ell == 0 else d.format(a)
            line = f"{ell} [{a.format_word(c)}] -> {text}"
            table.append(line)
            rep.data.append(("d", line))
    report = verify_complex(res, args.lmax)
    for kind in ("dd", "split"):
        for ell in sorted({e.degree for e in report.entries if e.check == kind}):
            bad = [e for e in report.entries if e.check == kind and e.degree == ell and not e.ok]
            detail = "ok" if not bad else "fails at " + " ".join(a.format_word(e.chain) for e in bad[:5])
            rep.check(f"{kind}[{ell}]", not bad, detail)
    rep.hashes.append(("differentials", _sha("\n".join(table))))
    return rep


def cmd_cohomology(args) -> Report:
    pres = load_presentation(args.input)
    rep = Report("cohomology")
    _header(rep, pres, args)
    res = _resolution(pres, args.degree_bound, args.lmax + 1, rep)
    dims, table = ext_from_resolution(res, args.lmax)
    rep.data.append(("ext", " ".join(map(str, dims))))
    for ell, (defect, rank) in enumerate(table, 1):
        rep.data.append(("hom", f"{ell} rank {rank} defect {defect}"))
    for ell in range(1, args.lmax + 1):
        prod = counit_matrix(res, ell) @ counit_matrix(res, ell + 1)
        rep.check(f"hom.complex[{ell}]", prod.is_zero(), "Hom(d) o Hom(d) = 0")
    return rep


def cmd_verify(args) -> Report:
    kind, val = parse_target(args.input, allow_bfgkt=True)
    rep = Report("verify")
    if kind == "file":
        raise UsageError("verify takes un:<n> or bfgkt:<n>")
    rep.params.append(("target", f"{kind}:{val}"))
    rep.params.append(("lmax", args.lmax))
    if kind == "un":
        rep.params.append(("degree_bound", args.degree_bound))
        report = verify_un(val, args.lmax, args.degree_bound)
    else:
        report = verify_quasiiso(val, args.lmax, sign=args.sign)
        rep.params.append(("homotopy_sign", f"{report.sign:+d}"))
    for e in report.entries:
        rep.check(f"{e.check}[{e.degree}]", e.ok, e.detail)
    return rep


def cmd_export(args) -> str:
    return format_presentation(load_presentation(args.input))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ncanick", description="Groebner bases, Anick resolutions and Ext of augmented algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, lmax):
        sp.add_argument("input", help="un:<n>, or a presentation file")
        sp.add_argument("--lmax", type=int, default=lmax)
        sp.add_argument("--degree-bound", type=int, default=6)
        sp.add_argument("--format", choices=("human", "structured"), default="human")
        sp.add_argument("--timing", action="store_true", help="add a TIME line to structured output")
        sp.add_argument("--jobs", type=int, default=1, help="worker cap (the pipelines run serially)")
        sp.add_argument("--seed", type=int, default=0, help="accepted for reproducible scripting; unused")

    common(sub.add_parser("gb", help="Groebner basis, obstructions and diamond report"), None)
    common(sub.add_parser("resolve", help="Anick chains and differentials"), 4)
    common(sub.add_parser("cohomology", help="Ext of the trivial module"), 5)
    v = sub.add_parser("verify", help="closed forms (un:<n>) or the four-term comparison (bfgkt:<n>)")
    common(v, 6)
    v.add_argument("--sign", type=int, choices=(1, -1), default=1,
                   help="pinned homotopy sign (bfgkt only)")
    e = sub.add_parser("export", help="print a presentation file")
    e.add_argument("input")
    return p


COMMANDS = {"gb": cmd_gb, "resolve": cmd_resolve, "cohomology": cmd_cohomology, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "export":
            sys.stdout.write(cmd_export(args))
            return 0
        if getattr(args, "lmax", None) is not None and args.lmax < 0:
            raise UsageError("--lmax must be nonnegative")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        start = time.perf_counter()
        rep = COMMANDS[args.command](args)
        rep.elapsed = time.perf_counter() - start
    except (UsageError, UnsupportedParameter) as exc:
        print(f"ncanick: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "structured":
        sys.stdout.write(rep.structured(args.timing))
    else:
        sys.stdout.write(rep.human())
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
