"""Command line front end.

Job files are line oriented::

    # H^2 of the ideal of two coordinate planes
    ring: n=2 m=2
    ideal: X1*Y1, X1*Y2, X2*Y1, X2*Y2
    localize: Y1            # optional
    window: -6 6 -6 6       # optional, umin umax vmin vmax

``special: <name>`` replaces ``ideal:`` to load a registered module.

Exit codes: 0 success, 1 failed check, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .boxmod import GradedModule, module_dim, parse_module
from .cech import (MonomialIdeal, RegistryLookupError, cube, local_cohomology, localize,
                   module_fine_grid, oracle_grid, parse_monomial, render_monomial, special_module)
from .core import Bidegree, RingSpec
from .hilbert import NoRationalSeriesError, eval_series_window, hilbert_series
from .regions import Check, Report, default_window, region_of_box, verify_rigidity, verify_tameness, verify_vanishing
from .weyl import check_generalized_eulerian

SUITES = ("eulerian", "rigidity", "tameness", "vanishing", "oracle", "series")
KEYS = ("ring", "ideal", "special", "localize", "window")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    ring: RingSpec
    ideal: MonomialIdeal | None = None
    special: str | None = None
    localize: tuple[int, ...] | None = None
    window: tuple[int, int, int, int] | None = None

    def effective_window(self) -> tuple[int, int, int, int]:
        return self.window or default_window(self.ring)


def parse_config(text: str) -> JobConfig:
    raw: dict[str, tuple[int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition(":")
        key = key.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key: value', got {line.strip()!r}")
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = (lineno, value.strip())

    ring = None
    if "ring" in raw:
        lineno, value = raw["ring"]
        fields = dict(tok.split("=", 1) for tok in value.split() if "=" in tok)
        try:
            ring = RingSpec(int(fields["n"]), int(fields["m"]))
            if len(value.split()) != 2:
                raise ValueError
        except (KeyError, ValueError):
            raise ConfigError(f"line {lineno}: expected 'ring: n=<int> m=<int>'") from None

    if ("ideal" in raw) == ("special" in raw):
        raise ConfigError("exactly one of 'ideal:' and 'special:' is required")
    ideal = special = None
    if "special" in raw:
        lineno, special = raw["special"]
        try:
            entry = special_module(special)
        except RegistryLookupError as exc:
            raise ConfigError(f"line {lineno}: {exc.args[0]}") from None
        if ring is not None and ring != entry.ring:
            raise ConfigError(f"line {lineno}: {special} lives over n={entry.ring.n} m={entry.ring.m}")
        ring = entry.ring
    else:
        lineno, value = raw["ideal"]
        if ring is None:
            raise ConfigError("'ideal:' needs a 'ring:' line")
        try:
            ideal = MonomialIdeal.parse(ring, value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None

    loc = None
    if "localize" in raw:
        lineno, value = raw["localize"]
        try:
            loc = parse_monomial(ring, value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None

    window = None
    if "window" in raw:
        lineno, value = raw["window"]
        try:
            umin, umax, vmin, vmax = (int(x) for x in value.split())
        except ValueError:
            raise ConfigError(f"line {lineno}: expected 'window: umin umax vmin vmax'") from None
        if umin > umax or vmin > vmax:
            raise ConfigError(f"line {lineno}: window bounds out of order")
        window = (umin, umax, vmin, vmax)
    return JobConfig(ring, ideal, special, loc, window)


def render_config(cfg: JobConfig) -> str:
    lines = [f"ring: n={cfg.ring.n} m={cfg.ring.m}"]
    if cfg.special is not None:
        lines.append(f"special: {cfg.special}")
    else:
        lines.append(f"ideal: {cfg.ideal.render()}")
    if cfg.localize is not None:
        lines.append(f"localize: {render_monomial(cfg.ring, cfg.localize)}")
    if cfg.window is not None:
        lines.append("window: " + " ".join(str(x) for x in cfg.window))
    return "\n".join(lines) + "\n"


def module_for(cfg: JobConfig, degree: int) -> GradedModule:
    if cfg.special is not None:
        entry = special_module(cfg.special)
        if degree != entry.degree:
            raise ConfigError(f"{entry.name} is only registered in degree {entry.degree}")
        M = entry.module
    else:
        if not 0 <= degree <= cfg.ring.nvars:
            raise ConfigError(f"degree {degree} outside 0..{cfg.ring.nvars}")
        M = local_cohomology(cfg.ideal, degree)
    if cfg.localize is not None:
        M = localize(M, cfg.localize)
    return M


def modules_for(cfg: JobConfig) -> dict[int, GradedModule]:
    if cfg.special is not None:
        d = special_module(cfg.special).degree
        return {d: module_for(cfg, d)}
    return {i: module_for(cfg, i) for i in range(cfg.ring.nvars + 1)}


# --------------------------------------------------------------------------
# output


def describe_module(M: GradedModule) -> list[str]:
    if M.is_zero:
        return ["ZERO MODULE"]
    out = []
    for box, k in M.summands:
        line = box.render(with_shift=box.shift != Bidegree(0, 0)) + f" mult={k}"
        if box.shift == Bidegree(0, 0):
            line += f" region={region_of_box(box)}"
        out.append(line)
    return out


def window_table(M: GradedModule, window) -> str:
    umin, umax, vmin, vmax = window
    rows = ["u\tv\tdim"]
    for u in range(umin, umax + 1):
        for v in range(vmin, vmax + 1):
            rows.append(f"{u}\t{v}\t{module_dim(M, Bidegree(u, v))}")
    return "\n".join(rows) + "\n"


def run_suite(name: str, M: GradedModule, window, ideal: MonomialIdeal | None = None, degree=None,
              oracle_radius: int = 2) -> Report:
    ring = M.ring
    report = Report()
    tag = f"[H^{degree}]" if degree is not None else "[module]"
    if name == "eulerian":
        er = check_generalized_eulerian(M, window, max_power=4, truncate=3)
        report.checks.append(Check(f"eulerian {tag}", er.ok, [f for f, _, _ in er.failures],
                                   detail=f"monomials={er.checked} max_a={er.max_power}"))
    elif name == "rigidity":
        sub = verify_rigidity(M, default_window(ring))
        report.checks.append(Check(f"rigidity {tag}", sub.ok, [c.line() for c in sub.checks if not c.passed]))
    elif name == "tameness":
        sub = verify_tameness(M, default_window(ring))
        c = sub.checks[0]
        report.checks.append(Check(f"tameness {tag}", c.passed, c.witnesses, c.detail))
    elif name == "vanishing":
        sub = verify_vanishing(M, (-2, 2, -2, 2))
        report.checks.append(Check(f"vanishing {tag}", sub.ok, [w for c in sub.checks for w in c.witnesses]))
    elif name == "oracle":
        if ideal is None or degree is None:
            report.checks.append(Check(f"oracle {tag}", True, detail="skipped (no ideal)"))
        else:
            pts = cube(ring.nvars, -oracle_radius, oracle_radius)
            want = oracle_grid(ideal, pts)[:, degree]
            got = module_fine_grid(M, pts)
            bad = [tuple(int(x) for x in pts[r]) for r in (want != got).nonzero()[0][:5]]
            report.checks.append(Check(f"oracle {tag}", not bad, bad, detail=f"points={len(pts)}"))
    elif name == "series":
        try:
            S = hilbert_series(M)
        except NoRationalSeriesError:
            report.checks.append(Check(f"series {tag}", True, detail="skipped (Laurent variables)"))
        else:
            table = eval_series_window(S, window)
            bad = [d for d, c in table.items() if c != module_dim(M, Bidegree(*d))]
            report.checks.append(Check(f"series {tag}", not bad, bad))
    else:
        raise ConfigError(f"unknown suite {name!r}")
    return report


# --------------------------------------------------------------------------


def _load(args) -> tuple[JobConfig | None, GradedModule | None]:
    cfg = M = None
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
    if getattr(args, "module", None):
        with open(args.module) as fh:
            try:
                M = parse_module(fh.read())
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
    if cfg is None and M is None:
        raise ConfigError("need --config or --module")
    return cfg, M


def _window(cfg, M):
    if cfg is not None:
        return cfg.effective_window()
    return default_window(M.ring)


def cmd_compute(args, out) -> int:
    cfg, M = _load(args)
    if M is None:
        M = module_for(cfg, args.degree)
    out.write("\n".join(describe_module(M)) + "\n")
    return 0


def cmd_window(args, out) -> int:
    cfg, M = _load(args)
    if M is None:
        M = module_for(cfg, args.degree)
    out.write(window_table(M, _window(cfg, M)))
    return 0


def cmd_series(args, out) -> int:
    cfg, M = _load(args)
    if M is None:
        M = module_for(cfg, args.degree)
    try:
        S = hilbert_series(M)
    except NoRationalSeriesError as exc:
        out.write(f"ERROR: {exc}\n")
        return 2
    semantics = "rational function" if args.normalize else S.semantics
    out.write(f"# semantics: {semantics}\n")
    out.write(S.render(normalize=args.normalize) + "\n")
    return 0


def cmd_check(args, out) -> int:
    cfg, M = _load(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    if args.suite != "all" and args.suite not in SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}")
    if M is not None:
        targets = [(None, M)]
        ideal = None
    else:
        targets = sorted(modules_for(cfg).items())
        ideal = cfg.ideal if cfg.localize is None else None
    window = _window(cfg, M if M is not None else targets[0][1])
    report = Report()
    for suite in suites:
        for degree, mod in targets:
            report.extend(run_suite(suite, mod, window, ideal, degree))
    out.write("\n".join(report.lines()) + "\n")
    return 0 if report.ok else 1


def cmd_special(args, out) -> int:
    try:
        entry = special_module(args.name)
    except RegistryLookupError as exc:
        raise ConfigError(exc.args[0]) from None
    out.write(f"name: {entry.name}\nring: n={entry.ring.n} m={entry.ring.m}\ndegree: {entry.degree}\n")
    out.write(f"provenance: {entry.provenance}\n")
    out.write("\n".join(describe_module(entry.module)) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bigraded-lc", description="Bigraded local cohomology of monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, degree=True):
        sp.add_argument("--config", help="job file")
        sp.add_argument("--module", help="module file in box serialization (overrides the computed module)")
        if degree:
            sp.add_argument("--degree", type=int, default=None, help="cohomological degree i")

    sp = sub.add_parser("compute", help="print H^i_I(R) as boxes")
    common(sp)
    sp.set_defaults(func=cmd_compute)
    sp = sub.add_parser("window", help="TSV of dim M_(u,v) over the window")
    common(sp)
    sp.set_defaults(func=cmd_window)
    sp = sub.add_parser("series", help="bigraded Hilbert series")
    common(sp)
    sp.add_argument("--normalize", action="store_true", help="rewrite over (1-t1)^n (1-t2)^m")
    sp.set_defaults(func=cmd_series)
    sp = sub.add_parser("check", help="run an invariant suite")
    common(sp, degree=False)
    sp.add_argument("--suite", default="all", help="one of " + ", ".join(SUITES + ("all",)))
    sp.set_defaults(func=cmd_check)
    sp = sub.add_parser("special", help="show a registered module")
    sp.add_argument("--name", required=True)
    sp.set_defaults(func=cmd_special)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command in ("compute", "window", "series") and args.module is None and args.degree is None:
            raise ConfigError("--degree is required")
        return args.func(args, out)
    except (ConfigError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
