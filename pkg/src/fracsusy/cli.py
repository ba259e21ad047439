"""Command-line front end.

Every subcommand prints a :class:`~fracsusy.suite.SuiteReport` (or, with
``cyclic --emit-spectrum``, plot-ready CSV) and exits with status 0 when all
checks pass, 1 on a numerical failure and 2 on a usage or configuration
error.  ``--config PATH`` reads ``key = value`` lines using the long flag
names; flags given on the command line win.  When ``FRACSUSY_OUTPUT_DIR`` is
set, a relative ``--output`` path is resolved inside that directory.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

import numpy as np

from . import cyclic as cyc
from . import schrodinger as sch
from . import translational as tr
from .exceptions import DomainError, InadmissibleSpec
from .fsusy import build_hamiltonian, build_supercharges, hierarchy_spectra, verify_fsusy
from .suite import DEFAULT_TOLERANCES, SuiteReport, checks_from_relations, full_suite
from .wh_algebra import CyclicSpec, LinearSpec, TabulatedSpec, build_rep, build_space, structure_table, verify_wk_relations

COMMANDS = ("verify-algebra", "verify-susy", "hierarchy", "translational", "cyclic", "crosscheck", "full-suite")
DEFAULT_K = 3
OUTPUT_DIR_ENV = "FRACSUSY_OUTPUT_DIR"


class ConfigError(Exception):
    pass


# -- parsing helpers ---------------------------------------------------------


def _positive_float(text):
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not val > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return val


def _float_list(text):
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _linear(text):
    vals = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep or key.strip() not in ("a", "b"):
            raise argparse.ArgumentTypeError(f"expected a=<real>,b=<real>, got {text!r}")
        try:
            vals[key.strip()] = float(val)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a=<real>,b=<real>, got {text!r}")
    if set(vals) != {"a", "b"}:
        raise argparse.ArgumentTypeError(f"--linear needs both a and b, got {text!r}")
    return LinearSpec(vals["a"], vals["b"])


def _add_common(p):
    p.add_argument("--config", help="key = value file using the long flag names")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--tol", type=_positive_float, help="algebraic tolerance")


def _add_spec(p):
    p.add_argument("--k", type=int, help=f"order of the grading (default {DEFAULT_K})")
    p.add_argument("--nmax", type=int, default=24, help="highest retained level")
    p.add_argument("--guard", type=int, help="levels excluded below the top (default k)")
    p.add_argument("--shift", type=int, default=0, help="circular relabelling of the supercharges")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--linear", type=_linear, help="linear gaps, e.g. a=2,b=5")
    g.add_argument("--f", type=_float_list, help="constant cyclic gaps, e.g. 2,3,5")
    g.add_argument("--tabulated", help="CSV of s,n,f rows")


def _add_family(p, default=None):
    p.add_argument("--family", choices=("ho", "pt", "morse", "cs"), default=default)
    p.add_argument("--u", type=float, default=2.0)
    p.add_argument("--v", type=float, default=2.0)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--f0", type=float, default=3.0)
    p.add_argument("--f1", type=float, default=1.0)
    p.add_argument("--s", type=int, default=0, help="sector index of V_{k-s}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracsusy", description="Fractional supersymmetric QM verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("verify-algebra", "verify-susy", "hierarchy"):
        p = sub.add_parser(name)
        _add_common(p)
        _add_spec(p)
        if name == "hierarchy":
            p.add_argument("--pair-tol", type=_positive_float, default=1e-8)

    p = sub.add_parser("translational")
    _add_common(p)
    _add_spec(p)
    _add_family(p)

    p = sub.add_parser("cyclic")
    _add_common(p)
    _add_spec(p)
    p.add_argument("--emit-spectrum", action="store_true", help="write the block spectrum as CSV")
    p.add_argument("--blocks", type=int, default=4, help="blocks written by --emit-spectrum")

    p = sub.add_parser("crosscheck")
    _add_common(p)
    _add_family(p, default="morse")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--count", type=int)
    p.add_argument("--x-min", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--mode", choices=("identity", "affine"))
    p.add_argument("--tol-fd", type=_positive_float)
    p.add_argument("--potential-csv", help="sampled x,V file instead of a named family")
    p.add_argument("--reference", type=_float_list, help="reference levels for --potential-csv")

    p = sub.add_parser("full-suite")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nmax", type=int, default=24)
    p.add_argument("--tol-fd", type=_positive_float)
    return parser


def _subparser(parser, command):
    for action in parser._subparsers._group_actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise KeyError(command)


def read_config(path) -> dict[str, str]:
    """``key = value`` pairs; blank lines and ``#`` comments are ignored."""
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            out[key.strip().lstrip("-").replace("-", "_")] = val.strip()
    return out


def _apply_config(sub, cfg: dict[str, str]) -> None:
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    defaults = {}
    for key, val in cfg.items():
        if key not in actions:
            raise ConfigError(f"unknown config key {key!r}")
        action = actions[key]
        if isinstance(action, argparse._StoreTrueAction):
            low = val.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ConfigError(f"config key {key!r} expects a boolean, got {val!r}")
            defaults[key] = low in ("true", "1", "yes")
            continue
        try:
            converted = action.type(val) if action.type else val
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise ConfigError(f"config key {key!r}: {exc}")
        if action.choices is not None and converted not in action.choices:
            raise ConfigError(f"config key {key!r} must be one of {sorted(action.choices)}")
        defaults[key] = converted
    sub.set_defaults(**defaults)


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        _apply_config(_subparser(parser, args.command), read_config(args.config))
        args = parser.parse_args(argv)
    return args


# -- spec resolution -----------------------------------------------------------


def read_tabulated(path, k: int | None) -> TabulatedSpec:
    if not os.path.isfile(path):
        raise ConfigError(f"tabulated file not found: {path}")
    values = {}
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or not "".join(row).strip():
                continue
            try:
                s, n, f = int(row[0]), int(row[1]), float(row[2])
            except (ValueError, IndexError):
                if i == 0:
                    continue
                raise ConfigError(f"{path}: bad row {row!r}; expected s,n,f")
            values[(s, n)] = f
    if not values:
        raise ConfigError(f"{path}: no s,n,f rows")
    file_k = max(s for s, _ in values) + 1
    if k is not None and k != file_k:
        raise ConfigError(f"--tabulated has {file_k} grades but --k is {k}")
    length = 1 + max(n for _, n in values)
    missing = [(s, n) for s in range(file_k) for n in range(length) if (s, n) not in values]
    if missing:
        raise ConfigError(f"{path}: table has no entry for (s, n) = {missing[0]}")
    return TabulatedSpec.from_mapping(values, file_k)


def resolve_spec(args):
    """Return ``(k, spec)`` from the structure flags, checking arity against ``--k``."""
    k = args.k
    given = [n for n in ("linear", "f", "tabulated") if getattr(args, n) is not None]
    if len(given) > 1:
        raise ConfigError(f"choose one structure spec, got {', '.join('--' + n for n in given)}")
    if args.f is not None:
        if k is not None and len(args.f) != k:
            raise ConfigError(f"--f has {len(args.f)} gaps but --k is {k}")
        return len(args.f), CyclicSpec(args.f)
    if args.tabulated is not None:
        spec = read_tabulated(args.tabulated, k)
        return spec.k, spec
    k = DEFAULT_K if k is None else k
    return k, args.linear if args.linear is not None else LinearSpec(0.0, 1.0)


def _config_echo(args) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in ("config", "output", "format"):
            continue
        if isinstance(val, LinearSpec):
            val = {"a": val.a, "b": val.b}
        elif isinstance(val, tuple):
            val = list(val)
        out[key] = val
    return out


def _rep(args):
    k, spec = resolve_spec(args)
    if args.shift < 0:
        raise ConfigError("--shift must be non-negative")
    if args.guard is not None and args.guard < 1:
        raise ConfigError("--guard must be at least 1")
    return build_rep(build_space(k, args.nmax), spec)


# -- commands -------------------------------------------------------------------


def cmd_verify_algebra(args, report):
    rep = _rep(args)
    rel = verify_wk_relations(rep, guard=args.guard, tol=args.tol or DEFAULT_TOLERANCES["algebra"])
    report.extend(checks_from_relations(rel))
    report.extra["interior_levels"] = list(rel.interior_levels)


def cmd_verify_susy(args, report):
    rep = _rep(args)
    ham = build_hamiltonian(rep, shift=args.shift)
    charges = build_supercharges(rep, shift=args.shift)
    rel = verify_fsusy(rep, charges, ham, guard=args.guard, tol=args.tol or DEFAULT_TOLERANCES["susy"])
    report.extend(checks_from_relations(rel))
    report.extra["interior_levels"] = list(rel.interior_levels)


def cmd_hierarchy(args, report):
    rep = _rep(args)
    ham = build_hamiltonian(rep, shift=args.shift)
    hs = hierarchy_spectra(ham, rep, tol=args.pair_tol, guard=args.guard)
    report.add("intertwining", hs.intertwining_residual, args.pair_tol)
    report.extend(checks_from_relations(hs.relations))
    report.extra["hierarchy"] = hs.to_dict()


_FAMILIES = {
    "ho": lambda a: tr.HarmonicOscillator(),
    "pt": lambda a: tr.PoschlTeller(a.u, a.v),
    "morse": lambda a: tr.Morse(a.l),
}


def _family(args):
    try:
        fam = _FAMILIES[args.family](args)
        fam.validate()
    except ValueError as exc:
        raise ConfigError(str(exc))
    return fam


def cmd_translational(args, report):
    tol = args.tol or DEFAULT_TOLERANCES["algebra"]
    if args.family == "cs":
        raise ConfigError("translational needs --family ho, pt or morse")
    if args.family is not None:
        if args.linear is not None:
            raise ConfigError("give either --family or --linear, not both")
        fam = _family(args)
        p = fam.params
        k = DEFAULT_K if args.k is None else args.k
        report.add("translational_si", tr.verify_translational_SI(fam, k), tol)
        report.add("k2_reduction", tr.k2_reduction_residual(fam), DEFAULT_TOLERANCES["exact"])
    else:
        k, p = resolve_spec(args)
        if not isinstance(p, LinearSpec):
            raise ConfigError("translational needs --linear or --family")
    if k < 2:
        raise ConfigError("--k must be at least 2")
    try:
        cls = tr.classify_spectrum(p)
    except InadmissibleSpec as exc:
        raise ConfigError(str(exc))
    report.add("hierarchy_link", tr.sector_shift_check(k, p, args.nmax), tol)
    flow = tr.translational_flow()
    worst = max(abs(tr.si_energies(flow, p, n) - tr.linear_F(n, p)) for n in range(args.nmax + 1))
    report.add("si_energy_accumulation", worst, DEFAULT_TOLERANCES["exact"])
    rep = build_rep(build_space(k, args.nmax), p)
    keep = rep.space.levels <= rep.top
    ref = tr.linear_F(rep.space.levels[keep], p)
    diag = np.real(np.diag(rep.XX))[keep]
    report.add("linear_spectrum", float(np.max(np.abs(diag - ref))) / max(1.0, float(np.max(np.abs(ref)))), tol)
    report.extra["spectrum_class"] = {
        "kind": cls.kind,
        "cutoff": cls.cutoff,
        "degenerate_first_gap": cls.degenerate_first_gap,
    }


def cmd_cyclic(args, report):
    if args.f is None:
        raise ConfigError("cyclic needs --f")
    rep = _rep(args)
    p = rep.spec
    tol = args.tol or DEFAULT_TOLERANCES["algebra"]
    k = rep.k
    table = structure_table(p, k, args.nmax)
    closed = 0.0
    for s in range(k):
        ns = np.arange(s, args.nmax + 1, k)
        closed = max(closed, float(np.max(np.abs(cyc.closed_form_F(p, s, ns) - table[ns, s]))) / max(1.0, float(np.max(table[ns, s]))))
    report.add("cyclic_closed_form_F", closed, tol)
    report.add("cyclic_spectrum", cyc.restricted_spectrum_check(rep, p, guard=args.guard), tol)
    report.add("block_period", cyc.block_period_residual(p), tol)
    if k == 2:
        report.add("k2_cyclic_operator", cyc.k2_operator_check(rep, guard=args.guard), DEFAULT_TOLERANCES["exact"])
    rel = cyc.verify_cyclic_identities(rep, p, guard=args.guard, tol=tol)
    report.extend(checks_from_relations(rel))
    report.extra["notes"] = dict(rel.notes)
    report.extra["strictly_positive"] = p.strictly_positive
    if args.emit_spectrum:
        if args.blocks < 1:
            raise ConfigError("--blocks must be at least 1")
        buf = io.StringIO()
        cyc.write_block_spectrum_csv(p, args.blocks, buf)
        return buf.getvalue()


def _grid(args, model):
    grid = sch.default_grid(model) if args.potential_csv is None else None
    if args.x_min is None and args.x_max is None and args.m is None:
        if grid is None:
            raise ConfigError("--potential-csv needs --x-min, --x-max and --m")
        return grid
    lo = args.x_min if args.x_min is not None else grid.x_min
    hi = args.x_max if args.x_max is not None else grid.x_max
    m = args.m if args.m is not None else grid.m
    return sch.Grid1D(lo, hi, m)


def cmd_crosscheck(args, report):
    tol_fd = args.tol_fd
    if args.potential_csv is not None:
        if args.reference is None:
            raise ConfigError("--potential-csv needs --reference")
        if not os.path.isfile(args.potential_csv):
            raise ConfigError(f"potential file not found: {args.potential_csv}")
        if None in (args.x_min, args.x_max, args.m):
            raise ConfigError("--potential-csv needs --x-min, --x-max and --m")
        grid = sch.Grid1D(args.x_min, args.x_max, args.m)
        V = sch.load_sampled_potential(args.potential_csv)
        ref = np.asarray(args.reference)
        fd = sch.fd_eigenvalues(grid, V, len(ref))
        tol_fd = tol_fd or DEFAULT_TOLERANCES["fd"]
        errs = np.abs(fd - ref)
        report.add("fd_sampled", float(np.max(errs)), tol_fd)
        report.extra["crosscheck"] = {"fd_eigenvalues": fd.tolist(), "reference": ref.tolist(), "errors": errs.tolist()}
        return
    if args.family == "cs":
        if args.s not in (0, 1):
            raise ConfigError("Calogero-Sutherland sector --s must be 0 or 1")
        model = cyc.CSPotentialModel(args.f0, args.f1, args.s)
    else:
        try:
            model = tr.PotentialModel(_family(args), k=args.k, s=args.s)
        except ValueError as exc:
            raise ConfigError(str(exc))
    res = sch.crosscheck_family(model, grid=_grid(args, model), count=args.count, mode=args.mode, tol=tol_fd)
    report.add(f"fd_{args.family}", res.max_error, res.tol)
    report.extra["crosscheck"] = res.to_dict()
    if args.format == "table":
        return report.to_table() + "\n" + res.table() + "\n"


def cmd_full_suite(args, report):
    tols = {}
    if args.tol:
        tols["algebra"] = args.tol
    if args.tol_fd:
        tols["fd"] = args.tol_fd
    full = full_suite(seed=args.seed, n_max=args.nmax, tolerances=tols)
    report.checks = full.checks
    report.config = full.config
    report.extra = full.extra


_DISPATCH = {
    "verify-algebra": cmd_verify_algebra,
    "verify-susy": cmd_verify_susy,
    "hierarchy": cmd_hierarchy,
    "translational": cmd_translational,
    "cyclic": cmd_cyclic,
    "crosscheck": cmd_crosscheck,
    "full-suite": cmd_full_suite,
}


def _output_path(path):
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def run(args) -> tuple[SuiteReport, str]:
    """Execute one parsed command; return the report and the rendered text."""
    report = SuiteReport(command=args.command, config=_config_echo(args))
    custom = _DISPATCH[args.command](args, report)
    text = custom if custom is not None else report.render(args.format)
    return report, text


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except ConfigError as exc:
        print(f"fracsusy: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, text = run(args)
    except (ConfigError, InadmissibleSpec, DomainError) as exc:
        print(f"fracsusy: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"fracsusy: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(_output_path(args.output), "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
