"""Command-line interface.

Subcommands: solve, spectrum, mathieu, oracle, sweep and reproduce. Data
goes to stdout or to the path given with --out (a directory for
reproduce, which emits one or more files per target); diagnostics go to
stderr. Exit status is 0 on success, 1 on a usage error and 2 when a
computation fails or a configuration violates a precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .analysis import convergence_sweep, periodic_grid, relative_profile
from .eigen import excited_states, ground_state, spectrum
from .hamiltonian import QuadratureSpec
from .model import BasisSpec, Interaction, RingGeometry
from .reference import (
    CaseSpec,
    MathieuQuery,
    harmonic_benchmark_case,
    harmonic_energy,
    mathieu_char,
    mathieu_profile,
    quasi_exact_coulomb_case,
    relative_spectrum,
)

REPRODUCE_TARGETS = ("table1", "table2", "fig1", "harmonic-energies", "sweep")


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs shared by the computing subcommands."""

    geometry: RingGeometry
    interaction: Interaction
    basis: BasisSpec
    quad: QuadratureSpec
    eigen_count: int
    fmt: str
    out: str | None


def _config(args: argparse.Namespace) -> RunConfig:
    if args.interaction == "harmonic":
        if args.omega is None:
            raise ValueError("--omega is required for the harmonic interaction")
        interaction = Interaction.harmonic(args.omega)
    else:
        if args.omega is not None:
            raise ValueError("--omega only applies to the harmonic interaction")
        interaction = Interaction.coulomb()
    geometry = RingGeometry(args.r1, args.r2)
    if interaction.kind == "coulomb" and geometry.r1 == geometry.r2:
        raise ValueError("coulomb interaction needs r1 < r2: the integrand 1/d is singular")
    count = getattr(args, "k", 1)
    if count < 1:
        raise ValueError("--k must be at least 1")
    return RunConfig(
        geometry=geometry,
        interaction=interaction,
        basis=BasisSpec(getattr(args, "n", 14)),
        quad=QuadratureSpec(points=args.quad),
        eigen_count=count,
        fmt=args.format,
        out=args.out,
    )


def _cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _emit(records: list[dict], columns: list[str], fmt: str, out: str | None) -> None:
    if fmt == "json":
        payload = json.dumps([{c: r[c] for c in columns} for r in records], indent=2) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for record in records:
            writer.writerow([_cell(record[c]) for c in columns])
        payload = buffer.getvalue()
    if out is None:
        sys.stdout.write(payload)
    else:
        with open(out, "w") as handle:
            handle.write(payload)


def _cmd_solve(args: argparse.Namespace) -> None:
    cfg = _config(args)
    states = excited_states(cfg.basis, cfg.geometry, cfg.interaction, cfg.quad, cfg.eigen_count)
    records = [
        {"state": i, "energy": st.energy, "k": mode.m, "l": mode.n, "c": st.coeffs[mode]}
        for i, st in enumerate(states)
        for mode in cfg.basis.modes()
    ]
    _emit(records, ["state", "energy", "k", "l", "c"], cfg.fmt, cfg.out)


def _cmd_spectrum(args: argparse.Namespace) -> None:
    cfg = _config(args)
    values = spectrum(cfg.basis, cfg.geometry, cfg.interaction, cfg.quad, count=cfg.eigen_count)
    records = [{"index": i, "energy": float(e)} for i, e in enumerate(values)]
    _emit(records, ["index", "energy"], cfg.fmt, cfg.out)


def _cmd_mathieu(args: argparse.Namespace) -> None:
    query = MathieuQuery(q=args.q, branch=args.branch, order=args.order, truncation=args.trunc)
    if args.profile_points:
        profile = mathieu_profile(query, periodic_grid(args.profile_points))
        records = [
            {"omega": float(w), "value": float(v), "label": profile.label}
            for w, v in zip(profile.omega, profile.values)
        ]
        _emit(records, ["omega", "value", "label"], args.format, args.out)
    else:
        records = [{"branch": args.branch, "order": args.order, "q": args.q, "value": mathieu_char(query)}]
        _emit(records, ["branch", "order", "q", "value"], args.format, args.out)


def _cmd_oracle(args: argparse.Namespace) -> None:
    cfg = _config(args)
    levels = relative_spectrum(cfg.geometry, cfg.interaction, cfg.quad, m_modes=args.modes)
    records = [
        {"index": i, "parity": parity, "energy": energy}
        for i, (energy, parity) in enumerate(levels[: args.count])
    ]
    _emit(records, ["index", "parity", "energy"], cfg.fmt, cfg.out)


def _sweep_records(case: CaseSpec, n_list: list[int], quad: QuadratureSpec) -> list[dict]:
    rows = convergence_sweep(case, n_list, quad)
    return [
        {"N": r.n_trunc, "energy": r.energy, "delta": r.delta_prev, "seconds": r.wall_time}
        for r in rows
    ]


def _cmd_sweep(args: argparse.Namespace) -> None:
    cfg = _config(args)
    n_list = [int(part) for part in args.n_list.split(",") if part.strip()]
    case = CaseSpec(cfg.geometry, cfg.interaction, exact_energy=None, label="custom")
    _emit(_sweep_records(case, n_list, cfg.quad), ["N", "energy", "delta", "seconds"], cfg.fmt, cfg.out)


def _reproduce_files(target: str, quad: QuadratureSpec, fmt: str) -> dict[str, tuple[list[dict], list[str]]]:
    """Records and columns for each file a reproduce target emits."""
    if target == "table1":
        case = quasi_exact_coulomb_case()
        state = ground_state(BasisSpec(10), case.geometry, case.interaction, quad)
        coeff_rows = [{"k": k, "l": -k, "c": c} for k, c in state.zero_sector()]
        energy_rows = [
            {
                "energy": state.energy,
                "reference": case.exact_energy,
                "abs_error": abs(state.energy - case.exact_energy),
            }
        ]
        return {
            "table1_coefficients": (coeff_rows, ["k", "l", "c"]),
            "table1_energy": (energy_rows, ["energy", "reference", "abs_error"]),
        }
    if target == "table2":
        case = harmonic_benchmark_case()
        state = ground_state(BasisSpec(14), case.geometry, case.interaction, quad)
        coeff_rows = [{"k": k, "l": -k, "c": c} for k, c in state.zero_sector()]
        return {"table2_coefficients": (coeff_rows, ["k", "l", "c"])}
    if target == "fig1":
        case = harmonic_benchmark_case()
        g, w = case.geometry, case.interaction.omega
        q = -4.0 * g.r1 * g.r2 * w * w * g.sigma_sq
        grid = periodic_grid(512)
        reference = mathieu_profile(MathieuQuery(q=q, branch="odd", order=2), grid)
        state = ground_state(BasisSpec(14), g, case.interaction, quad)
        numeric = relative_profile(state, grid)
        rows = [
            {"omega": float(x), "value": float(v), "label": prof.label}
            for prof in (reference, numeric)
            for x, v in zip(prof.omega, prof.values)
        ]
        return {"fig1_profiles": (rows, ["omega", "value", "label"])}
    if target == "harmonic-energies":
        case = harmonic_benchmark_case()
        g, w = case.geometry, case.interaction.omega
        constant = 0.5 * w * w * (g.r1**2 + g.r2**2)
        rows = []
        for label, energy in (
            ("mathieu-odd-lowest", harmonic_energy(g, w, "odd", 0)),
            ("mathieu-even-lowest", harmonic_energy(g, w, "even", 0)),
            ("matrix-ground-n16", ground_state(BasisSpec(16), g, case.interaction, quad).energy),
        ):
            rows.append(
                {"label": label, "energy": energy, "energy_minus_constant": energy - constant}
            )
        return {"harmonic_energies": (rows, ["label", "energy", "energy_minus_constant"])}
    if target == "sweep":
        case = quasi_exact_coulomb_case()
        rows = _sweep_records(case, [2, 4, 6, 8, 10], quad)
        return {"sweep": (rows, ["N", "energy", "delta", "seconds"])}
    raise ValueError(f"unknown reproduce target {target!r}")


def _cmd_reproduce(args: argparse.Namespace) -> None:
    quad = QuadratureSpec(points=args.quad)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    extension = "json" if args.format == "json" else "csv"
    for stem, (records, columns) in _reproduce_files(args.target, quad, args.format).items():
        path = os.path.join(out_dir, f"{stem}.{extension}")
        _emit(records, columns, args.format, path)
        print(f"wrote {path}", file=sys.stderr)


def _add_common(parser: argparse.ArgumentParser, with_basis: bool = True) -> None:
    parser.add_argument("--interaction", choices=["coulomb", "harmonic"], default="coulomb",
                        help="pair interaction (default: coulomb)")
    parser.add_argument("--omega", type=float, default=None,
                        help="harmonic spring frequency (harmonic only)")
    parser.add_argument("--r1", type=float, default=1.0, help="inner ring radius (default: 1)")
    parser.add_argument("--r2", type=float, default=2.0, help="outer ring radius (default: 2)")
    if with_basis:
        parser.add_argument("--n", type=int, default=14,
                            help="even truncation order N, modes -N/2..N/2 (default: 14)")
        parser.add_argument("--k", type=int, default=1,
                            help="number of lowest eigenstates (default: 1)")


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--quad", type=int, default=256,
                        help="starting quadrature node count, doubled until converged (default: 256)")
    parser.add_argument("--format", choices=["csv", "json"], default="csv",
                        help="output format (default: csv)")
    parser.add_argument("--out", default=None,
                        help="output path (directory for reproduce); default: stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ringpair",
                     description="Two interacting particles on concentric rings: "
                                 "plane-wave eigensolver and Mathieu reference solutions.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("solve", help="ground or low-lying states with coefficient tables")
    _add_common(p)
    _add_output(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("spectrum", help="lowest eigenvalues of the dense assembly")
    _add_common(p)
    _add_output(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("mathieu", help="Mathieu characteristic values and profiles")
    p.add_argument("--q", type=float, required=True, help="Mathieu parameter q")
    p.add_argument("--branch", choices=["even", "odd"], required=True,
                   help="even (cosine) or odd (sine) periodic branch")
    p.add_argument("--order", type=int, required=True, help="even characteristic order")
    p.add_argument("--trunc", type=int, default=64,
                   help="starting recurrence truncation (default: 64)")
    p.add_argument("--profile-points", type=int, default=0,
                   help="emit the eigenfunction on this many grid points instead of the value")
    _add_output(p)
    p.set_defaults(handler=_cmd_mathieu)

    p = sub.add_parser("oracle", help="one-dimensional relative-angle spectrum with parity labels")
    _add_common(p, with_basis=False)
    p.add_argument("--modes", type=int, default=64,
                   help="Fourier modes -M..M in the relative solver (default: 64)")
    p.add_argument("--count", type=int, default=8, help="levels to report (default: 8)")
    _add_output(p)
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("sweep", help="ground-energy convergence against truncation order")
    _add_common(p, with_basis=False)
    p.add_argument("--n-list", default="2,4,6,8,10,12,14",
                   help="comma-separated even truncation orders (default: 2,4,...,14)")
    _add_output(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("reproduce", help="emit the bundled benchmark artifacts")
    p.add_argument("target", choices=REPRODUCE_TARGETS, help="which artifact to produce")
    _add_output(p)
    p.set_defaults(handler=_cmd_reproduce)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse ``argv`` and execute; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.handler(args)
    except Exception as exc:  # computation or configuration failure
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
