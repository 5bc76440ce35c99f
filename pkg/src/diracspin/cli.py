"""Command-line interface.

Subcommands
-----------
verify          randomized identity-residual sweep, JSON/CSV report
wigner          Wigner rotation for one (velocity, momentum) pair
boost           velocity or standard boost matrix with diagnostics
amplitude       bispinor amplitude at one momentum with identity residuals
spin-transform  Bloch-vector and spin-matrix transport under a pure boost
precess         magnetic precession trajectory as CSV
fourier-check   momentum vs position scalar-product comparison

Exit codes: 0 success, 1 a checked identity exceeded tolerance, 2 bad
usage or configuration.  Reports are deterministic for a fixed seed;
complex matrices serialize row-major as [re, im] pairs.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .amplitudes import amplitude, dirac_bar, parity_residual
from .clifford import energy_projector, slash
from .dynamics import ChargedState, integrate, quadrupole_field, uniform_field
from .lorentz import (boost_from_velocity, lorentz_gamma, standard_boost, su2_from_so3,
                      wigner_rotation, wigner_rotation_closed)
from .minkowski import lorentz_residual, on_shell
from .position import default_grids, parseval_check
from .spin_ops import spin_transform_closed, spin_transform_wigner
from .states import gaussian_packet, normalized
from .verify import (DEFAULT_TOLERANCES, RunConfig, complex_matrix_payload, format_float,
                     real_matrix_payload, run_all, to_csv, to_json)


def _vec3(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return np.array([float(x) for x in parts])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _mat3(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 9:
        raise argparse.ArgumentTypeError(
            f"expected nine comma-separated numbers (row-major 3x3), got {len(parts)}")
    try:
        return np.array([float(x) for x in parts]).reshape(3, 3)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _spin2(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated complex numbers")
    try:
        return np.array([complex(x) for x in parts])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tol_pair(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name, float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _tol_map(args, allowed) -> dict:
    overrides = dict(args.tol or [])
    unknown = set(overrides) - set(allowed)
    if unknown:
        raise ValueError(f"unknown tolerance overrides: {sorted(unknown)} "
                         f"(choose from {sorted(allowed)})")
    return overrides


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_speed(v3: np.ndarray) -> np.ndarray:
    if np.linalg.norm(v3) >= 1.0:
        raise ValueError(f"speed must be below 1, got |v| = {np.linalg.norm(v3):.6g}")
    return v3


def _json_only(args) -> None:
    if args.format == "csv":
        raise ValueError("this subcommand emits JSON reports; drop --format csv")


def _report_common(args) -> dict:
    return {"version": __version__}


# --- subcommand handlers ---------------------------------------------------

def cmd_verify(args) -> int:
    cfg = RunConfig(seed=args.seed, samples=args.samples, mass=args.mass,
                    pmax_over_m=args.pmax, vmax=args.vmax,
                    tolerances=_tol_map(args, DEFAULT_TOLERANCES))
    report = run_all(cfg)
    _emit(to_csv(report) if args.format == "csv" else to_json(report), args)
    if not report["all_pass"]:
        failed = [r["name"] for r in report["identities"] if not r["passed"]]
        print(f"{len(failed)} identity check(s) failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def cmd_wigner(args) -> int:
    _json_only(args)
    v3 = _check_speed(args.velocity)
    p4 = on_shell(args.mass, args.momentum)
    tol = _tol_map(args, {"wigner_closed_form"}).get(
        "wigner_closed_form", DEFAULT_TOLERANCES["wigner_closed_form"])
    closed = wigner_rotation_closed(v3, p4, args.mass)
    brute, _ = wigner_rotation(boost_from_velocity(v3), p4, args.mass)
    residual = float(np.abs(closed - brute).max())
    cos_angle = np.clip((np.trace(closed) - 1.0) / 2.0, -1.0, 1.0)
    angle = float(np.arccos(cos_angle))
    # Rotation axis from the antisymmetric part; zero vector for angle ~ 0.
    w = np.array([closed[2, 1] - closed[1, 2], closed[0, 2] - closed[2, 0],
                  closed[1, 0] - closed[0, 1]])
    axis = (w / np.linalg.norm(w)).tolist() if np.linalg.norm(w) > 1e-14 else [0.0, 0.0, 0.0]
    report = {
        **_report_common(args),
        "config": {"velocity": list(map(float, v3)), "momentum": list(map(float, args.momentum)),
                   "mass": args.mass, "tolerance": tol},
        "rotation": real_matrix_payload(closed),
        "axis": axis,
        "angle": angle,
        "brute_force_residual": residual,
        "passed": residual < tol,
    }
    _emit(to_json(report), args)
    return 0 if report["passed"] else 1


def cmd_boost(args) -> int:
    _json_only(args)
    if (args.velocity is None) == (args.momentum is None):
        raise ValueError("give exactly one of --velocity or --momentum")
    if args.velocity is not None:
        v3 = _check_speed(args.velocity)
        L = boost_from_velocity(v3)
        config = {"velocity": list(map(float, v3)), "gamma": lorentz_gamma(v3)}
    else:
        p4 = on_shell(args.mass, args.momentum)
        L = standard_boost(p4, args.mass)
        config = {"momentum": list(map(float, args.momentum)), "mass": args.mass,
                  "energy": float(p4[0])}
    report = {
        **_report_common(args),
        "config": config,
        "matrix": real_matrix_payload(L),
        "metric_residual": lorentz_residual(L),
    }
    _emit(to_json(report), args)
    return 0


def cmd_amplitude(args) -> int:
    _json_only(args)
    if args.eps not in (1, -1):
        raise ValueError("--eps must be +1 or -1")
    allowed = {"amplitude_orthogonality", "amplitude_projector", "amplitude_dirac",
               "amplitude_parity"}
    overrides = _tol_map(args, allowed)
    p4 = on_shell(args.mass, args.momentum)
    v = amplitude(args.eps, p4, args.mass)
    vb = dirac_bar(v)
    residuals = {
        "amplitude_orthogonality": float(np.abs(vb @ v - args.eps * np.eye(2)).max()),
        "amplitude_projector": float(
            np.abs(v @ vb - args.eps * energy_projector(args.eps, p4, args.mass)).max()),
        "amplitude_dirac": float(np.abs(slash(p4) @ v - args.eps * args.mass * v).max()),
        "amplitude_parity": parity_residual(args.eps, p4, args.mass),
    }
    tols = {k: overrides.get(k, DEFAULT_TOLERANCES[k]) for k in sorted(residuals)}
    passed = all(residuals[k] < tols[k] for k in residuals)
    report = {
        **_report_common(args),
        "config": {"eps": args.eps, "momentum": list(map(float, args.momentum)),
                   "mass": args.mass, "tolerances": tols},
        "amplitude": complex_matrix_payload(v),
        "residuals": {k: residuals[k] for k in sorted(residuals)},
        "passed": passed,
    }
    _emit(to_json(report), args)
    return 0 if passed else 1


def cmd_spin_transform(args) -> int:
    _json_only(args)
    v3 = _check_speed(args.velocity)
    p4 = on_shell(args.mass, args.momentum)
    tol = _tol_map(args, {"spin_transform_equivalence"}).get(
        "spin_transform_equivalence", DEFAULT_TOLERANCES["spin_transform_equivalence"])
    closed = spin_transform_closed(v3, p4, args.mass)
    rotated = spin_transform_wigner(v3, p4, args.mass)
    residual = float(np.abs(closed - rotated).max())
    R3 = wigner_rotation_closed(v3, p4, args.mass)
    report = {
        **_report_common(args),
        "config": {"velocity": list(map(float, v3)), "momentum": list(map(float, args.momentum)),
                   "mass": args.mass, "xi": list(map(float, args.xi)), "tolerance": tol},
        "rotation": real_matrix_payload(R3),
        "su2": complex_matrix_payload(su2_from_so3(R3)),
        "xi_out": [float(x) for x in R3 @ args.xi],
        "transformed_spin": [complex_matrix_payload(closed[i]) for i in range(3)],
        "equivalence_residual": residual,
        "passed": residual < tol,
    }
    _emit(to_json(report), args)
    return 0 if report["passed"] else 1


def cmd_precess(args) -> int:
    if args.format == "json":
        raise ValueError("precess emits CSV trajectories; drop --format json")
    if args.field == "uniform":
        if args.b is None:
            raise ValueError("uniform field needs --b Bx,By,Bz")
        field = uniform_field(args.b)
    else:
        if args.gradient is None:
            raise ValueError("quadrupole field needs --gradient with nine entries")
        field = quadrupole_field(args.gradient)
    state = ChargedState(q=args.q, xi=args.xi, x=args.x0, charge=args.charge, mass=args.mass)
    traj = integrate(state, field, args.t_final, args.steps, reading=args.reading)
    _emit(traj.to_csv(), args)

    xi_norm = np.linalg.norm(traj.xi, axis=1)
    xi_drift = float(np.abs(xi_norm - xi_norm[0]).max())
    q_norm = np.linalg.norm(traj.q, axis=1)
    q_drift = float(np.abs(q_norm - q_norm[0]).max())
    xiq = np.einsum("ni,ni->n", traj.xi, traj.q)
    xiq_drift = float(np.abs(xiq - xiq[0]).max())
    print(f"# steps={args.steps} t_final={format_float(args.t_final)} "
          f"xi_drift={format_float(xi_drift)} q_norm_drift={format_float(q_drift)} "
          f"xi_dot_q_drift={format_float(xiq_drift)}", file=sys.stderr)
    return 0


def cmd_fourier_check(args) -> int:
    _json_only(args)
    tol = _tol_map(args, {"parseval"}).get("parseval", 1e-3)
    if args.eps not in (1, -1):
        raise ValueError("--eps must be +1 or -1")
    packet = normalized(gaussian_packet(args.eps, args.mass, args.width,
                                        spin=args.spin, center=args.center))
    pgrid, xgrid = default_grids(packet, packet)
    lhs, rhs, relerr = parseval_check(packet, packet, pgrid, xgrid, t=args.time)
    lhs2, rhs2, relerr2 = parseval_check(packet, packet, pgrid.refined(), xgrid.refined(),
                                         t=args.time)
    passed = relerr < tol and relerr2 < relerr
    report = {
        **_report_common(args),
        "config": {"eps": args.eps, "mass": args.mass, "width": args.width,
                   "center": list(map(float, args.center)),
                   "spin": [[float(s.real), float(s.imag)] for s in args.spin],
                   "time": args.time, "tolerance": tol,
                   "momentum_grid": {"pmax": pgrid.pmax, "points": pgrid.n},
                   "position_grid": {"xmax": xgrid.xmax, "points": xgrid.n}},
        "momentum_side": [float(lhs.real), float(lhs.imag)],
        "position_side": [float(rhs.real), float(rhs.imag)],
        "relative_error": relerr,
        "refined_relative_error": relerr2,
        "refinement_decreases": relerr2 < relerr,
        "passed": passed,
    }
    _emit(to_json(report), args)
    return 0 if passed else 1


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="sweep RNG seed")
    common.add_argument("--samples", type=int, default=200, help="samples per identity")
    common.add_argument("--mass", type=float, default=1.0, help="particle mass")
    common.add_argument("--pmax", type=float, default=10.0,
                        help="momentum sampling radius in units of the mass")
    common.add_argument("--vmax", type=float, default=0.99, help="velocity sampling radius")
    # default None so each handler can tell an explicit choice from none;
    # the action objects are shared across subparsers via parents=
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="report format (trajectories are always CSV)")
    common.add_argument("--out", metavar="FILE", default=None, help="write output to FILE")
    common.add_argument("--tol", metavar="NAME=VALUE", type=_tol_pair, action="append",
                        help="tolerance override, repeatable")

    p = argparse.ArgumentParser(prog="diracspin",
                                description="Numerical checks for relativistic spin-1/2 "
                                            "kinematics: Wigner rotations, bispinor "
                                            "amplitudes, spin operators, precession.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", parents=[common], help="run the identity-residual sweep")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("wigner", parents=[common], help="Wigner rotation for one case")
    sp.add_argument("--velocity", type=_vec3, required=True, metavar="VX,VY,VZ")
    sp.add_argument("--momentum", type=_vec3, default=np.zeros(3), metavar="PX,PY,PZ")
    sp.set_defaults(func=cmd_wigner)

    sp = sub.add_parser("boost", parents=[common], help="boost matrix with diagnostics")
    sp.add_argument("--velocity", type=_vec3, default=None, metavar="VX,VY,VZ")
    sp.add_argument("--momentum", type=_vec3, default=None, metavar="PX,PY,PZ",
                    help="standard boost for this spatial momentum")
    sp.set_defaults(func=cmd_boost)

    sp = sub.add_parser("amplitude", parents=[common], help="bispinor amplitude at one momentum")
    sp.add_argument("--eps", type=int, default=1, help="energy sign, +1 or -1")
    sp.add_argument("--momentum", type=_vec3, default=np.zeros(3), metavar="PX,PY,PZ")
    sp.set_defaults(func=cmd_amplitude)

    sp = sub.add_parser("spin-transform", parents=[common],
                        help="spin transport under a pure boost")
    sp.add_argument("--velocity", type=_vec3, required=True, metavar="VX,VY,VZ")
    sp.add_argument("--momentum", type=_vec3, default=np.zeros(3), metavar="PX,PY,PZ")
    sp.add_argument("--xi", type=_vec3, default=np.array([0.0, 0.0, 1.0]),
                    metavar="X,Y,Z", help="Bloch vector to rotate")
    sp.set_defaults(func=cmd_spin_transform)

    sp = sub.add_parser("precess", parents=[common], help="integrate magnetic precession")
    sp.add_argument("--field", choices=("uniform", "quadrupole"), default="uniform")
    sp.add_argument("--b", type=_vec3, default=None, metavar="BX,BY,BZ",
                    help="uniform field components")
    sp.add_argument("--gradient", type=_mat3, default=None, metavar="G11,...,G33",
                    help="row-major field gradient (d_i B_j) for quadrupole")
    sp.add_argument("--q", type=_vec3, default=np.array([0.0, 0.0, 0.0]), metavar="QX,QY,QZ",
                    help="initial momentum")
    sp.add_argument("--xi", type=_vec3, default=np.array([1.0, 0.0, 0.0]), metavar="X,Y,Z",
                    help="initial polarization")
    sp.add_argument("--x0", type=_vec3, default=np.zeros(3), metavar="X,Y,Z",
                    help="initial position")
    sp.add_argument("--charge", type=float, default=1.0)
    sp.add_argument("--t-final", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--reading", choices=("stern-gerlach", "transposed"),
                    default="stern-gerlach", help="index reading of the gradient force")
    sp.set_defaults(func=cmd_precess)

    sp = sub.add_parser("fourier-check", parents=[common],
                        help="compare momentum and position scalar products")
    sp.add_argument("--eps", type=int, default=1)
    sp.add_argument("--width", type=float, default=0.4, help="momentum-space Gaussian width")
    sp.add_argument("--center", type=_vec3, default=np.zeros(3), metavar="PX,PY,PZ")
    sp.add_argument("--spin", type=_spin2, default=np.array([1.0 + 0j, 0.0 + 0j]),
                    metavar="A,B", help="spin components (complex literals)")
    sp.add_argument("--time", type=float, default=0.0, help="slice time for the position side")
    sp.set_defaults(func=cmd_fourier_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
