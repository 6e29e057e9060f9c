"""Command-line interface.

Exit codes: 0 success (or the tested property holds), 2 a well-formed
negative verdict, 1 malformed input or any other error.
"""
import argparse
import json
import os
import sys

import numpy as np

from . import hulls, interior, io, surface, twinning
from .cualni import LatticeParams, VolumeFractionCoefficients, cualni_stretch, run_cualni_case, volume_fraction_roots
from .errors import NegativeVerdict, NonplanarError
from .symmetry import Stretch

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2

BUMP_PRESET = {"profile": "gauss-bump", "scale": 1.0, "normal": [1, 0, 0], "shear": [0, 0, 1], "radius": 6.0}
PLANAR_PRESET = {"profile": "zero", "normal": [1, 0, 0], "shear": [0, 0, 1], "radius": 6.0}


class UsageError(NonplanarError):
    pass


def load_params(path):
    if path is None:
        return {}
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _stretch_from(params):
    if "U" in params:
        return Stretch(params["U"])
    if "lattice" in params:
        return cualni_stretch(LatticeParams(**params["lattice"]))
    raise UsageError("parameters need 'U' (3x3 matrix) or 'lattice' {alpha, beta, gamma}")


def _emit(args, name, payload):
    text = io.dumps(payload)
    sys.stdout.write(text)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, f"{name}.json"), "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_twin(args, params):
    tol = args.tol if args.tol is not None else twinning.MIDDLE_EIGENVALUE_TOL
    try:
        if "axis" in params:
            conns = [twinning.mallard_twin(_stretch_from(params), params["axis"])]
        elif "A" in params and "B" in params:
            conns = twinning.solve_rank_one(params["A"], params["B"], tol=tol)
        else:
            raise UsageError("parameters need 'A' and 'B', or 'U' and 'axis'")
    except NegativeVerdict as exc:
        _emit(args, "twin", {"verdict": exc.verdict, "connections": [], "message": str(exc)})
        return EXIT_NEGATIVE
    verdict = "solved" if conns else "no-solution"
    _emit(args, "twin", {"verdict": verdict, "connections": [c.as_dict() for c in conns]})
    return EXIT_OK if conns else EXIT_NEGATIVE


def cmd_habit(args, params):
    if "M" not in params:
        raise UsageError("parameters need 'M'")
    tol = args.tol if args.tol is not None else twinning.MIDDLE_EIGENVALUE_TOL
    try:
        sols = twinning.habit_plane(params["M"], tol=tol)
    except NegativeVerdict as exc:
        _emit(args, "habit", {"verdict": exc.verdict, "solutions": [], "message": str(exc)})
        return EXIT_NEGATIVE
    _emit(args, "habit", {"verdict": "solved", "solutions": [s.as_dict() for s in sols]})
    return EXIT_OK


def cmd_hull(args, params):
    if "F" not in params or "eta" not in params:
        raise UsageError("parameters need 'F' and 'eta' [eta1, eta2, eta3]")
    spec = hulls.TwoWellSpec(*map(float, params["eta"]))
    kw = {} if args.tol is None else {"block_tol": args.tol, "minor_tol": args.tol}
    verdict = hulls.two_well_membership(params["F"], spec, **kw)
    _emit(args, "hull", verdict.as_dict())
    return EXIT_OK if verdict.member else EXIT_NEGATIVE


def cmd_mallard(args, params):
    U = _stretch_from(params)
    chain = params.get("chain", [1, 2])
    axes = (int(chain[0]) - 1, int(chain[1]) - 1)
    allow_trivial = bool(params.get("allow_trivial", False))
    tol = args.tol if args.tol is not None else 1e-10
    payload = {
        "verdict": "solved",
        "chain": list(chain),
        "diagonal": None,
        "closed_form": np.diag(hulls.diagonal_closed_form(U, axes)),
        "three_well_configs": [c.as_dict() for c in hulls.three_well_configs(U)],
        "kappa_set": [e.as_dict() for e in hulls.kappa_set(U)],
    }
    try:
        payload["diagonal"] = np.diag(hulls.mallard_diagonalize(U, axes, allow_trivial=allow_trivial, tol=tol))
    except NegativeVerdict as exc:
        payload["verdict"] = exc.verdict
        payload["message"] = str(exc)
        _emit(args, "mallard", payload)
        return EXIT_NEGATIVE
    _emit(args, "mallard", payload)
    return EXIT_OK


def cmd_interior(args, params):
    n = params.get("normal", [1.0, 0.0, 0.0])
    if "delta" in params:
        cert = interior.construct_interior_point(
            params["delta"], n=n, kappa=params.get("kappa"), epsilon=params.get("epsilon")
        )
        payload = {"certificate": cert.as_dict()}
    else:
        try:
            check = interior.cubic_austenite_check(_stretch_from(params), n=n)
        except NegativeVerdict as exc:
            _emit(args, "interior", {"error": type(exc).__name__, "verdict": exc.verdict, "message": str(exc)})
            return EXIT_NEGATIVE
        cert = check.certificate
        payload = {
            "certificate": cert.as_dict(),
            "kappa_provenance": [{"pair": [j + 1, k + 1], "formula": f} for j, k, f in check.provenance],
            "all_admissible_kappas": [{"kappa": k, "epsilon": e, "holds": h} for k, e, h in check.admissible],
        }
    _emit(args, "interior", payload)
    return EXIT_OK if cert.holds else EXIT_NEGATIVE


def _surface_inputs(params):
    """(normal, shear, profile, epsilon, radius, hull_test) from surface parameters."""
    if "certificate" in params or "holds" in params:
        cert = interior.certificate_from_dict(params)
        if not cert.holds:
            raise interior.NoAdmissibleKappa("certificate does not hold; no interior point to build from")
        eps = cert.surface_epsilon
        a_len = np.linalg.norm(cert.shear)
        # half the admissible slope keeps a strict margin
        scale = 0.5 * eps / a_len**2 / surface.GAUSS_BUMP_SUP
        profile = surface.gauss_bump(params.get("scale", scale))
        return cert.normal, cert.shear, profile, eps, float(params.get("radius", 2.0)), cert.contains
    preset = params.get("preset")
    if preset is not None:
        presets = {"bump": BUMP_PRESET, "planar": PLANAR_PRESET}
        if preset not in presets:
            raise UsageError(f"unknown preset {preset!r}; choose from {sorted(presets)}")
        params = {**presets[preset], **{k: v for k, v in params.items() if k != "preset"}}
    name = params.get("profile", "gauss-bump")
    if name == "gauss-bump":
        profile = surface.gauss_bump(params.get("scale", 1.0))
    elif name == "zero":
        profile = surface.zero_profile()
    else:
        raise UsageError(f"unknown profile {name!r}")
    for key in ("normal", "shear"):
        if key not in params:
            raise UsageError(f"surface parameters need '{key}'")
    return params["normal"], params["shear"], profile, params.get("epsilon"), float(params.get("radius", 1.0)), None


def cmd_surface(args, params):
    n, a, profile, eps, radius, hull_test = _surface_inputs(params)
    tol = args.tol if args.tol is not None else 1e-12
    resolution = args.resolution if args.resolution is not None else int(params.get("resolution", 100))
    try:
        surf = surface.build_surface(n, a, profile, epsilon=eps, radius=radius)
    except NegativeVerdict as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        _emit(args, "surface_error", {"error": type(exc).__name__, "verdict": exc.verdict, "message": str(exc)})
        return EXIT_NEGATIVE
    mesh = surface.mesh_interface(surf, resolution)
    report = surface.verify_compatibility(surf, mesh, hull_test=hull_test)
    path = surface.path_continuity_check(surf, mesh, trials=args.trials, steps=args.steps, seed=args.seed)
    path = max(path, report.path_continuity_residual)

    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    files = {"mesh": "surface.obj", "residuals": "residuals.csv", "report": "surface.json"}
    io.write_obj(os.path.join(out, files["mesh"]), mesh)
    io.write_residual_csv(os.path.join(out, files["residuals"]), mesh, report)
    rep = report.as_dict()
    rep["path_continuity_residual"] = path
    rep["face_count"] = len(mesh.triangles)
    payload = {
        "surface": {
            "normal": surf.normal_at_origin,
            "shear": surf.shear,
            "transverse": surf.transverse,
            "transverse_scale": surf.transverse_scale,
            "tangent": surf.tangent,
            "profile": profile.name,
            "profile_scale": profile.scale,
            "sup_bound": profile.sup_bound,
            "epsilon": eps,
            "domain_radius": surf.domain_radius,
            "resolution": resolution,
            "trials": args.trials,
            "steps": args.steps,
            "seed": args.seed,
        },
        "report": rep,
        "files": files,
    }
    text = io.dumps(payload)
    with open(os.path.join(out, files["report"]), "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write(text)
    ok = report.max_jump_residual <= tol and (report.ball_membership_margin is None or report.ball_membership_margin >= 0)
    ok = ok and not report.hull_failures
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_cualni(args, params):
    lattice = LatticeParams(**params["lattice"]) if "lattice" in params else None
    report = run_cualni_case(lattice)
    _emit(args, "cualni", report)
    sys.stderr.write(
        "delta^(1/3) = {delta_cbrt:.6g}  kappa* = {kappa_star:.6g}  epsilon = {epsilon:.6g}  "
        "lhs = {lhs:.6g}  holds = {holds}\n".format(**report)
    )
    return EXIT_OK


def cmd_volfrac(args, params):
    if "coefficients" not in params:
        raise UsageError("parameters need 'coefficients' [a0, a1, a2, a3]")
    coeffs = VolumeFractionCoefficients(*map(float, params["coefficients"]))
    lambdas = params.get("Lambdas")
    if lambdas is None:
        lambdas = [params["Lambda"]] if "Lambda" in params else list(np.linspace(0.0, 1.0, 11))
    results = [{"Lambda": float(L), "roots": list(volume_fraction_roots(coeffs, float(L)))} for L in lambdas]
    _emit(args, "volfrac", {"results": results})
    return EXIT_OK if all(r["roots"] for r in results) else EXIT_NEGATIVE


COMMANDS = {
    "twin": (cmd_twin, "rank-one connection between two matrices, or a Mallard twin of U about an axis"),
    "habit": (cmd_habit, "habit-plane solutions R M = 1 + b (x) m"),
    "hull": (cmd_hull, "two-well quasiconvex hull membership"),
    "mallard": (cmd_mallard, "Mallard diagonalization, three-well configurations and kappa set"),
    "interior": (cmd_interior, "interior-point certificate for cubic austenite or for given (delta, kappa)"),
    "surface": (cmd_surface, "build, mesh and verify a curved interface"),
    "cualni": (cmd_cualni, "CuAlNi case study"),
    "volfrac": (cmd_volfrac, "volume-fraction roots for given coefficients"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="nonplanar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--params", help="JSON parameter file ('-' reads stdin)")
        p.add_argument("--out", help="output directory")
        p.add_argument("--tol", type=float, help="override the command's main tolerance")
        p.add_argument("--resolution", type=int, help="mesh resolution (surface)")
        p.add_argument("--seed", type=int, default=0, help="random seed for path trials")
        p.add_argument("--trials", type=int, default=100, help="random paths (surface)")
        p.add_argument("--steps", type=int, default=surface.DEFAULT_STEPS, help="integration steps per path (surface)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.tol is not None and not args.tol > 0:
        sys.stderr.write("error: --tol must be positive\n")
        return EXIT_ERROR
    if args.resolution is not None and args.resolution < 2:
        sys.stderr.write("error: --resolution must be at least 2\n")
        return EXIT_ERROR
    func = COMMANDS[args.command][0]
    try:
        params = load_params(args.params)
        return func(args, params)
    except NegativeVerdict as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_NEGATIVE
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    except (NonplanarError, ValueError, TypeError, KeyError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
