"""Command-line front end.

Subcommands: forms, curvature, gauss, bour, samegauss, delta3, verify,
mesh.  A surface is described by a JSON config file and/or flags (flags
win).  Helicoidal example:

    {"surface": {"kind": "helicoidal", "zeta": "u^2", "phi": "u^3",
                 "pitch": 1.0, "domain": [0.5, 1.5]},
     "grid": {"nu": 20, "nv": 20},
     "tolerances": {"quadrature": 1e-10, "fd_step": 1e-3},
     "anchor": 1.0,
     "b": 1.5}

Rotational surfaces use "radius"/"height" and an optional "twist"
expression instead of "zeta"/"phi"/"pitch".  Exit codes: 0 success,
1 check failure, 2 usage or config error, 3 numerical failure.  Output is
deterministic: no timestamps, '.' decimal point, shortest round-trip
float formatting (OBJ uses 9 significant digits).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional, TextIO

from . import __version__
from .bour import bour_image, same_gauss_profile
from .calculus import NonConvergenceError, NonFiniteSampleError
from .expr import DomainError, ParseError
from .forms import (
    DegenerateSurfaceError,
    first_form,
    gauss_map,
    gaussian_curvature,
    mean_curvature,
    phi_functional,
    second_form,
    third_form,
)
from .lb3 import ParabolicPointError, iii_minimality_scan
from .surfaces import (
    HelicoidalSurface,
    ProfileCurve,
    RotationalSurface,
    Surface,
    scalar_map,
)
from .verify import surface_checks, tensor_grid

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_NUMERICAL_ERRORS = (DomainError, NonFiniteSampleError, NonConvergenceError,
                     DegenerateSurfaceError, ParabolicPointError)


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    surface: Surface
    kind: str
    domain: tuple[float, float]
    nu: int = 20
    nv: int = 20
    quad_tol: float = 1e-10
    fd_step: float = 1e-3
    tol: float = 1e-6
    check_tols: dict = field(default_factory=dict)
    u0: Optional[float] = None
    b: Optional[float] = None
    out: Optional[str] = None
    raw_surface: dict = field(default_factory=dict)


def _fmt(x: float) -> str:
    return repr(float(x))


def _build_surface(spec: dict) -> tuple[Surface, str]:
    kind = spec.get("kind")
    if kind not in ("helicoidal", "rotational"):
        raise ConfigError(f"surface kind must be 'helicoidal' or 'rotational', got {kind!r}")
    domain = spec.get("domain")
    if (not isinstance(domain, (list, tuple)) or len(domain) != 2
            or not all(isinstance(x, (int, float)) for x in domain)):
        raise ConfigError("surface domain must be [u_min, u_max]")
    lo, hi = float(domain[0]), float(domain[1])
    if not lo < hi:
        raise ConfigError(f"domain must satisfy u_min < u_max, got [{lo}, {hi}]")
    try:
        if kind == "helicoidal":
            for key in ("zeta", "phi", "pitch"):
                if key not in spec:
                    raise ConfigError(f"helicoidal surface needs '{key}'")
            pitch = float(spec["pitch"])
            if pitch == 0.0:
                raise ConfigError(
                    "pitch must be nonzero for the helicoidal kind; "
                    "enter pitch-0 surfaces with kind 'rotational'")
            profile = ProfileCurve.from_expressions(str(spec["zeta"]),
                                                    str(spec["phi"]), (lo, hi))
            return HelicoidalSurface(profile, pitch), kind
        for key in ("radius", "height"):
            if key not in spec:
                raise ConfigError(f"rotational surface needs '{key}'")
        twist = scalar_map(str(spec.get("twist", "0")))
        return RotationalSurface(radius=scalar_map(str(spec["radius"])),
                                 height=scalar_map(str(spec["height"])),
                                 domain=(lo, hi), twist=twist), kind
    except ParseError as exc:
        raise ConfigError(f"bad expression: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(ns: argparse.Namespace) -> Config:
    data: dict = {}
    if ns.config:
        try:
            with open(ns.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {ns.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    spec = dict(data.get("surface", data))
    for key in ("kind", "zeta", "phi", "radius", "height", "twist"):
        val = getattr(ns, key, None)
        if val is not None:
            spec[key] = val
    if getattr(ns, "pitch", None) is not None:
        spec["pitch"] = ns.pitch
    if getattr(ns, "domain", None) is not None:
        spec["domain"] = ns.domain
    if "kind" not in spec:
        spec["kind"] = "helicoidal" if "zeta" in spec else (
            "rotational" if "radius" in spec else None)
    surface, kind = _build_surface(spec)

    grid = data.get("grid", {})
    tols = data.get("tolerances", {})
    cfg = Config(
        surface=surface,
        kind=kind,
        domain=surface.domain,
        nu=int(ns.nu if ns.nu is not None else grid.get("nu", 20)),
        nv=int(ns.nv if ns.nv is not None else grid.get("nv", 20)),
        quad_tol=float(ns.tol_quad if ns.tol_quad is not None
                       else tols.get("quadrature", 1e-10)),
        fd_step=float(ns.fd_step if ns.fd_step is not None
                      else tols.get("fd_step", 1e-3)),
        check_tols=dict(data.get("check_tolerances", {})),
        u0=(float(ns.u0) if ns.u0 is not None else data.get("anchor")),
        b=(float(ns.b) if ns.b is not None else data.get("b")),
        out=(ns.out if ns.out is not None else data.get("output")),
        raw_surface=spec,
    )
    h = getattr(ns, "h", None)
    if h is not None:
        cfg.fd_step = float(h)
    tol = getattr(ns, "tol", None)
    if tol is not None:
        cfg.tol = float(tol)
    if cfg.nu < 2 or cfg.nv < 2:
        raise ConfigError("grid counts nu, nv must be >= 2")
    if cfg.quad_tol <= 0 or cfg.fd_step <= 0:
        raise ConfigError("tolerances must be positive")
    if cfg.u0 is not None and not (cfg.domain[0] <= cfg.u0 <= cfg.domain[1]):
        raise ConfigError(f"anchor u0={cfg.u0} outside domain {list(cfg.domain)}")
    return cfg


def _u_values(cfg: Config) -> list[float]:
    lo, hi = cfg.domain
    return [lo + (hi - lo) * i / (cfg.nu - 1) for i in range(cfg.nu)]


def _open_out(cfg: Config):
    if cfg.out:
        return open(cfg.out, "w", encoding="utf-8", newline="\n"), True
    return sys.stdout, False


def _emit_csv(cfg: Config, header: list[str], rows) -> None:
    out, close = _open_out(cfg)
    try:
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(_fmt(x) for x in row) + "\n")
    finally:
        if close:
            out.close()


# ----------------------------------------------------------- subcommands


def cmd_forms(cfg: Config, ns) -> int:
    rows = []
    for (u, v) in tensor_grid(cfg.domain, cfg.nu, cfg.nv):
        j = cfg.surface.jet(u, v)
        I = first_form(j)
        II = second_form(j)
        III = third_form(I, II)
        K = gaussian_curvature(I, II)
        H = mean_curvature(I, II)
        if isinstance(cfg.surface, HelicoidalSurface):
            phi = phi_functional(cfg.surface.profile, cfg.surface.pitch, u)
        else:
            phi = 2.0 * H * I.det ** 1.5
        rows.append((u, v, I.E, I.F, I.G, II.L, II.M, II.N,
                     III.X, III.Y, III.Z, K, H, phi))
    _emit_csv(cfg, ["u", "v", "E", "F", "G", "L", "M", "N",
                    "X", "Y", "Z", "K", "H", "Phi"], rows)
    return EXIT_OK


def cmd_curvature(cfg: Config, ns) -> int:
    rows = []
    for (u, v) in tensor_grid(cfg.domain, cfg.nu, cfg.nv):
        j = cfg.surface.jet(u, v)
        I = first_form(j)
        II = second_form(j)
        rows.append((u, v, gaussian_curvature(I, II), mean_curvature(I, II)))
    _emit_csv(cfg, ["u", "v", "K", "H"], rows)
    return EXIT_OK


def cmd_gauss(cfg: Config, ns) -> int:
    rows = []
    for (u, v) in tensor_grid(cfg.domain, cfg.nu, cfg.nv):
        n = gauss_map(cfg.surface.jet(u, v))
        rows.append((u, v, n[0], n[1], n[2]))
    _emit_csv(cfg, ["u", "v", "nx", "ny", "nz"], rows)
    return EXIT_OK


def _require_helicoidal(cfg: Config, what: str) -> HelicoidalSurface:
    if not isinstance(cfg.surface, HelicoidalSurface):
        raise ConfigError(f"{what} needs a helicoidal surface config")
    return cfg.surface


def cmd_bour(cfg: Config, ns) -> int:
    surface = _require_helicoidal(cfg, "bour")
    image = bour_image(surface, cfg.u0, cfg.quad_tol)
    rows = []
    for u in _u_values(cfg):
        rows.append((u, image.radius(u).value, image.twist(u).value,
                     image.height(u).value))
    _emit_csv(cfg, ["u", "radius", "twist", "height"], rows)
    return EXIT_OK


def cmd_samegauss(cfg: Config, ns) -> int:
    surface = _require_helicoidal(cfg, "samegauss")
    if cfg.b is None:
        raise ConfigError("samegauss needs the waist constant b (--b or config 'b')")
    profile = same_gauss_profile(surface.profile.zeta, surface.pitch, cfg.b,
                                 cfg.domain, cfg.u0, cfg.quad_tol)
    rows = []
    for u in _u_values(cfg):
        j = profile.phi(u)
        rows.append((u, j.value, j.d1))
    _emit_csv(cfg, ["u", "phi", "dphi"], rows)
    return EXIT_OK


def cmd_delta3(cfg: Config, ns) -> int:
    grid = tensor_grid(cfg.domain, cfg.nu, cfg.nv)
    report = iii_minimality_scan(cfg.surface, grid, tol=cfg.tol, h=cfg.fd_step)
    out, close = _open_out(cfg)
    try:
        out.write("u,v,residual_norm\n")
        for (u, v), res in zip(report.grid, report.residual):
            out.write(f"{_fmt(u)},{_fmt(v)},{_fmt(math.sqrt(float(sum(res * res))))}\n")
        out.write(f"# max_norm={_fmt(report.max_norm)}\n")
        out.write(f"# iii_minimal={'true' if report.iii_minimal else 'false'}\n")
        out.write(f"# parabolic_points={len(report.parabolic)}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_verify(cfg: Config, ns) -> int:
    grid = tensor_grid(cfg.domain, cfg.nu, cfg.nv)
    reports = surface_checks(cfg.surface, grid, cfg.u0, cfg.quad_tol,
                             cfg.check_tols)
    passed = all(r.passed for r in reports)
    if ns.json:
        doc = {
            "version": __version__,
            "surface": cfg.raw_surface,
            "grid": {"nu": cfg.nu, "nv": cfg.nv},
            "checks": [
                {
                    "name": r.name,
                    "points_checked": r.points_checked,
                    "max_abs_error": r.max_abs_error,
                    "tolerance": r.tolerance,
                    "passed": r.passed,
                    "worst_point": [r.worst_point[0], r.worst_point[1]],
                }
                for r in reports
            ],
            "passed": passed,
        }
        out, close = _open_out(cfg)
        try:
            out.write(json.dumps(doc, sort_keys=True, separators=(",", ":")))
            out.write("\n")
        finally:
            if close:
                out.close()
    else:
        out, close = _open_out(cfg)
        try:
            for r in reports:
                status = "PASS" if r.passed else "FAIL"
                out.write(f"{status} {r.name}: max_abs_error={_fmt(r.max_abs_error)}"
                          f" tolerance={_fmt(r.tolerance)}"
                          f" worst_point=({_fmt(r.worst_point[0])},"
                          f"{_fmt(r.worst_point[1])})"
                          f" points={r.points_checked}\n")
            out.write(("all checks passed" if passed else "CHECKS FAILED") + "\n")
        finally:
            if close:
                out.close()
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def export_obj(surface: Surface, us: list[float], vs: list[float],
               stream: TextIO) -> tuple[int, int]:
    """Write a Wavefront OBJ mesh of the parameter grid.

    Vertices in row-major (u outer, v inner) order with per-vertex normals
    from the Gauss map; each grid quad becomes two triangles with
    consistent winding.  Degenerate normals are emitted as zero vectors
    with a warning.  Returns (vertex count, triangle count).
    """
    nu, nv = len(us), len(vs)
    verts = 0
    for u in us:
        for v in vs:
            j = surface.jet(u, v)
            stream.write("v %.9g %.9g %.9g\n" % (j.x[0], j.x[1], j.x[2]))
            try:
                n = gauss_map(j)
                stream.write("vn %.9g %.9g %.9g\n" % (n[0], n[1], n[2]))
            except DegenerateSurfaceError:
                print(f"warning: degenerate normal at (u, v)=({u}, {v})",
                      file=sys.stderr)
                stream.write("vn 0 0 0\n")
            verts += 1
    faces = 0
    for i in range(nu - 1):
        for k in range(nv - 1):
            p00 = i * nv + k + 1
            p10 = (i + 1) * nv + k + 1
            p11 = (i + 1) * nv + k + 2
            p01 = i * nv + k + 2
            stream.write(f"f {p00}//{p00} {p10}//{p10} {p11}//{p11}\n")
            stream.write(f"f {p00}//{p00} {p11}//{p11} {p01}//{p01}\n")
            faces += 2
    return verts, faces


def cmd_mesh(cfg: Config, ns) -> int:
    us = _u_values(cfg)
    # close the seam: v runs inclusively over [0, 2*pi]
    vs = [2.0 * math.pi * j / (cfg.nv - 1) for j in range(cfg.nv)]
    path = cfg.out or "surface.obj"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        export_obj(cfg.surface, us, vs, fh)
    return EXIT_OK


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bourlab",
        description="Helicoidal/rotational surface geometry toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    handlers = {
        "forms": (cmd_forms, "fundamental-form/curvature table as CSV"),
        "curvature": (cmd_curvature, "Gaussian and mean curvature as CSV"),
        "gauss": (cmd_gauss, "unit normals as CSV"),
        "bour": (cmd_bour, "radius/twist/height of the isometric rotational image"),
        "samegauss": (cmd_samegauss, "profile height for the same-Gauss-map pair"),
        "delta3": (cmd_delta3, "third-form Laplacian residuals of the immersion"),
        "verify": (cmd_verify, "run the full checker battery"),
        "mesh": (cmd_mesh, "export a Wavefront OBJ mesh"),
    }
    for name, (fn, help_text) in handlers.items():
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=fn)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--kind", choices=["helicoidal", "rotational"])
        p.add_argument("--zeta", help="profile radius expression in u")
        p.add_argument("--phi", help="profile height expression in u")
        p.add_argument("--radius", help="rotational radius expression in u")
        p.add_argument("--height", help="rotational height expression in u")
        p.add_argument("--twist", help="rotational twist expression in u")
        p.add_argument("--pitch", type=float, help="climb per radian (nonzero)")
        p.add_argument("--b", type=float, help="catenoid waist constant")
        p.add_argument("--domain", type=float, nargs=2, metavar=("LO", "HI"))
        p.add_argument("--nu", type=int, help="grid points along u")
        p.add_argument("--nv", type=int, help="grid points along v")
        p.add_argument("--u0", type=float, help="integral anchor (default: midpoint)")
        p.add_argument("--tol-quad", dest="tol_quad", type=float,
                       help="quadrature tolerance (default 1e-10)")
        p.add_argument("--fd-step", dest="fd_step", type=float,
                       help="finite-difference base step (default 1e-3)")
        p.add_argument("--out", help="output path (default: stdout)")
        if name == "delta3":
            p.add_argument("--h", type=float, help="outer difference base step")
            p.add_argument("--tol", type=float,
                           help="residual norm for the minimality verdict")
        if name == "verify":
            p.add_argument("--json", action="store_true",
                           help="machine-readable report")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if not exc.code else int(exc.code)
    try:
        cfg = load_config(ns)
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return ns.handler(cfg, ns)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
