"""Swept surface meshes, file artifacts, and named experiment runs.

Everything with an I/O side effect lives here. The solvers stay pure; this
module turns their results into CSV tables, SVG cross-sections, OBJ meshes
and a manifest that pins down how each number was produced. All numeric
output uses 17 significant digits so doubles survive a round trip through
text, and nothing here depends on the clock: running the same experiment
twice writes the same bytes.
"""
from __future__ import annotations

import math
import os
import platform

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib
from dataclasses import dataclass
from importlib import metadata, resources
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy

from .curves import ClosedPlaneCurve, extend_by_symmetry
from .ekt import EktParams, EktPoint, ekt_frame_to_coords, ekt_translate
from .errors import ConfigError, PreconditionError, SolverError
from .flux import diameter_closed_form, ekt_flux_profile, weight_flux_residual
from .profiles import section_to_ambient
from .shooting import find_immersed, find_zero_height, sweep_family
from .sol import SolPoint, frame_to_coords, sol_apply_isometry, translate_base, \
    translate_diag
from .surfaces import AxisSpec, _chart_fields, arclength_turn_rate, ekt_axis, \
    sol_base_axis, sol_curve_mean_curvature, sol_diag_axis

_FMT = "%.17g"
ENV_OUT_DIR = "CMCYL_OUT_DIR"


def _fmt(x: float) -> str:
    return _FMT % float(x)


# ------------------------------------------------------------------
# swept meshes
# ------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantSurfaceMesh:
    """Quad mesh of a translation-invariant surface.

    Vertices are model coordinates; normals are the coordinate components
    of the metric unit normal, pointing out of the tube. Faces index the
    vertex array and wind counterclockwise seen from the normal side. Ring
    i holds the ``ring_size`` images of the generating curve under the
    translation by ``s_values[i]``.
    """

    axis: AxisSpec
    vertices: np.ndarray
    normals: np.ndarray
    faces: np.ndarray
    s_values: np.ndarray
    ring_size: int
    curve: ClosedPlaneCurve

    def __post_init__(self):
        if self.faces.size and not (0 <= self.faces.min()
                                    and self.faces.max() < len(self.vertices)):
            raise ValueError("face indices fall outside the vertex array")


def _closed_polyline_data(curve: ClosedPlaneCurve):
    """(points, unit tangents, arc lengths, unwrapped angles, column count).

    Arrays keep the duplicated closure vertex so index n aliases index 0;
    the mesh columns are the first n entries.
    """
    pts = np.asarray(curve.vertices, dtype=float)
    n = len(pts) - 1
    if n < 3:
        raise PreconditionError("the generating curve needs at least three columns")
    if curve.tangents is not None:
        tans = np.asarray(curve.tangents, dtype=float)
    else:
        ext = np.vstack([pts[n - 1], pts[:n], pts[:2]])
        chords = ext[2:] - ext[:-2]
        tans = chords / np.hypot(chords[:, 0], chords[:, 1])[:, None]
        tans = np.vstack([tans, tans[:1]])
    seg = np.hypot(*(np.diff(pts, axis=0).T))
    sig = np.concatenate([[0.0], np.cumsum(seg)])
    theta = np.unwrap(np.arctan2(tans[:, 1], tans[:, 0]))
    return pts, tans, sig, theta, n


def _fd3(fm, f0, fp, a: float, b: float):
    # first derivative from three samples at -a, 0, +b
    return (fp * a * a - fm * b * b + f0 * (b * b - a * a)) / (a * b * (a + b))


def _translated(axis: AxisSpec, s: float, p) -> Tuple[float, float, float]:
    kind = axis.kind
    if kind == "sol-base":
        q = sol_apply_isometry(translate_base(s), SolPoint(*p))
    elif kind == "sol-diag-plus":
        q = sol_apply_isometry(translate_diag(1, s), SolPoint(*p))
    elif kind == "sol-diag-minus":
        q = sol_apply_isometry(translate_diag(-1, s), SolPoint(*p))
    else:
        q = ekt_translate(axis.params, s, EktPoint(*p))
    return (q.x, q.y, q.z)


def _spot_check_curvature(axis, pts, tans, sig, theta, n, faces, H,
                          check_faces, check_tol, seed):
    span = theta[n] - theta[0]
    cache: Dict[int, float] = {}

    def column_H(j: int) -> float:
        if j in cache:
            return cache[j]
        if j == 0:
            a = sig[n] - sig[n - 1]
            th_m, tan_m = theta[n - 1] - span, tans[n - 1]
        else:
            a = sig[j] - sig[j - 1]
            th_m, tan_m = theta[j - 1], tans[j - 1]
        b = sig[j + 1] - sig[j]
        u, h = pts[j]
        if axis.kind == "sol-base":
            # the polynomial closed form is a fully independent assembly
            tp = _fd3(tan_m, tans[j], tans[j + 1], a, b)
            value = sol_curve_mean_curvature(u, h, tans[j, 0], tans[j, 1],
                                             tp[0], tp[1])
        else:
            thp = _fd3(th_m, theta[j], theta[j + 1], a, b)
            r0 = arclength_turn_rate(axis, u, h, theta[j], 0.0)
            r1 = arclength_turn_rate(axis, u, h, theta[j], 1.0)
            if r1 == r0:
                raise SolverError("turn rate does not respond to the target "
                                  "curvature; the chart is degenerate here")
            value = (thp - r0) / (r1 - r0)
        cache[j] = value
        return value

    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(faces), size=min(int(check_faces), len(faces)))
    for f in picks:
        got = column_H(int(f) % n)
        if not math.isfinite(got) or abs(got - H) > check_tol:
            raise SolverError(
                f"swept face {int(f)} reports mean curvature {got:.8g} "
                f"against the target {H:g} (tolerance {check_tol:g})")


def sweep_mesh(axis: AxisSpec, curve: ClosedPlaneCurve,
               s_range: Tuple[float, float] = (-2.0, 2.0),
               resolution: int = 33, *, H: Optional[float] = None,
               check_faces: int = 100, check_tol: float = 1e-3,
               seed: int = 2601) -> InvariantSurfaceMesh:
    """Mesh of the surface traced by the axis translations of a closed
    section curve.

    ``resolution`` counts the rings along the sweep; the columns come from
    the curve's own sampling. When ``H`` is given, the mean curvature is
    re-derived from the polyline data on ``check_faces`` randomly chosen
    faces and must sit within ``check_tol`` of it; the curve has to be
    traversed in the orientation that makes that target positive, which is
    how every curve produced by this package arrives.
    """
    if not isinstance(curve, ClosedPlaneCurve) or not curve.closed:
        raise PreconditionError("sweeping needs a closed generating curve")
    rings = int(resolution)
    if rings < 2:
        raise ValueError("resolution must give at least two rings")
    s0, s1 = (float(s) for s in s_range)
    if not (math.isfinite(s0) and math.isfinite(s1)) or s1 <= s0:
        raise ValueError("s_range must be an increasing finite interval")

    pts, tans, sig, theta, n = _closed_polyline_data(curve)
    base = [section_to_ambient(axis, u, h) for u, h in pts[:n]]
    s_values = np.linspace(s0, s1, rings)
    vertices = np.empty((rings * n, 3))
    for i, s in enumerate(s_values):
        row = i * n
        for j, p in enumerate(base):
            vertices[row + j] = _translated(axis, float(s), p)

    # frame components of the normal do not feel the sweep parameter, so
    # one cross product per column covers every ring
    comps = []
    for j in range(n):
        v1, _, _, bu, _, _, bh, _, _ = _chart_fields(axis, pts[j, 0], pts[j, 1])
        v2 = bu * float(tans[j, 0]) + bh * float(tans[j, 1])
        raw = v1.cross(v2)
        nrm = raw.norm()
        if not math.isfinite(nrm) or nrm == 0.0:
            raise SolverError(f"degenerate sweep direction at column {j}")
        comps.append(raw * (1.0 / nrm))

    area2 = float(np.sum(pts[:-1, 0] * pts[1:, 1] - pts[1:, 0] * pts[:-1, 1]))
    wu, wh = (tans[0, 1], -tans[0, 0]) if area2 > 0.0 else (-tans[0, 1], tans[0, 0])
    v1, _, _, bu, _, _, bh, _, _ = _chart_fields(axis, pts[0, 0], pts[0, 1])
    sign = 1.0 if comps[0].dot(bu * float(wu) + bh * float(wh)) > 0.0 else -1.0
    comps = [c * sign for c in comps]

    normals = np.empty_like(vertices)
    if axis.kind == "ekt":
        for k, vert in enumerate(vertices):
            normals[k] = ekt_frame_to_coords(axis.params, EktPoint(*vert),
                                             comps[k % n])
    else:
        for k, vert in enumerate(vertices):
            normals[k] = frame_to_coords(SolPoint(*vert), comps[k % n])

    faces = np.empty(((rings - 1) * n, 4), dtype=np.int64)
    for i in range(rings - 1):
        for j in range(n):
            jn = (j + 1) % n
            faces[i * n + j] = (i * n + j, i * n + jn,
                                (i + 1) * n + jn, (i + 1) * n + j)
    corners = vertices[faces[0]]
    newell = np.zeros(3)
    for k in range(4):
        newell += np.cross(corners[k], corners[(k + 1) % 4])
    if float(newell @ normals[faces[0]].mean(axis=0)) < 0.0:
        faces = faces[:, ::-1].copy()

    if H is not None:
        _spot_check_curvature(axis, pts, tans, sig, theta, n, faces,
                              float(H), check_faces, check_tol, seed)
    return InvariantSurfaceMesh(axis=axis, vertices=vertices, normals=normals,
                                faces=faces, s_values=s_values, ring_size=n,
                                curve=curve)


# ------------------------------------------------------------------
# artifact writers
# ------------------------------------------------------------------

def _writing(target):
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="ascii", newline="") if own else target
    return fh, own


def write_obj(mesh: InvariantSurfaceMesh, target):
    """Wavefront dump: shared vertices, per-vertex normals, quad faces."""
    fh, own = _writing(target)
    try:
        fh.write("# translation-invariant constant mean curvature tube\n")
        for x, y, z in mesh.vertices:
            fh.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
        for x, y, z in mesh.normals:
            fh.write(f"vn {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
        for face in mesh.faces:
            refs = " ".join(f"{v + 1}//{v + 1}" for v in face)
            fh.write(f"f {refs}\n")
    finally:
        if own:
            fh.close()
    return None if not own else Path(target)


def write_section_svg(curve: ClosedPlaneCurve, target):
    """Cross-section plot in a fixed frame with the chart symmetry axes."""
    pts = np.asarray(curve.vertices, dtype=float)
    reach = float(np.max(np.abs(pts))) if pts.size else 1.0
    scale = 450.0 / max(reach, 1e-30)
    points = " ".join(f"{_fmt(x * scale)},{_fmt(-y * scale)}" for x, y in pts)
    body = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-500 -500 1000 1000">\n'
        '  <line class="symmetry-axis" stroke="#999999" stroke-width="1" '
        'x1="-500" y1="0" x2="500" y2="0"/>\n'
        '  <line class="symmetry-axis" stroke="#999999" stroke-width="1" '
        'x1="0" y1="-500" x2="0" y2="500"/>\n'
        f'  <polyline class="section-curve" fill="none" stroke="#202020" '
        f'stroke-width="2" points="{points}"/>\n'
        '</svg>\n'
    )
    fh, own = _writing(target)
    try:
        fh.write(body)
    finally:
        if own:
            fh.close()
    return None if not own else Path(target)


def write_closed_curve_csv(axis: AxisSpec, curve: ClosedPlaneCurve, target):
    """Closed section polyline with the same columns as a profile table.

    t is the chart arc length from the starting vertex; hp is the chart
    slope, infinite where the curve runs vertical.
    """
    pts, tans, sig, _, _ = _closed_polyline_data(curve)
    fh, own = _writing(target)
    try:
        fh.write("t,x,y,z,hp,chart\n")
        for k, (u, h) in enumerate(pts):
            x, y, z = section_to_ambient(axis, float(u), float(h))
            cu, ch = tans[k]
            hp = ch / cu if cu != 0.0 else math.copysign(math.inf, ch)
            fh.write(f"{_fmt(sig[k])},{_fmt(x)},{_fmt(y)},{_fmt(z)},"
                     f"{_fmt(hp)},{axis.kind}\n")
    finally:
        if own:
            fh.close()
    return None if not own else Path(target)


def _write_csv(target, header: str, rows: Iterable[Sequence[float]]):
    fh, own = _writing(target)
    try:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    finally:
        if own:
            fh.close()


# ------------------------------------------------------------------
# experiment configs
# ------------------------------------------------------------------

def _load_presets() -> dict:
    text = resources.files("cmcyl").joinpath("presets.toml").read_text("utf-8")
    return tomllib.loads(text)


def available_presets() -> Tuple[str, ...]:
    return tuple(sorted(_load_presets()))


def _resolve_config(name_or_path) -> Tuple[str, dict]:
    label = str(name_or_path)
    presets = _load_presets()
    if label in presets:
        return label, dict(presets[label])
    path = Path(label)
    if label and (path.suffix == ".toml" or path.is_file()):
        if not path.is_file():
            raise ConfigError(f"config file {label!r} does not exist")
        try:
            cfg = tomllib.loads(path.read_text(encoding="utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"config {label!r} does not parse: {exc}") from None
        if not cfg:
            raise ConfigError(f"config {label!r} is empty")
        return path.stem, cfg
    raise ConfigError(f"unknown preset {label!r}; shipped presets: "
                      + ", ".join(available_presets()))


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"config is missing the required key {key!r}")
    return cfg[key]


def _floats(value, key: str) -> List[float]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [float(value)]
    try:
        out = [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(f"{key!r} must be a number or a list of numbers") from None
    if not out:
        raise ConfigError(f"{key!r} must not be empty")
    return out


def _pair(value, key: str) -> Tuple[float, float]:
    vals = _floats(value, key)
    if len(vals) != 2:
        raise ConfigError(f"{key!r} must hold exactly two numbers")
    return vals[0], vals[1]


def _axis_of(cfg: dict) -> AxisSpec:
    kind = cfg.get("axis", "sol-base")
    if kind == "ekt":
        try:
            params = EktParams(float(cfg.get("kappa", -1.0)),
                               float(cfg.get("tau", 0.0)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return ekt_axis(params)
    if kind == "sol-base":
        return sol_base_axis()
    if kind == "sol-diag-plus":
        return sol_diag_axis(1)
    if kind == "sol-diag-minus":
        return sol_diag_axis(-1)
    raise ConfigError(f"unknown axis {kind!r}")


# ------------------------------------------------------------------
# pipelines
# ------------------------------------------------------------------

def _run_solve(cfg, run_dir, formats):
    axis = _axis_of(cfg)
    H = float(_require(cfg, "H"))
    bracket = _pair(cfg["bracket"], "bracket") if "bracket" in cfg else None
    tol = float(cfg.get("residual_tol", 1e-10))
    res = find_zero_height(axis, H, bracket, residual_tol=tol)
    artifacts = []
    if "csv" in formats:
        res.profile.to_csv(run_dir / "profile.csv")
        write_closed_curve_csv(axis, res.closed_curve, run_dir / "closed_curve.csv")
        artifacts += ["profile.csv", "closed_curve.csv"]
    if "svg" in formats:
        write_section_svg(res.closed_curve, run_dir / "section.svg")
        artifacts.append("section.svg")
    results = {
        "launch-height": _fmt(res.parameter),
        "residual": _fmt(res.residual),
        "half-width": _fmt(res.profile.Rplus),
        "turning-number": str(res.turn),
        "classification": res.classification,
    }
    if res.diagonal_gap is not None:
        results["width-depth-gap"] = _fmt(res.diagonal_gap)
    return results, artifacts


def _run_family(cfg, run_dir, formats):
    axis = _axis_of(cfg)
    h_list = _floats(_require(cfg, "H"), "H")
    report = sweep_family(axis, h_list)
    if not report.rows:
        raise SolverError("every member of the family sweep failed: "
                          + "; ".join(msg for _, msg in report.failures))
    artifacts = []
    if "csv" in formats:
        _write_csv(run_dir / "family.csv",
                   "H,parameter,radius,width,depth,residual",
                   [(r.H, r.parameter, r.radius, r.width, r.depth, r.residual)
                    for r in report.rows])
        artifacts.append("family.csv")
    results = {
        "members": str(len(report.rows)),
        "nested": str(report.is_nested()).lower(),
    }
    for H, msg in report.failures:
        results[f"failed-H-{H:g}"] = msg
    return results, artifacts


def _run_immersed(cfg, run_dir, formats):
    H = float(_require(cfg, "H"))
    turn = int(_require(cfg, "turn"))
    aim = str(cfg.get("aim", "YAxis"))
    bracket = _pair(_require(cfg, "bracket"), "bracket")
    tol = float(cfg.get("defect_tol", 1e-6))
    arc_cap = float(cfg.get("max_arc_length", 80.0))
    res = find_immersed(H, turn, aim, bracket, defect_tol=tol,
                        max_arc_length=arc_cap)
    axis = sol_base_axis()
    artifacts = []
    if "csv" in formats:
        write_closed_curve_csv(axis, res.closed_curve, run_dir / "closed_curve.csv")
        artifacts.append("closed_curve.csv")
    if "svg" in formats:
        write_section_svg(res.closed_curve, run_dir / "section.svg")
        artifacts.append("section.svg")
    results = {
        "launch-offset": _fmt(res.parameter),
        "junction-defect": _fmt(res.residual),
        "junction-arc": _fmt(res.T),
        "turning-number": str(res.turn),
        "crossings": str(res.crossings),
        "classification": res.classification,
    }
    return results, artifacts


def _flux_row(params: EktParams, H: float):
    profile = ekt_flux_profile(params, H)
    return weight_flux_residual(params, profile)


def _run_flux(cfg, run_dir, formats):
    kappas = _floats(cfg.get("kappa", [-1.0]), "kappa")
    taus = _floats(cfg.get("tau", [0.0]), "tau")
    tol_abs = float(cfg.get("tol", cfg.get("tol_abs", 1e-6)))
    tol_rel = float(cfg.get("tol_rel", 0.0))
    artifacts = []

    if "table" in cfg:
        # horizontal diameter table: closed form against integration,
        # folded over the bundle curvatures which must not move it
        name = str(cfg["table"])
        scales = _floats(cfg.get("h_scale", [1.0]), "h_scale")
        fixed = _floats(cfg.get("h_fixed", []), "h_fixed") if "h_fixed" in cfg else []
        rows = []
        worst = 0.0
        for kappa in kappas:
            root = math.sqrt(-kappa)
            h_values = []
            for H in [f * root for f in scales] + fixed:
                if H > root / 2.0 and H not in h_values:
                    h_values.append(H)
            for H in h_values:
                closed = diameter_closed_form(kappa, H)
                spread = [2.0 * _flux_row(EktParams(kappa, tau), H).R_numeric
                          for tau in taus]
                residual = max(max(abs(d - closed) for d in spread),
                               max(spread) - min(spread))
                worst = max(worst, residual)
                rows.append((kappa, H, closed, spread[0], residual))
        if "csv" in formats:
            _write_csv(run_dir / name, "kappa,H,2R_closed,2R_numeric,residual",
                       rows)
            artifacts.append(name)
        if worst > tol_abs:
            raise SolverError(f"diameter residual {worst:.3g} exceeds the "
                              f"allowed {tol_abs:g}")
        return {"rows": str(len(rows)), "max-residual": _fmt(worst)}, artifacts

    h_list = _floats(cfg.get("H", [1.0]), "H")
    reports = [_flux_row(EktParams(kappa, tau), H)
               for kappa in kappas for tau in taus for H in h_list]
    if "csv" in formats:
        _write_csv(run_dir / "flux.csv",
                   "kappa,tau,H,R_closed,R_numeric,lhs,rhs,residual,"
                   "side_cancellation,bottom_term",
                   [(r.kappa, r.tau, r.H, r.R_closed, r.R_numeric, r.lhs,
                     r.rhs, r.residual, r.side_cancellation, r.bottom_term)
                    for r in reports])
        artifacts.append("flux.csv")
    worst = max(r.residual for r in reports)
    gate = tol_abs + tol_rel * max(abs(r.lhs) for r in reports)
    if worst > gate:
        raise SolverError(f"flux residual {worst:.3g} exceeds the allowed "
                          f"{gate:g}")
    results = {
        "rows": str(len(reports)),
        "max-residual": _fmt(worst),
        "max-diameter-gap": _fmt(max(abs(r.R_numeric - r.R_closed)
                                     for r in reports)),
    }
    return results, artifacts


def _run_mesh(cfg, run_dir, formats):
    axis = _axis_of(cfg)
    H = float(_require(cfg, "H"))
    s_lo, s_hi = _pair(cfg.get("s_range", [-2.0, 2.0]), "s_range")
    rings = int(cfg.get("rings", 17))
    samples = int(cfg.get("samples", 600))
    res = find_zero_height(axis, H,
                           _pair(cfg["bracket"], "bracket") if "bracket" in cfg
                           else None)
    curve = extend_by_symmetry(res.profile, ["reflect-x-axis"], samples=samples)
    mesh = sweep_mesh(axis, curve, (s_lo, s_hi), rings, H=H)
    artifacts = []
    if "obj" in formats:
        write_obj(mesh, run_dir / "surface.obj")
        artifacts.append("surface.obj")
    if "csv" in formats:
        write_closed_curve_csv(axis, curve, run_dir / "closed_curve.csv")
        artifacts.append("closed_curve.csv")
    if "svg" in formats:
        write_section_svg(curve, run_dir / "section.svg")
        artifacts.append("section.svg")
    results = {
        "launch-height": _fmt(res.parameter),
        "half-width": _fmt(res.profile.Rplus),
        "rings": str(len(mesh.s_values)),
        "columns": str(mesh.ring_size),
        "faces": str(len(mesh.faces)),
    }
    return results, artifacts


_PIPELINES = {
    "solve": _run_solve,
    "sweep-family": _run_family,
    "immersed-search": _run_immersed,
    "verify-flux": _run_flux,
    "export-mesh": _run_mesh,
}

_ALL_FORMATS = frozenset({"csv", "svg", "obj"})


# ------------------------------------------------------------------
# manifest and run driver
# ------------------------------------------------------------------

def _render(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return _fmt(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_render(v) for v in value)
    return str(value)


def _write_manifest(run_dir: Path, name: str, cfg: dict,
                    results: dict, artifacts: List[str]):
    inputs, tolerances = [], []
    for key in sorted(k for k in cfg if k != "pipeline"):
        line = f"{key.replace('_', '-')} = {_render(cfg[key])}"
        (tolerances if "tol" in key else inputs).append(line)
    lines = [
        "[experiment]",
        f"name = {name}",
        f"pipeline = {cfg['pipeline']}",
        "",
        "[versions]",
        f"cmcyl = {metadata.version('cmcyl')}",
        f"numpy = {np.__version__}",
        f"scipy = {scipy.__version__}",
        f"python = {platform.python_version()}",
        "",
        "[inputs]", *inputs,
        "",
        "[tolerances]", *tolerances,
        "",
        "[results]", *(f"{k} = {v}" for k, v in results.items()),
        "",
        "[artifacts]", *artifacts,
    ]
    (run_dir / "manifest.txt").write_text("\n".join(lines) + "\n",
                                          encoding="ascii")


def _out_root(out_root) -> Path:
    if out_root is not None:
        return Path(out_root)
    env = os.environ.get(ENV_OUT_DIR)
    return Path(env) if env else Path("cmcyl-out")


def _execute(name: str, cfg: dict, out_root=None,
             formats: frozenset = _ALL_FORMATS) -> Tuple[Path, dict]:
    pipeline = cfg.get("pipeline")
    if not pipeline:
        raise ConfigError("config names no pipeline")
    runner = _PIPELINES.get(pipeline)
    if runner is None:
        raise ConfigError(f"unknown pipeline {pipeline!r}; expected one of "
                          + ", ".join(sorted(_PIPELINES)))
    run_dir = _out_root(out_root) / name
    run_dir.mkdir(parents=True, exist_ok=True)
    results, artifacts = runner(cfg, run_dir, formats)
    _write_manifest(run_dir, name, cfg, results, artifacts)
    return run_dir, results


def run_experiment(name_or_path, *, out_root=None) -> Path:
    """Run a shipped preset or a TOML config file; returns the run directory.

    The directory name is the preset name (or the config file's stem), so a
    repeated run overwrites its own artifacts and nothing else. A manifest
    listing inputs, versions, tolerances and headline results lands next to
    the data files.
    """
    name, cfg = _resolve_config(name_or_path)
    run_dir, _ = _execute(name, cfg, out_root)
    return run_dir
