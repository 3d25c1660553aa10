"""Command-line front end: ``krein-bc validate|spectrum|green|check|relation``.

Configs are JSON files describing a model and a boundary pair; complex matrix
entries are [re, im] two-element arrays:

    {
      "model": "star",            // or "point3d"
      "n": 3,
      "centers": [[0,0,0], ...],  // point3d only, length n
      "A": [[[re,im], ...], ...], // n x n
      "B": [[[re,im], ...], ...]
    }

Exit codes are uniform across subcommands: 0 on success, 1 on mathematical
failure (validation, singularity, a failed check), 2 on malformed input.
The environment variable KREIN_BC_THREADS caps scan parallelism (0 = auto,
unset = serial).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import boundary, krein, linrel, matops, models
from .errors import (
    BadRange,
    CoincidentPoints,
    ConfigParseError,
    KreinBCError,
    PointAtCenter,
)


def parse_complex_literal(text: str) -> complex:
    """Parse a human-typable complex literal like '-1+0.5i', '2i' or '3'."""
    t = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not t:
        raise ConfigParseError("empty complex literal")
    if t.endswith("i"):
        t = t[:-1] + "j"
        if t in ("j", "+j", "-j"):
            t = t[:-1] + "1j"
        elif t[-2] in "+-":
            t = t[:-1] + "1j"
    try:
        return complex(t)
    except ValueError as exc:
        raise ConfigParseError(f"cannot parse complex literal {text!r}") from exc


def format_complex(value: complex) -> str:
    return f"{value.real:.12g}{value.imag:+.12g}i"


def _matrix_from_json(node, n: int, name: str) -> np.ndarray:
    try:
        m = np.asarray(node, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigParseError(f"matrix {name} is not an array of [re, im] pairs") from exc
    if m.shape != (n, n, 2):
        raise ConfigParseError(
            f"matrix {name} must be {n}x{n} with [re, im] entries, got shape {m.shape}"
        )
    return m[..., 0] + 1j * m[..., 1]


def load_config(path: str) -> dict:
    """Read and structurally validate a model/boundary config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigParseError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigParseError("config root must be a JSON object")
    kind = raw.get("model")
    if kind not in ("star", "point3d"):
        raise ConfigParseError(f"model must be 'star' or 'point3d', got {kind!r}")
    try:
        n = int(raw["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigParseError("config needs an integer field 'n'") from exc
    if n < 1:
        raise ConfigParseError(f"n must be >= 1, got {n}")
    cfg = {"model": kind, "n": n}
    if kind == "point3d":
        centers = raw.get("centers")
        if centers is None:
            raise ConfigParseError("point3d configs need a 'centers' list")
        pts = np.asarray(centers, dtype=float)
        if pts.shape != (n, 3):
            raise ConfigParseError(f"centers must be an {n}x3 array, got shape {pts.shape}")
        cfg["centers"] = pts.tolist()
    elif "centers" in raw:
        raise ConfigParseError("'centers' is only valid for point3d configs")
    for name in ("A", "B"):
        if name not in raw:
            raise ConfigParseError(f"config is missing matrix {name!r}")
        cfg[name] = _matrix_from_json(raw[name], n, name)
    return cfg


def build_model(cfg: dict) -> models.SpectralModel:
    if cfg["model"] == "star":
        return models.StarGraphModel(cfg["n"])
    return models.PointInteraction3DModel(cfg["centers"])


def build_pair(cfg: dict, validated: bool = True) -> boundary.BoundaryPair:
    if validated:
        return boundary.validate(cfg["A"], cfg["B"])
    return boundary.BoundaryPair(cfg["n"], cfg["A"], cfg["B"], validated=False)


def _threads_from_env() -> int | None:
    raw = os.environ.get("KREIN_BC_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigParseError(f"KREIN_BC_THREADS must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ConfigParseError("KREIN_BC_THREADS must be >= 0")
    if value == 0:
        return os.cpu_count() or 1
    return value


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    defect = boundary.hermiticity_defect(cfg["A"], cfg["B"])
    try:
        boundary.validate(cfg["A"], cfg["B"])
    except KreinBCError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}")
        return 1
    rk = matops.rank(np.hstack([cfg["A"], cfg["B"]]))
    print(f"PASS hermiticity_defect={defect:.6e} rank={rk}")
    return 0


def cmd_spectrum(args) -> int:
    cfg = load_config(args.config)
    pair = build_pair(cfg)
    model = build_model(cfg)
    scan_cfg = krein.ScanConfig(
        z_min=args.zmin,
        z_max=args.zmax,
        grid_points=args.grid,
        refine_tol=args.tol,
    )
    hits = krein.scan_eigenvalues(pair, model, scan_cfg, threads=_threads_from_env())
    payload = {
        "command": "spectrum",
        "model": cfg["model"],
        "n": cfg["n"],
        "scan": {
            "z_min": scan_cfg.z_min,
            "z_max": scan_cfg.z_max,
            "grid_points": scan_cfg.grid_points,
            "refine_tol": scan_cfg.refine_tol,
            "detect_threshold": scan_cfg.detect_threshold,
        },
        "hits": [
            {
                "z": hit.z,
                "sigma_min": hit.sigma_min,
                "residual": hit.residual,
                "multiplicity": hit.multiplicity,
                "null_vector": [[float(v.real), float(v.imag)] for v in hit.null_vector],
            }
            for hit in hits
        ],
    }
    out, close = _open_out(args.out)
    try:
        json.dump(payload, out, indent=2, sort_keys=True)
        out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def _parse_point_fields(model: models.SpectralModel, fields: list[str], row_num: int):
    """Split one CSV row into the two evaluation points of the model."""
    if isinstance(model, models.StarGraphModel):
        if len(fields) != 2:
            raise ConfigParseError(
                f"row {row_num}: star rows need 2 'edge:coordinate' fields, got {len(fields)}"
            )
        points = []
        for field in fields:
            try:
                edge_text, coord_text = field.split(":")
                points.append((int(edge_text), float(coord_text)))
            except ValueError as exc:
                raise ConfigParseError(f"row {row_num}: bad star point {field!r}") from exc
        return points[0], points[1]
    if len(fields) == 2:  # two quoted "x,y,z" triples
        fields = [part for field in fields for part in field.split(",")]
    if len(fields) != 6:
        raise ConfigParseError(
            f"row {row_num}: point3d rows need 6 coordinates (two triples), got {len(fields)}"
        )
    try:
        values = [float(v) for v in fields]
    except ValueError as exc:
        raise ConfigParseError(f"row {row_num}: bad coordinate in {fields!r}") from exc
    return np.array(values[:3]), np.array(values[3:])


def _point_repr(model: models.SpectralModel, point) -> str:
    if isinstance(model, models.StarGraphModel):
        return f"{point[0]}:{point[1]:.12g}"
    return ",".join(f"{v:.12g}" for v in point)


def cmd_green(args) -> int:
    cfg = load_config(args.config)
    pair = build_pair(cfg)
    model = build_model(cfg)
    z = parse_complex_literal(args.z)
    try:
        with open(args.points, "r", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and any(f.strip() for f in row)]
    except OSError as exc:
        raise ConfigParseError(f"cannot read points file {args.points}: {exc}") from exc
    records = []
    for idx, fields in enumerate(rows, start=1):
        x, y = _parse_point_fields(model, [f.strip() for f in fields], idx)
        try:
            value = krein.perturbed_green(pair, model, x, y, z)
            records.append((x, y, repr(value.real), repr(value.imag)))
        except (CoincidentPoints, PointAtCenter) as exc:
            records.append((x, y, f"ERROR:{type(exc).__name__}", ""))
    out, close = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "y", "re_g", "im_g"])
        for x, y, re_val, im_val in records:
            writer.writerow([_point_repr(model, x), _point_repr(model, y), re_val, im_val])
    finally:
        if close:
            out.close()
    return 0


def _random_resolvent_z(rng) -> complex:
    re = rng.uniform(-6.0, 2.0)
    im = rng.uniform(0.3, 2.0) * (1.0 if rng.uniform() < 0.5 else -1.0)
    return complex(re, im)


def _random_model_point(model: models.SpectralModel, rng):
    if isinstance(model, models.StarGraphModel):
        return (int(rng.integers(0, model.n)), float(rng.uniform(0.05, 3.0)))
    while True:
        x = model.centers[rng.integers(0, model.n)] + rng.uniform(-2.0, 2.0, size=3)
        if np.linalg.norm(x - model.centers, axis=1).min() > 0.3:
            return x


def cmd_check(args) -> int:
    cfg = load_config(args.config)
    pair = build_pair(cfg, validated=not args.skip_validation)
    model = build_model(cfg)
    rng = np.random.default_rng(args.seed)
    samples = args.samples
    failures = 0

    def report(name: str, err: float, tol: float) -> None:
        nonlocal failures
        ok = err <= tol
        if not ok:
            failures += 1
        print(f"{name:<18s} max_error={err:.6e} tolerance={tol:.1e} {'PASS' if ok else 'FAIL'}")

    err_forms = 0.0
    err_abstract = 0.0
    for _ in range(samples):
        z = _random_resolvent_z(rng)
        q = model.q_matrix(z)
        c1 = krein.correction_matrix_form1(pair, q)
        c2 = krein.correction_matrix_form2(pair, q)
        err_forms = max(err_forms, float(np.abs(c1 - c2).max()))
        c_rel = krein.abstract_correction(pair, model, z)
        err_abstract = max(err_abstract, float(np.abs(c_rel - c1).max()))
    report("form-equivalence", err_forms, 1e-10)
    report("abstract-oracle", err_abstract, 1e-10)

    if isinstance(model, models.StarGraphModel):
        err_qid = 0.0
        for _ in range(samples):
            z = _random_resolvent_z(rng)
            zeta = _random_resolvent_z(rng)
            gram = model.gamma_gram(z, zeta)
            oracle = models.star_overlap_quadrature(model, z, zeta)
            err_qid = max(err_qid, float(np.abs(gram - oracle).max()))
        report("q-identity-quad", err_qid, 1e-8)

    err_herm = 0.0
    for k in range(samples):
        z = -rng.uniform(0.2, 8.0) if k % 2 == 0 else _random_resolvent_z(rng)
        x = _random_model_point(model, rng)
        y = _random_model_point(model, rng)
        left = krein.perturbed_green(pair, model, x, y, z)
        right = np.conj(krein.perturbed_green(pair, model, y, x, np.conj(z)))
        err_herm = max(
            err_herm, float(abs(left - right) / (1.0 + max(abs(left), abs(right))))
        )
    report("hermiticity", err_herm, 1e-10)

    lam = pair.relation()
    canonical = boundary.canonical_range_form(pair)
    if lam.dim == canonical.dim and canonical.dim > 0:
        resid_a = lam.basis - canonical.basis @ (canonical.basis.conj().T @ lam.basis)
        resid_b = canonical.basis - lam.basis @ (lam.basis.conj().T @ canonical.basis)
        err_canon = max(np.linalg.norm(resid_a, 2), np.linalg.norm(resid_b, 2))
    else:
        err_canon = 1.0
    report("canonical-range", float(err_canon), 1e-9)

    return 1 if failures else 0


def cmd_relation(args) -> int:
    cfg = load_config(args.config)
    if args.op == "is-selfadjoint":
        rel = linrel.lambda_ab(cfg["A"], cfg["B"])
        print("true" if rel.is_selfadjoint() else "false")
        return 0
    if args.op == "adjoint":
        rel = linrel.lambda_ab(cfg["A"], cfg["B"]).adjoint()
        _print_matrix(rel.basis)
        return 0
    pair = build_pair(cfg)  # to-unitary and canonical need a valid pair
    if args.op == "to-unitary":
        _print_matrix(boundary.to_unitary(pair))
        return 0
    _print_matrix(boundary.canonical_range_form(pair).basis)
    return 0


def _print_matrix(m: np.ndarray) -> None:
    for row in np.atleast_2d(m):
        print(" ".join(format_complex(v) for v in row))


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krein-bc",
        description="Boundary-condition resolvent toolkit: validation, spectra, Green kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the two admissibility conditions on (A, B)")
    p.add_argument("config")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spectrum", help="scan [zmin, zmax] for negative eigenvalues")
    p.add_argument("config")
    p.add_argument("--zmin", type=float, required=True)
    p.add_argument("--zmax", type=float, required=True)
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--tol", type=float, default=1e-10, help="refinement tolerance in z")
    p.add_argument("--out", default="-", help="output JSON path ('-' for stdout)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("green", help="evaluate the perturbed Green kernel on point pairs")
    p.add_argument("config")
    p.add_argument("--z", required=True, help="spectral parameter, e.g. '-1+0.5i'")
    p.add_argument("--points", required=True, help="CSV of point pairs")
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("check", help="run the built-in identity checks on a config")
    p.add_argument("config")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--skip-validation",
        action="store_true",
        help="run the checks even if (A, B) fails validation (negative controls)",
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("relation", help="print relation data derived from (A, B)")
    p.add_argument("config")
    p.add_argument(
        "--op",
        required=True,
        choices=["to-unitary", "canonical", "adjoint", "is-selfadjoint"],
    )
    p.set_defaults(func=cmd_relation)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, which matches the input-error code
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (ConfigParseError, BadRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KreinBCError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
