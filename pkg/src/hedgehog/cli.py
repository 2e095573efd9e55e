"""Command-line front end.

Usage: ``hedgehog <task> --config <path> [--out <path>] [--tol <float>]``.

Tasks: ``resonances``, ``count``, ``strip``, ``smatrix``, ``phase-field``,
``ab-demo``.  The config is a JSON document; results are written as a JSON
document containing the echoed config (with defaults filled in), a
conventions block, collected warnings, and the per-task payload.  Figure
PNGs and delimited field files are written next to the result document.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
import warnings

import numpy as np

from . import __version__
from . import abflux, fields, plots, resonance, scattering
from .errors import ConfigError, HedgehogError
from .geometry import f1_eval, make_geometry
from .model import CouplingMatrix, HedgehogSystem, preset_coupling

__all__ = ["main", "run"]

TASKS = ("resonances", "count", "strip", "smatrix", "phase-field", "ab-demo")

TOL_MIN, TOL_MAX = 1e-14, 1e-4

#: Statement of the sign and branch conventions the numbers follow, echoed
#: into every result document so downstream consumers need not guess.
CONVENTIONS = {
    "momentum_plane": "resonances and scattering poles lie in the lower "
    "half of the momentum plane (Im k < 0); embedded eigenvalues on the "
    "real axis",
    "resonance_condition": "zeros of F1(k) minus the effective coupling "
    "term, where the term tends to the lead count times -i/(2k) for the "
    "free junction",
    "logarithm_branch": "principal branch, argument in (-pi, pi]",
    "complex_numbers": "serialized as {re, im} pairs",
    "phase_fields": "principal argument in (-pi, pi]; singular grid points "
    "emitted as empty CSV fields",
}


def _c(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _parse_complex(obj) -> complex:
    if isinstance(obj, dict):
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    if isinstance(obj, (int, float)):
        return complex(obj)
    raise ConfigError(f"expected a number or {{re, im}} pair, got {obj!r}")


def _require(config: dict, key: str, task: str):
    if key not in config:
        raise ConfigError(f"task {task!r} requires config key {key!r}")
    return config[key]


def _build_coupling(spec, leads: int) -> CouplingMatrix:
    if not isinstance(spec, dict):
        raise ConfigError("coupling must be an object")
    if "matrix" in spec:
        rows = spec["matrix"]
        mat = np.array(
            [[_parse_complex(x) for x in row] for row in rows], dtype=complex
        )
        return CouplingMatrix(mat, n_contacts=int(spec.get("n_contacts", 1)))
    preset = spec.get("preset")
    if preset is None:
        raise ConfigError("coupling needs either 'preset' or 'matrix'")
    return preset_coupling(str(preset), leads, spec.get("params"))


def _build_system(config: dict) -> HedgehogSystem:
    geo_spec = _require(config, "geometry", "system")
    if not isinstance(geo_spec, dict) or "kind" not in geo_spec:
        raise ConfigError("geometry must be an object with 'kind' and 'size'")
    geometry = make_geometry(str(geo_spec["kind"]), float(geo_spec.get("size", 1.0)))
    leads = int(config.get("leads", 1))
    coupling = _build_coupling(_require(config, "coupling", "system"), leads)
    return HedgehogSystem(geometry=geometry, leads=leads, coupling=coupling)


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not (TOL_MIN <= tol <= TOL_MAX):
        raise ConfigError(f"tol must lie in [{TOL_MIN}, {TOL_MAX}], got {tol}")
    return tol


def _threads_from_env() -> int | None:
    raw = os.environ.get("HEDGEHOG_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"HEDGEHOG_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"HEDGEHOG_THREADS must be a positive integer, got {raw!r}")
    return value


def _resonance_payload(items) -> list[dict]:
    return [
        {
            "re": r.location.real,
            "im": r.location.imag,
            "multiplicity": r.multiplicity,
            "kind": r.kind,
            "residual": r.residual,
        }
        for r in items
    ]


def _sibling(out_path: str, suffix: str) -> str:
    base, _ = os.path.splitext(out_path)
    return base + suffix


def _task_resonances(system, config, tol, out_path):
    region = [float(x) for x in _require(config, "region", "resonances")]
    config["region"] = region
    found = resonance.find_resonances(system, region, tol=tol)
    figure = plots.save_resonances_png(
        found, _sibling(out_path, "_resonances.png")
    )
    return {"resonances": _resonance_payload(found)}, [figure]


def _task_count(system, config, tol, out_path):
    radii = [float(r) for r in _require(config, "radii", "count")]
    config["radii"] = radii
    rows = resonance.counting_report(system, radii)
    table = [
        {
            "radius": row["radius"],
            "count": row["count"],
            "net_winding": row["net"],
            "samples": row["samples"],
        }
        for row in rows
    ]
    figure = plots.save_counting_png(table, _sibling(out_path, "_counting.png"))
    return {"counting_table": table}, [figure]


def _task_strip(system, config, tol, out_path):
    windows = [[float(x) for x in w] for w in _require(config, "windows", "strip")]
    config["windows"] = windows
    report = resonance.strip_bound(system, windows, tol=tol)
    figure = plots.save_resonances_png(
        report.resonances[-1],
        _sibling(out_path, "_resonances.png"),
        title="resonances, largest window",
    )
    return {
        "windows": [list(w) for w in report.search_windows],
        "max_abs_im": list(report.max_abs_im),
        "stable": report.stable,
        "resonances_largest_window": _resonance_payload(report.resonances[-1]),
    }, [figure]


def _task_smatrix(system, config, tol, out_path):
    momenta = [_parse_complex(k) for k in _require(config, "momenta", "smatrix")]
    config["momenta"] = [_c(k) for k in momenta]
    entries = []
    checks = []
    for k in momenta:
        solve = scattering.s_matrix(system, k)
        check = scattering.s_identities_check(system, k, tolerance=tol)
        checks.append(check)
        entries.append(
            {
                "momentum": _c(k),
                "s_matrix": [[_c(v) for v in row] for row in solve.s_matrix],
                "interior_amplitudes": [_c(v) for v in solve.interior_amplitudes],
                "condition_number": solve.condition_number,
                "inverse_deviation": check["inverse_deviation"],
                "conjugation_deviation": check["conjugation_deviation"],
                "passed": check["passed"],
            }
        )
    figure = plots.save_smatrix_png(
        momenta, checks, _sibling(out_path, "_smatrix.png")
    )
    return {"entries": entries, "all_passed": all(c["passed"] for c in checks)}, [
        figure
    ]


def _task_phase_field(system, config, tol, out_path):
    region = [float(x) for x in _require(config, "region", "phase-field")]
    grid = config.get("grid", {})
    nx = int(grid.get("nx", 400))
    ny = int(grid.get("ny", 400))
    which = str(config.get("function", "regularized_green"))
    config["region"], config["grid"] = region, {"nx": nx, "ny": ny}
    config["function"] = which
    if which == "regularized_green":
        func = lambda k: f1_eval(system.geometry, k)
    elif which == "resonance":
        func = lambda k: resonance.resonance_function(system, k)
    else:
        raise ConfigError(
            f"unknown phase-field function {which!r}; "
            "use 'regularized_green' or 'resonance'"
        )
    field = fields.compute_phase_field(func, region, nx, ny)
    csv_path = _sibling(out_path, "_phase.csv")
    fields.write_phase_csv(field, csv_path)
    extra = [csv_path]
    if config.get("pgm", False):
        pgm_path = _sibling(out_path, "_phase.pgm")
        fields.write_phase_pgm(field, pgm_path)
        extra.append(pgm_path)
    figure = plots.save_phase_png(
        field, _sibling(out_path, "_phase.png"), title=f"arg of {which} field"
    )
    finite = int(np.count_nonzero(~np.isnan(field.phase)))
    return {
        "csv": csv_path,
        "grid": {"nx": nx, "ny": ny},
        "finite_points": finite,
        "singular_points": nx * ny - finite,
    }, extra + [figure]


def _task_ab_demo(config, tol, out_path):
    ab_spec = config.get("ab", {})
    radius = float(ab_spec.get("R", 1.0))
    alpha = float(ab_spec.get("alpha", 0.5))
    rho = float(ab_spec.get("rho", 0.0))
    region = [float(x) for x in config.get("region", [0.1, 10.0, -3.0, -1e-3])]
    grid = config.get("grid", {})
    n_re = int(grid.get("nx", 100))
    n_im = int(grid.get("ny", 100))
    config["ab"] = {"R": radius, "alpha": alpha, "rho": rho}
    config["region"], config["grid"] = region, {"nx": n_re, "ny": n_im}
    system = abflux.make_ab_system(radius, alpha=alpha, rho=rho)
    report = abflux.true_resonance_scan(system, region, n_re=n_re, n_im=n_im)
    res = np.linspace(region[0], region[1], n_re)
    ims = np.linspace(region[2], region[3], n_im)
    amp = np.tile(
        ((math.sqrt(math.pi) / 2.0) * np.exp(ims * radius))[:, None], (1, n_re)
    )
    csv_path = _sibling(out_path, "_scan.csv")
    with open(csv_path, "w", encoding="ascii") as fh:
        fh.write("re,im,incoming_amp\n")
        for j, im in enumerate(ims):
            for i, re in enumerate(res):
                fh.write(f"{float(re)!r},{float(im)!r},{float(amp[j, i])!r}\n")
    figure = plots.save_scan_png(
        res, ims, np.asarray(amp), _sibling(out_path, "_scan.png"),
        title="minimum incoming amplitude scan",
    )
    verdict = report.min_incoming_amp > 0.0 and not report.trivial
    return {
        "min_incoming_amp": report.min_incoming_amp,
        "argmin_momentum": _c(report.argmin_momentum),
        "closed_form_deviation_max": report.closed_form_deviation_max,
        "n_points": report.n_points,
        "no_true_resonances": "confirmed on grid" if verdict else "NOT confirmed",
        "scan_csv": csv_path,
    }, [csv_path, figure]


def run(task: str, config: dict, out_path: str, tol_override=None) -> dict:
    """Execute one task and return the result document (also written to disk)."""
    if task not in TASKS:
        raise ConfigError(f"unknown task {task!r}; choose from {TASKS}")
    if not isinstance(config, dict):
        raise ConfigError("config root must be a JSON object")
    config = dict(config)
    tol = _check_tol(tol_override if tol_override is not None else config.get("tol", 1e-10))
    config["tol"] = tol
    threads = _threads_from_env()

    collected: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if task == "ab-demo":
            payload, artifacts = _task_ab_demo(config, tol, out_path)
        else:
            system = _build_system(config)
            config.setdefault("leads", system.leads)
            handler = {
                "resonances": _task_resonances,
                "count": _task_count,
                "strip": _task_strip,
                "smatrix": _task_smatrix,
                "phase-field": _task_phase_field,
            }[task]
            payload, artifacts = handler(system, config, tol, out_path)
        collected = [str(w.message) for w in caught]

    document = {
        "version": __version__,
        "task": task,
        "config": config,
        "threads": threads,
        "conventions": CONVENTIONS,
        "warnings": collected,
        "artifacts": [str(a) for a in artifacts],
        "payload": payload,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
    }
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=2)
        fh.write("\n")
    return document


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hedgehog",
        description="Resonances, scattering matrices, and counting "
        "asymptotics for compact manifolds with halfline leads.",
    )
    parser.add_argument("task", choices=TASKS)
    parser.add_argument("--config", required=True, help="path to JSON config")
    parser.add_argument("--out", default=None, help="result document path")
    parser.add_argument("--tol", type=float, default=None, help="override tol")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    out_path = args.out or f"{args.task.replace('-', '_')}_result.json"
    try:
        document = run(args.task, config, out_path, tol_override=args.tol)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HedgehogError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out_path}")
    for artifact in document["artifacts"]:
        print(f"wrote {artifact}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
