"""Text and JSON rendering of analysis results.

Polynomials are printed unit-normalized in the variable ``t``; cyclotomic
coefficients use ``zeta`` for the primitive root of unity and the evaluation
point is written ``z``.
"""
from __future__ import annotations

import json
import math
from typing import Any

from .deformation import DeformabilityReport

__all__ = ["report_to_dict", "format_report_text", "emit_report", "dumps", "format_group"]


def _order(r) -> int | str:
    return "infinity" if r == math.inf else int(r)


def format_group(torsion, betti: int) -> str:
    parts = [f"Z/{d}" for d in torsion] + ["Z"] * betti
    return " + ".join(parts) if parts else "0"


def report_to_dict(r: DeformabilityReport) -> dict[str, Any]:
    return {
        "presentation": r.presentation,
        "h1": {"torsion": list(r.torsion), "betti": r.betti},
        "sigma": {
            "cyclotomic_order": r.cyclotomic_order,
            "torsion_exponents": list(r.sigma),
            "generators": dict(r.sigma_generators),
        },
        "phi": dict(zip(r.sigma_generators, r.phi)),
        "z_minpoly": r.z_minpoly,
        "delta": [str(d) for d in r.deltas],
        "symmetric": r.symmetric,
        "zero_order": _order(r.zero_order),
        "dim_h1_plus": r.dim_h1_plus,
        "dim_h1_minus": r.dim_h1_minus,
        "obstruction_solvable": r.obstruction_solvable,
        "d_plus": None if r.d_plus is None else [str(v) for v in r.d_plus.values],
        "verdict": r.verdict.value,
        "components": {"dims": list(r.component_dims), "transverse": r.transverse},
        "float_check": [
            {
                "check": c.name,
                "root": [round(c.root.real, 12), round(c.root.imag, 12)],
                "exact": c.exact,
                "float": c.numeric,
                "agrees": c.agrees,
            }
            for c in r.float_checks
        ],
        "warnings": list(r.warnings),
    }


def _yn(flag) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def format_report_text(r: DeformabilityReport) -> str:
    gens = list(r.sigma_generators)
    lines = [
        f"presentation: {r.presentation}",
        f"H1: {format_group(r.torsion, r.betti)}",
        "sigma (zeta_{} exponents): {}".format(
            r.cyclotomic_order, " ".join(f"{g}={e}" for g, e in r.sigma_generators.items())
        ),
        "phi: " + " ".join(f"{g}={v}" for g, v in zip(gens, r.phi)),
        f"z minpoly: {r.z_minpoly}",
    ]
    lines += [f"Delta_{k}: {d}" for k, d in enumerate(r.deltas)]
    lines += [
        f"symmetric: {_yn(r.symmetric)}",
        f"zero order: {_order(r.zero_order)}",
        f"dim H1(C+): {'n/a' if r.dim_h1_plus is None else r.dim_h1_plus}",
        f"dim H1(C-): {'n/a' if r.dim_h1_minus is None else r.dim_h1_minus}",
    ]
    if r.d_plus is not None:
        lines.append("d+: (" + ", ".join(str(v) for v in r.d_plus.values) + ")")
    lines.append(f"obstruction solvable: {_yn(r.obstruction_solvable)}")
    lines.append(f"verdict: {r.verdict.value}")
    if r.component_dims:
        comp = "dims " + ", ".join(str(d) for d in r.component_dims)
        if r.transverse:
            comp += ", transverse"
        lines.append(f"components: {comp}")
    if r.float_checks:
        ok = sum(c.agrees for c in r.float_checks)
        lines.append(f"float check: {ok}/{len(r.float_checks)} decisions agree")
    for w in r.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def emit_report(r: DeformabilityReport, fmt: str = "text") -> str:
    if fmt == "json":
        return dumps(report_to_dict(r))
    if fmt == "text":
        return format_report_text(r)
    raise ValueError(f"unknown format {fmt!r}")
