"""Command line entry point ``alexdef``.

Exit codes: 0 on success, 2 for invalid input or unmet preconditions,
3 when an internal consistency check fails.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from .deformation import CharacterAlpha, cocycle_generator, coboundary_vector, deformability_verdict, dim_h1
from .errors import AlexdefError, InternalInconsistencyError
from .fields import cyclotomic_field, parse_minpoly
from .lattice import canonical_splitting, h1_structure
from .laurent import rational_roots
from .presentation import Presentation, parse_presentation, reduce_word
from .report import dumps, emit_report, format_group, report_to_dict
from .twisted import TwistSetup, alexander_sequence, is_symmetric, jacobian, parse_sigma, torsion_order_check

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def load_presentation(path: str) -> Presentation:
    """Read a presentation file; bare names of bundled examples also work."""
    p = Path(path)
    if p.exists():
        return parse_presentation(p.read_text(), name=p.stem)
    bundled = resources.files("alexdef") / "data" / (path if path.endswith(".pres") else path + ".pres")
    if bundled.is_file():
        return parse_presentation(bundled.read_text(), name=Path(str(bundled)).stem)
    raise FileNotFoundError(f"no such presentation file: {path}")


def _sigma_dict(tw: TwistSetup, P: Presentation) -> dict:
    return {
        "cyclotomic_order": tw.order,
        "torsion_exponents": list(tw.sigma),
        "generators": dict(zip(P.generators, tw.generator_values())),
    }


def _sigma_text(tw: TwistSetup, P: Presentation) -> str:
    vals = " ".join(f"{g}={e}" for g, e in zip(P.generators, tw.generator_values()))
    return f"sigma (zeta_{tw.order} exponents): {vals}"


def _setup(args) -> tuple[Presentation, TwistSetup]:
    P = load_presentation(args.presentation)
    split = canonical_splitting(h1_structure(P))
    return P, parse_sigma(args.sigma, P, split)


def _character(tw: TwistSetup, minpoly_text: str) -> CharacterAlpha:
    return CharacterAlpha(tw, parse_minpoly(minpoly_text, cyclotomic_field(tw.order)))


def cmd_h1(args) -> str:
    P = load_presentation(args.presentation)
    h = h1_structure(P)
    split = canonical_splitting(h) if h.betti == 1 else None
    if args.format == "json":
        data = {"presentation": P.name, "h1": {"torsion": list(h.torsion), "betti": h.betti}, "splitting": None}
        if split is not None:
            data["splitting"] = {
                "phi": dict(zip(P.generators, split.phi)),
                "s_p": P.format_word(reduce_word(enumerate(split.s_p_image))),
                "p": {g: list(row) for g, row in zip(P.generators, split.p)},
            }
        return dumps(data)
    lines = [
        f"presentation: {P.name}",
        f"H1: {format_group(h.torsion, h.betti)}",
        "torsion: " + (" ".join(map(str, h.torsion)) or "none"),
        f"betti: {h.betti}",
    ]
    if split is not None:
        lines.append("phi: " + " ".join(f"{g}={v}" for g, v in zip(P.generators, split.phi)))
        lines.append("s_p(1): " + P.format_word(reduce_word(enumerate(split.s_p_image))))
        lines.append("p: " + " ".join(f"{g}={tuple(row)}" for g, row in zip(P.generators, split.p)))
    else:
        lines.append("splitting: n/a (betti number is not 1)")
    return "\n".join(lines) + "\n"


def cmd_alexander(args) -> str:
    P, tw = _setup(args)
    J = jacobian(P, tw)
    seq = alexander_sequence(P, tw)
    d0 = seq.deltas[0]
    sym, unit = (False, None) if d0.is_zero() else is_symmetric(d0)
    tcheck = torsion_order_check(P) if tw.is_trivial() else None
    if args.format == "json":
        data = {
            "presentation": P.name,
            "sigma": _sigma_dict(tw, P),
            "jacobian": [[str(e) for e in row] for row in J.entries],
            "delta": [str(d) for d in seq.deltas],
            "positive_rank": seq.positive_rank,
            "symmetric": sym,
            "symmetry_unit": None if unit is None else str(unit),
            "torsion_check": None,
        }
        if tcheck is not None and not tcheck.skipped:
            data["torsion_check"] = {
                "delta_at_one": str(tcheck.delta_at_one),
                "torsion_order": tcheck.torsion_order,
                "agrees": tcheck.agrees,
            }
        return dumps(data)
    lines = [f"presentation: {P.name}", _sigma_text(tw, P), "jacobian:"]
    lines += ["  " + row for row in J.format().splitlines()] if J.rows else ["  (no relators)"]
    lines += [f"Delta_{k}: {d}" for k, d in enumerate(seq.deltas)]
    if seq.positive_rank:
        lines.append("Alexander module has positive rank (Delta_0 = 0)")
    else:
        lines.append(f"symmetric: {'yes, unit ' + str(unit) if sym else 'no'}")
    if tcheck is not None and not tcheck.skipped:
        verdict = "agrees" if tcheck.agrees else "MISMATCH"
        lines.append(f"|Delta(1)| = {abs(tcheck.delta_at_one)}, |tors H1| = {tcheck.torsion_order}: {verdict}")
    return "\n".join(lines) + "\n"


def cmd_zeros(args) -> str:
    P, tw = _setup(args)
    d0 = alexander_sequence(P, tw).deltas[0]
    zeros = [] if d0.is_zero() else rational_roots(d0)
    if args.format == "json":
        return dumps(
            {
                "presentation": P.name,
                "sigma": _sigma_dict(tw, P),
                "delta0": str(d0),
                "positive_rank": d0.is_zero(),
                "zeros": [{"root": str(r), "multiplicity": k} for r, k in zeros],
            }
        )
    lines = [f"presentation: {P.name}", _sigma_text(tw, P), f"Delta_0: {d0}"]
    if d0.is_zero():
        lines.append("Delta_0 vanishes identically: every point is a zero")
    elif not zeros:
        lines.append("no rational zeros")
    lines += [f"zero t = {r} of multiplicity {k}" for r, k in zeros]
    return "\n".join(lines) + "\n"


def cmd_cocycle(args) -> str:
    P, tw = _setup(args)
    alpha = _character(tw, args.root_minpoly)
    d = cocycle_generator(P, alpha)
    b = coboundary_vector(P, alpha)
    if args.format == "json":
        return dumps(
            {
                "presentation": P.name,
                "sigma": _sigma_dict(tw, P),
                "z_minpoly": alpha.minpoly_string(),
                "dim_h1": dim_h1(P, alpha),
                "d_plus": dict(zip(P.generators, (str(v) for v in d.values))),
                "coboundary": dict(zip(P.generators, (str(v) for v in b))),
            }
        )
    lines = [
        f"presentation: {P.name}",
        _sigma_text(tw, P),
        f"z minpoly: {alpha.minpoly_string()}",
        "d+: " + " ".join(f"{g}={v}" for g, v in zip(P.generators, d.values)),
        "coboundary of 1: " + " ".join(f"{g}={v}" for g, v in zip(P.generators, b)),
    ]
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> str:
    P, tw = _setup(args)
    fc = args.mode == "float-check"
    if args.scan_rational:
        d0 = alexander_sequence(P, tw).deltas[0]
        if d0.is_zero():
            minpolys = []
        else:
            minpolys = [f"t-({r})" for r, _ in rational_roots(d0)]
        reports = [deformability_verdict(P, _character(tw, mp), float_check=fc) for mp in minpolys]
        if args.format == "json":
            return dumps([report_to_dict(r) for r in reports])
        if not reports:
            return f"presentation: {P.name}\nno rational zeros of Delta_0 to analyze\n"
        return "\n".join(emit_report(r, "text") for r in reports)
    report = deformability_verdict(P, _character(tw, args.root_minpoly), float_check=fc)
    return emit_report(report, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alexdef",
        description="Twisted Alexander polynomials and deformations of abelian representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, sigma=True):
        sp.add_argument("-p", "--presentation", required=True, help="presentation file (gens:/rels: format)")
        if sigma:
            sp.add_argument(
                "--sigma",
                default="trivial",
                help="'trivial', 'gen=e,...' (zeta_m exponents on generators) or 'torsion:e1,e2,...'",
            )
        sp.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("h1", help="first homology and the canonical splitting"), sigma=False)
    common(sub.add_parser("alexander", help="twisted Jacobian and Alexander polynomials"))
    common(sub.add_parser("zeros", help="rational zeros of Delta_0 with multiplicities"))
    sp = sub.add_parser("cocycle", help="print the generating cocycle d+")
    common(sp)
    sp.add_argument("--root-minpoly", required=True, help="minimal polynomial of z, e.g. 't^2-6*t+1'")
    sp = sub.add_parser("analyze", help="full deformability verdict")
    common(sp)
    root = sp.add_mutually_exclusive_group(required=True)
    root.add_argument("--root-minpoly", help="minimal polynomial of z, e.g. 't^2-6*t+1'")
    root.add_argument("--scan-rational", action="store_true", help="analyze every rational zero of Delta_0")
    sp.add_argument("--mode", choices=("exact", "float-check"), default="exact")
    return parser


COMMANDS = {
    "h1": cmd_h1,
    "alexander": cmd_alexander,
    "zeros": cmd_zeros,
    "cocycle": cmd_cocycle,
    "analyze": cmd_analyze,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = COMMANDS[args.command](args)
    except InternalInconsistencyError as exc:
        print(f"alexdef: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (AlexdefError, OSError) as exc:
        print(f"alexdef: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
