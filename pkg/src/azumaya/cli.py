"""Command-line front end: JSON/CSV I/O, demo scenarios, reproducible reports.

Exit codes: 0 ok, 2 validation failure, 3 parse failure, 4 numeric-layer
degradation.  All randomness is seeded and the seed is recorded in the
report, so identical inputs and tolerances give byte-identical JSON.
"""

from __future__ import annotations

import hashlib
import json
import sys
from fractions import Fraction

import click

from . import __version__
from .deformations import (
    DEFAULT_BISECT_TOL,
    MorphismPath,
    SquareZeroDeformation,
    apply_square_zero,
    conifold_probe,
    scan_events,
    search_off_conifold,
)
from .errors import BraneError, NumericDegradation, ParseError
from .ideals import IdealPresentation
from .linalg import DEFAULT_CLUSTER_TOL, DEFAULT_SEED, ExactMatrix
from .morphisms import (
    AzumayaMorphism,
    decompose,
    image_ideal,
    is_cyclic,
    is_punctual,
    make_morphism,
    moduli_datum,
)
from .mpoly import MultiPoly
from .polys import gaussian_rational_roots
from .scalars import format_scalar
from .spectral import (
    SpectralPair,
    classical_limit_check,
    quantum_spectral_operator,
    spectral_curve,
    verify_containment,
)
from .targets import (
    algebra_map_from_json,
    builtin_target,
    conifold_to_quadric_map,
    quadric_product_map,
    validate_algebra_map,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4


def _digest(path):
    if path is None:
        return "-"
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def factored_ideal_text(ideal: IdealPresentation) -> str:
    """Display form of the ideal; univariate generators are split into
    exact linear factors over Q(i) when possible: ((y-3)^2)."""
    parts = []
    for gen in ideal.generators:
        parts.append(_factored_generator(gen, ideal.variables))
    return "(" + ", ".join(parts) + ")" if parts else "(0)"


def _factored_generator(gen: MultiPoly, variables) -> str:
    if len(variables) == 1:
        p = gen.to_univariate()
        if p.degree >= 1:
            roots, residual = gaussian_rational_roots(p)
            if residual.degree == 0 and roots and any(m > 1 for _, m in roots):
                name = variables[0]
                pieces = []
                for c, mult in sorted(
                    roots, key=lambda rm: (rm[0].re, rm[0].im)
                ):
                    if c.is_zero():
                        base = name
                    else:
                        txt = format_scalar(-c)
                        base = f"({name}+{txt})" if not txt.startswith("-") else f"({name}-{txt[1:]})"
                    pieces.append(base if mult == 1 else f"{base}^{mult}")
                return "*".join(pieces)
    return gen.to_text()


class RunContext:
    def __init__(self, tolerance, seed, degree_cap, as_json):
        self.tolerance = tolerance
        self.seed = seed
        self.degree_cap = degree_cap
        self.as_json = as_json

    def report(self, command, input_path, outputs):
        return {
            "command": command,
            "engine_version": __version__,
            "inputs_digest": _digest(input_path),
            "tolerances": {
                "cluster": self.tolerance,
                "bisect": float(DEFAULT_BISECT_TOL),
            },
            "seed": self.seed,
            "degree_cap": self.degree_cap,
            "outputs": outputs,
        }

    def emit(self, report, text_lines):
        if self.as_json:
            click.echo(json.dumps(report, sort_keys=True, indent=2))
        else:
            for line in text_lines:
                click.echo(line)


pass_ctx = click.make_pass_decorator(RunContext)


@click.group()
@click.option(
    "--tolerance",
    type=float,
    default=DEFAULT_CLUSTER_TOL,
    envvar="AZUMAYA_TOLERANCE",
    show_default=True,
    help="relative clustering tolerance for the numeric layer",
)
@click.option(
    "--seed",
    type=int,
    default=DEFAULT_SEED,
    envvar="AZUMAYA_SEED",
    show_default=True,
    help="seed for all randomized searches",
)
@click.option(
    "--degree-cap",
    type=int,
    default=None,
    envvar="AZUMAYA_DEGREE_CAP",
    help="vanishing-ideal degree cap (default 2*rank)",
)
@click.option(
    "--json/--text",
    "as_json",
    default=True,
    envvar="AZUMAYA_FORMAT_JSON",
    help="emit the JSON run report or human-readable text",
)
@click.pass_context
def main(ctx, tolerance, seed, degree_cap, as_json):
    """Exact computations with matrix points: image ideals, fuzzy-point
    decompositions, deformations, and spectral curves."""
    ctx.obj = RunContext(tolerance, seed, degree_cap, as_json)


def _run(ctx, command, input_path, fn):
    try:
        outputs, text_lines = fn()
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    except NumericDegradation as exc:
        click.echo(f"numeric degradation: {exc}", err=True)
        sys.exit(EXIT_NUMERIC)
    except BraneError as exc:
        click.echo(f"validation error: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    ctx.emit(ctx.report(command, input_path, outputs), text_lines)


@main.command()
@click.argument("morphism_file", type=click.Path(exists=True))
@pass_ctx
def image(ctx, morphism_file):
    """Image ideal of a morphism: reduced generators + standard monomials."""

    def body():
        phi = AzumayaMorphism.from_json(_load_json(morphism_file))
        ideal = image_ideal(phi, degree_cap=ctx.degree_cap)
        factored = factored_ideal_text(ideal)
        outputs = {
            "generators": ideal.generator_texts(),
            "standard_monomials": ideal.standard_monomial_texts(),
            "quotient_dimension": ideal.quotient_dimension,
            "factored": factored,
        }
        lines = [
            f"image ideal: {factored}",
            f"generators: {ideal.generator_texts()}",
            f"standard monomials: {ideal.standard_monomial_texts()}",
        ]
        return outputs, lines

    _run(ctx, "image", morphism_file, body)


@main.command(name="decompose")
@click.argument("morphism_file", type=click.Path(exists=True))
@pass_ctx
def decompose_cmd(ctx, morphism_file):
    """Fuzzy-point decomposition with module/image lengths and moduli data."""

    def body():
        phi = AzumayaMorphism.from_json(_load_json(morphism_file))
        dec = decompose(
            phi, tol=ctx.tolerance, seed=ctx.seed, degree_cap=ctx.degree_cap
        )
        punctual, _ = (len(dec.points) == 1), None
        datum = moduli_datum(phi, tol=ctx.tolerance, seed=ctx.seed)
        outputs = {
            "decomposition": dec.to_json(),
            "punctual": punctual,
            "moduli": datum.to_json(),
        }
        lines = [f"support points: {len(dec.points)} (punctual: {punctual})"]
        for p in dec.points:
            coords = ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in p.coordinates)
            lines.append(
                f"  ({coords})  module length {p.module_length}, image length {p.image_length}"
            )
        lines.append(f"image ideal: {factored_ideal_text(dec.image_ideal)}")
        lines.append(f"cyclic: {datum.cyclicity.status}")
        return outputs, lines

    _run(ctx, "decompose", morphism_file, body)


@main.command()
@click.argument("path_file", type=click.Path(exists=True))
@click.option("--samples", type=int, default=21, show_default=True)
@click.option("--window", nargs=2, type=str, default=None, help="override window, e.g. --window -1 1")
@click.option("--csv", "csv_path", type=click.Path(), default=None, help="write sampled decompositions as CSV")
@pass_ctx
def deform(ctx, path_file, samples, window, csv_path):
    """Scan a one-parameter family for Higgsing/recombination events."""

    def body():
        path = MorphismPath.from_json(_load_json(path_file))
        win = None
        if window is not None:
            win = (Fraction(window[0]), Fraction(window[1]))
        result = scan_events(
            path, window=win, samples=samples, tol=ctx.tolerance, seed=ctx.seed
        )
        if csv_path:
            _write_deform_csv(csv_path, result)
        outputs = {
            "events": [e.to_json() for e in result.events],
            "samples": len(result.samples),
            "csv": csv_path,
        }
        lines = [f"events: {len(result.events)}"]
        for e in result.events:
            lines.append(f"  t = {e.t:.8f}  {e.kind}  {e.before} -> {e.after}")
        return outputs, lines

    _run(ctx, "deform", path_file, body)


def _write_deform_csv(csv_path, result):
    with open(csv_path, "w") as fh:
        fh.write("t,cluster_count,points\n")
        for s in result.samples:
            dec = s.decomposition
            cells = []
            for p in dec.points:
                coords = ";".join(repr(z.real) + "/" + repr(z.imag) for z in p.coordinates)
                cells.append(f"{coords}:module={p.module_length}:image={p.image_length}")
            fh.write(f"{float(s.t)!r},{len(dec.points)},{'|'.join(cells)}\n")


@main.command()
@click.argument("pair_file", type=click.Path(exists=True))
@pass_ctx
def spectral(ctx, pair_file):
    """Classical spectral curve of a Higgs pair, with the containment
    certificate."""

    def body():
        pair = SpectralPair.from_json(_load_json(pair_file))
        cert = verify_containment(pair)
        outputs = {
            "curve": cert.curve.to_text(),
            "containment_verified": cert.verified,
        }
        lines = [f"spectral curve: {cert.curve.to_text()}", "containment: exact zero"]
        return outputs, lines

    _run(ctx, "spectral", pair_file, body)


@main.command()
@click.argument("pair_file", type=click.Path(exists=True))
@click.option("--seed-vector", type=str, default=None, help="comma-separated seed entries, e.g. '1,0'")
@click.option("--max-order", type=int, default=None)
@pass_ctx
def quantum(ctx, pair_file, seed_vector, max_order):
    """Quantum spectral operator for a cyclic vector, plus the classical
    limit comparison."""

    def body():
        pair = SpectralPair.from_json(_load_json(pair_file))
        vec = None
        if seed_vector is not None:
            vec = [v.strip() for v in seed_vector.split(",")]
        op = quantum_spectral_operator(
            pair, seed_vector=vec, max_order=max_order, seed=ctx.seed
        )
        limit = classical_limit_check(pair, op)
        outputs = {
            "operator": op.to_text(),
            "seed_vector": op.seed_texts(),
            "classical_limit": limit.to_json(),
        }
        lines = [
            f"quantum operator: {op.to_text()}",
            f"seed: {op.seed_texts()}",
            f"classical limit: {limit.relation} ({limit.limit_text} vs {limit.curve_text})",
        ]
        return outputs, lines

    _run(ctx, "quantum", pair_file, body)


@main.command(name="conifold-demo")
@click.option("--search-rank", type=int, default=3, show_default=True)
@click.option("--attempts", type=int, default=40, show_default=True)
@pass_ctx
def conifold_demo(ctx, search_rank, attempts):
    """Square-zero deformation demo over the quadric-product algebra.

    Validates the projection map, shows the lift of the conifold relation
    is nonzero, probes the standard two-unit deformation (support stays on
    the conifold), and runs the seeded off-conifold search.
    """

    def body():
        projection = validate_algebra_map(quadric_product_map())
        bad = validate_algebra_map(conifold_to_quadric_map())
        rxi = builtin_target("r_xi")
        zero = ExactMatrix.zeros(2)
        base = make_morphism(2, rxi, [zero, zero, zero, zero])
        e12 = ExactMatrix([[0, 1], [0, 0]])
        e21 = ExactMatrix([[0, 0], [1, 0]])
        deformation = SquareZeroDeformation(base, [e12, zero, e21, zero])
        probe = conifold_probe(deformation, tol=ctx.tolerance, seed=ctx.seed)
        search = search_off_conifold(
            max_rank=search_rank,
            attempts_per_rank=attempts,
            seed=ctx.seed,
            tol=ctx.tolerance,
        )
        outputs = {
            "projection_map_well_defined": projection.well_defined,
            "conifold_relation_lift": bad.to_json(),
            "two_unit_probe": probe.to_json(),
            "off_conifold_search": search.to_json(),
        }
        lines = [
            f"projection map well defined: {projection.well_defined}",
            f"conifold relation lifts to zero: {bad.well_defined} "
            f"(normal form: {bad.entries[0].normal_form_text})",
            f"two-unit deformation support: "
            + ", ".join(
                "(" + ",".join(str(c) for c in (p.exact_coordinates or p.coordinates)) + ")"
                + (" on" if p.on_conifold else " OFF")
                for p in probe.points
            ),
            f"off-conifold search: found={search.found} "
            f"checked={dict(sorted(search.checked.items()))}",
        ]
        for w in search.witnesses:
            lines.append(f"  witness at rank {w.rank}: off points {w.off_points}")
        return outputs, lines

    _run(ctx, "conifold-demo", None, body)


@main.command()
@click.argument("map_file", type=click.Path(exists=True))
@pass_ctx
def check(ctx, map_file):
    """Verify that an algebra map respects the source relations."""

    def body():
        amap = algebra_map_from_json(_load_json(map_file))
        report = validate_algebra_map(amap)
        outputs = report.to_json()
        lines = [f"well defined: {report.well_defined}"]
        for e in report.entries:
            lines.append(
                f"  {e.relation_text} -> {e.image_text}; normal form {e.normal_form_text} ({'ok' if e.ok else 'NOT ZERO'})"
            )
        return outputs, lines

    _run(ctx, "check", map_file, body)


if __name__ == "__main__":
    main()
