"""Presentations of target spaces and algebra maps between them.

A target is always a presented algebra: free commutative polynomial rings
(affine space), quotients by relation ideals (the conifold, singular
curves), or finitely presented noncommutative algebras (the quadric-product
commutator algebra, quiver path algebras with user-supplied relations).
The function ring is the fundamental object; point sets never appear.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, UnknownTarget
from .ideals import nc_normal_form
from .mpoly import (
    FreePolyBounded,
    MultiPoly,
    commutator,
    parse_poly_text,
    reduce_modulo,
)
from .scalars import ONE

NC_DEGREE_CAP = 4

_AFFINE_SPACE_RE = re.compile(r"^affine_space\((\d+)\)$")


@dataclass(frozen=True)
class TargetPresentation:
    name: str
    generators: tuple
    relations: tuple
    commutative: bool

    def __post_init__(self):
        for rel in self.relations:
            if self.commutative:
                if not isinstance(rel, MultiPoly) or tuple(rel.variables) != self.generators:
                    raise ValueError("commutative relations must be MultiPoly on the generators")
            else:
                if not isinstance(rel, FreePolyBounded) or tuple(rel.generators) != self.generators:
                    raise ValueError("noncommutative relations must be FreePolyBounded on the generators")

    def relation_texts(self):
        return [r.to_text() for r in self.relations]

    def to_json(self):
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relations": self.relation_texts(),
            "commutative": self.commutative,
        }

    @staticmethod
    def from_json(data):
        if isinstance(data, str):
            return builtin_target(data)
        try:
            name = data["name"]
            generators = list(data["generators"])
            relation_texts = list(data.get("relations", []))
            commutative = bool(data.get("commutative", True))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad target schema: {exc}") from None
        relations = tuple(
            parse_poly_text(t, generators, commutative=commutative, cap=NC_DEGREE_CAP)
            for t in relation_texts
        )
        return TargetPresentation(name, tuple(generators), relations, commutative)


def affine_space(l: int) -> TargetPresentation:
    if l < 1:
        raise UnknownTarget(f"affine_space({l})")
    if l == 1:
        return builtin_target("affine_line")
    return TargetPresentation(
        name=f"affine_space({l})",
        generators=tuple(f"y{k + 1}" for k in range(l)),
        relations=(),
        commutative=True,
    )


def _quadric_product_relations(gens):
    def word(*idx):
        return FreePolyBounded.word(gens, NC_DEGREE_CAP, idx)

    products = [word(0, 2), word(1, 3), word(0, 3), word(1, 2)]
    rels = []
    for a in range(4):
        for b in range(a + 1, 4):
            rels.append(commutator(products[a], products[b]))
    return tuple(rels)


def builtin_target(key: str) -> TargetPresentation:
    """Builtin presentations: affine_line, affine_space(l), conifold,
    r_xi, nodal_cubic."""
    if not isinstance(key, str):
        raise UnknownTarget(key)
    match = _AFFINE_SPACE_RE.match(key.replace(" ", ""))
    if match:
        return affine_space(int(match.group(1)))
    if key == "affine_line":
        return TargetPresentation("affine_line", ("y",), (), True)
    if key == "conifold":
        gens = ("z1", "z2", "z3", "z4")
        rel = parse_poly_text("z1*z2 - z3*z4", gens)
        return TargetPresentation("conifold", gens, (rel,), True)
    if key == "r_xi":
        gens = ("xi1", "xi2", "xi3", "xi4")
        return TargetPresentation("r_xi", gens, _quadric_product_relations(gens), False)
    if key == "nodal_cubic":
        gens = ("x", "y")
        rel = parse_poly_text("y^2 - x^3 - x^2", gens)
        return TargetPresentation("nodal_cubic", gens, (rel,), True)
    raise UnknownTarget(key)


BUILTIN_KEYS = ("affine_line", "affine_space(l)", "conifold", "r_xi", "nodal_cubic")


# ---------------------------------------------------------------------------
# algebra maps
# ---------------------------------------------------------------------------


@dataclass
class AlgebraMap:
    """Ring map source -> destination given by one image per generator."""

    source: TargetPresentation
    destination: TargetPresentation
    images: tuple  # destination elements, aligned with source.generators

    def __post_init__(self):
        if len(self.images) != len(self.source.generators):
            raise ValueError("one image per source generator required")

    def push_element(self, elem):
        """Image of a source element under the map.

        Commutative source monomials map to the ordered product of
        generator images (ascending generator index); free-algebra words
        map factor by factor.
        """
        dest = self.destination
        if dest.commutative:
            zero = MultiPoly.zero(dest.generators)
            one = MultiPoly.constant(dest.generators, ONE)
        else:
            zero = FreePolyBounded.zero(dest.generators, NC_DEGREE_CAP)
            one = FreePolyBounded.constant(dest.generators, NC_DEGREE_CAP, ONE)
        acc = zero
        if isinstance(elem, MultiPoly):
            items = [(exps, c) for exps, c in elem.sorted_terms(descending=False)]
            for exps, c in items:
                term = one.scale(c)
                for idx, e in enumerate(exps):
                    for _ in range(e):
                        term = term * self.images[idx]
                acc = acc + term
        else:
            for word, c in elem.sorted_terms(descending=False):
                term = one.scale(c)
                for g in word:
                    term = term * self.images[g]
                acc = acc + term
        return acc


@dataclass
class MapCheckEntry:
    relation_text: str
    image_text: str
    normal_form_text: str
    ok: bool


@dataclass
class MapVerificationReport:
    entries: list
    well_defined: bool

    def to_json(self):
        return {
            "well_defined": self.well_defined,
            "relations": [
                {
                    "relation": e.relation_text,
                    "image": e.image_text,
                    "normal_form": e.normal_form_text,
                    "ok": e.ok,
                }
                for e in self.entries
            ],
        }


def validate_algebra_map(m: AlgebraMap) -> MapVerificationReport:
    """Check that every source relation maps to zero in the destination.

    Noncommutative destinations reduce via the degree-truncated normal
    form; commutative destinations reduce by remainder division against
    the destination relations.  A free source is trivially well defined.
    """
    entries = []
    ok_all = True
    for rel in m.source.relations:
        image = m.push_element(rel)
        if m.destination.commutative:
            nf = reduce_modulo(image, list(m.destination.relations))
        else:
            nf = nc_normal_form(image, list(m.destination.relations), NC_DEGREE_CAP)
        ok = nf.is_zero()
        ok_all = ok_all and ok
        entries.append(
            MapCheckEntry(
                relation_text=rel.to_text(),
                image_text=image.to_text(),
                normal_form_text=nf.to_text(),
                ok=ok,
            )
        )
    return MapVerificationReport(entries=entries, well_defined=ok_all)


def ambient_a4() -> TargetPresentation:
    """Affine 4-space in the conifold's coordinates z1..z4."""
    return TargetPresentation(
        "affine_space(4)", ("z1", "z2", "z3", "z4"), (), True
    )


def quadric_product_map() -> AlgebraMap:
    """The projection sending the affine 4-space coordinates to the four
    quadratic products of the commutator algebra: z1 -> xi1*xi3,
    z2 -> xi2*xi4, z3 -> xi1*xi4, z4 -> xi2*xi3."""
    source = ambient_a4()
    dest = builtin_target("r_xi")

    def word(*idx):
        return FreePolyBounded.word(dest.generators, NC_DEGREE_CAP, idx)

    images = (word(0, 2), word(1, 3), word(0, 3), word(1, 2))
    return AlgebraMap(source=source, destination=dest, images=images)


def conifold_to_quadric_map() -> AlgebraMap:
    """Same images as the projection map but with the conifold relation in
    the source; not well defined, which is the point."""
    return AlgebraMap(
        source=builtin_target("conifold"),
        destination=builtin_target("r_xi"),
        images=quadric_product_map().images,
    )


def algebra_map_from_json(data) -> AlgebraMap:
    try:
        source = TargetPresentation.from_json(data["source"])
        destination = TargetPresentation.from_json(data["destination"])
        raw_images = data["images"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad map schema: {exc}") from None
    images = []
    for gen in source.generators:
        if gen not in raw_images:
            raise ParseError(f"missing image for generator {gen!r}")
        images.append(
            parse_poly_text(
                raw_images[gen],
                destination.generators,
                commutative=destination.commutative,
                cap=NC_DEGREE_CAP,
            )
        )
    return AlgebraMap(source=source, destination=destination, images=tuple(images))
