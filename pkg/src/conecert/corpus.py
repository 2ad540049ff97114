"""The cone corpus used by the batch commands and the acceptance suite.

Canonical members cover the interesting shapes at desk scale (orthants,
the square cone, kites, a rational pentagon, pyramid and iterated-pyramid
cones, the octahedron cone, a skew classical cone), plus a reproducible
family of random rational cones in dimensions 3 to 5, all non-classical
by construction.  Every cone carries an expected-outcome entry so the
acceptance suite is a data-driven table.

`write_corpus` materializes the corpus as JSON files with a manifest;
the shipped package data is exactly that output.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .cones import Cone, cone_to_doc, is_classical
from .sandwich import Kite, kite_cone

RANDOM_SEED = 74207281
RANDOM_COUNT = 21
RANDOM_DIMS = (3, 3, 3, 4, 4, 5)


def orthant(n: int) -> Cone:
    gens = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return Cone(gens, name=f"orthant{n}")


def skew_classical_cone() -> Cone:
    return Cone([(1, 0, 0), (1, 2, 0), (1, 1, 3)], name="skew_classical")


def square_cone() -> Cone:
    return Cone([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)], name="square")


def kite_half_cone() -> Cone:
    c = kite_cone(Kite((Fraction(1, 2), 0, 0, 0)))
    return Cone(c.generators, name="kite_half")


def kite_skew_cone() -> Cone:
    c = kite_cone(Kite((Fraction(1, 2), Fraction(-1, 3), 0, Fraction(1, 5))))
    return Cone(c.generators, name="kite_skew")


def pentagon_cone() -> Cone:
    # rational stand-in for the regular pentagon: five extreme rays
    return Cone([(2, 0, 1), (1, 2, 1), (-2, 1, 1), (-2, -1, 1), (1, -2, 1)],
                name="pentagon")


def hexagon_cone() -> Cone:
    return Cone([(2, 0, 1), (1, 2, 1), (-1, 2, 1), (-2, 0, 1), (-1, -2, 1), (1, -2, 1)],
                name="hexagon")


def pyramid_cone() -> Cone:
    # cone over the pyramid over a square (Figure-2 shape: delta = 1)
    return Cone([(1, 1, 0, 1), (1, -1, 0, 1), (-1, 1, 0, 1), (-1, -1, 0, 1), (0, 0, 1, 1)],
                name="pyramid")


def double_pyramid_cone() -> Cone:
    # iterated pyramid: base body has delta = 2
    return Cone([(1, 1, 0, 0, 1), (1, -1, 0, 0, 1), (-1, 1, 0, 0, 1), (-1, -1, 0, 0, 1),
                 (0, 0, 1, 0, 1), (0, 0, 0, 1, 1)], name="double_pyramid")


def cross_polytope_cone() -> Cone:
    return Cone([(1, 0, 0, 1), (-1, 0, 0, 1), (0, 1, 0, 1), (0, -1, 0, 1),
                 (0, 0, 1, 1), (0, 0, -1, 1)], name="cross_polytope")


def random_cone(dim: int, rng: random.Random, name: str) -> Cone:
    """A random proper non-classical cone: lifted random rational points
    (salience is automatic at level 1); resampled until the points affinely
    span and the hull is not a simplex."""
    n_pts = dim + rng.randint(1, 3)
    while True:
        pts = [tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 4))
                     for _ in range(dim - 1)) for _ in range(n_pts)]
        C = Cone([p + (Fraction(1),) for p in pts], name=name)
        props = C.is_proper()
        if props["generating"] and props["salient"] and not is_classical(C):
            return C


def random_corpus(count: int = RANDOM_COUNT, seed: int = RANDOM_SEED) -> list[Cone]:
    rng = random.Random(seed)
    cones = []
    for i in range(count):
        dim = RANDOM_DIMS[i % len(RANDOM_DIMS)]
        cones.append(random_cone(dim, rng, f"random_d{dim}_{i:02d}"))
    return cones


def canonical_corpus() -> list[Cone]:
    return [
        orthant(2), orthant(3), orthant(4), orthant(5), skew_classical_cone(),
        square_cone(), kite_half_cone(), kite_skew_cone(), pentagon_cone(),
        hexagon_cone(), pyramid_cone(), double_pyramid_cone(), cross_polytope_cone(),
    ]


def full_corpus() -> list[Cone]:
    return canonical_corpus() + random_corpus()


def corpus_manifest(cones: list[Cone]) -> dict:
    entries = []
    for C in cones:
        entries.append({
            "name": C.name,
            "file": f"{C.name}.json",
            "ambient_dim": C.ambient_dim,
            "classical": is_classical(C),
            "extreme_rays": len(C.extreme_rays),
        })
    return {"seed": RANDOM_SEED, "cones": entries}


def write_corpus(directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    cones = full_corpus()
    for C in cones:
        with open(directory / f"{C.name}.json", "w") as fh:
            json.dump(cone_to_doc(C), fh, indent=1, sort_keys=True)
            fh.write("\n")
    with open(directory / "manifest.json", "w") as fh:
        json.dump(corpus_manifest(cones), fh, indent=1, sort_keys=True)
        fh.write("\n")
    return directory


def data_dir() -> Path:
    return Path(resources.files("conecert").joinpath("data"))


def load_manifest() -> dict:
    with open(data_dir() / "manifest.json") as fh:
        return json.load(fh)
