"""Bundled knot presentations (pretzel (5,-3,5), trefoil, figure-eight, unknot)."""

import json
from importlib.resources import files

from ..words import load_presentation

EXAMPLES = ("pretzel_5_-3_5", "trefoil", "figure_eight", "unknot")


def example_path(name):
    return str(files(__name__).joinpath(f"{name}.json"))


def load_example(name):
    return load_presentation(files(__name__).joinpath(f"{name}.json").read_bytes())


def pretzel_witness():
    """The published pretzel assignment as a list of permutations (one-line notation)."""
    from ..groups import perm_from_one_line

    doc = json.loads(files(__name__).joinpath("pretzel_5_-3_5_witness.json").read_text())
    pres = load_example("pretzel_5_-3_5")
    return [perm_from_one_line(doc["images_text"][g], 5) for g in pres.generators]
