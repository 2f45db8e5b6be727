"""Bundled presentations of the worked examples."""

from importlib import resources

from ..presentation import Presentation, normalize, parse_presentation

NAMES = (
    "free2", "free3", "z_pm", "z2", "z3", "z_0_6_m1",
    "tripod", "two_points", "z5", "z_x_z2", "z_c0",
)


def path(name: str):
    return resources.files(__name__) / f"{name}.sgp"


def load(name: str) -> Presentation:
    return normalize(parse_presentation(path(name).read_text(encoding="utf-8")))
