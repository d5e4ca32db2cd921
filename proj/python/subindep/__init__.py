"""Independence of subalgebras and congruences in finite structures."""

import json

from ._core import (
    CRITERION_COUNT,
    InputError,
    ResourceError,
    Structure,
    UnsupportedError,
    all_congruences,
    build,
    close,
    coproduct,
    endomorphism_count,
    families,
    find_isomorphism,
    is_subuniverse,
    run_criterion,
)
from . import _core

__all__ = [
    "CRITERION_COUNT",
    "InputError",
    "Report",
    "ResourceError",
    "Structure",
    "UnsupportedError",
    "all_congruences",
    "build",
    "close",
    "coproduct",
    "decide_cong",
    "decide_sub",
    "endomorphism_count",
    "families",
    "find_isomorphism",
    "is_subuniverse",
    "run_criterion",
]


class Report:
    """Verdict of a decider with the same text and JSON the CLI prints."""

    def __init__(self, independent, text, data):
        self.independent = independent
        self.text = text
        self.data = data

    @property
    def witness(self):
        return self.data["witness"]

    @property
    def stats(self):
        return self.data["stats"]

    def __bool__(self):
        return self.independent

    def __repr__(self):
        return f"Report(independent={self.independent})"


def decide_sub(structure, a, b, homs="all", mode="weak"):
    verdict, text, raw = _core.decide_sub(structure, sorted(a), sorted(b), homs, mode)
    return Report(verdict, text, json.loads(raw))


def decide_cong(structure, a, b, max_size=12, shortcut=True):
    verdict, text, raw = _core.decide_cong(structure, sorted(a), sorted(b), max_size, shortcut)
    return Report(verdict, text, json.loads(raw))
