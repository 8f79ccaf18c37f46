"""Presburger formulas in one free variable and their cell decompositions."""

from .cells import (NotAGroup, PeriodicSet, Point, Stripe, canonical_cells, cell_from_json,
                    cells_contain, cells_to_json, decompose, formula_of_cells,
                    recognize_subgroup)
from .parser import parse
from .qe import eliminate_quantifiers
from .syntax import evaluate, free_vars, to_text

__all__ = ["NotAGroup", "PeriodicSet", "Point", "Stripe", "canonical_cells",
           "cell_from_json", "cells_contain", "cells_to_json", "decompose",
           "formula_of_cells", "recognize_subgroup", "parse", "eliminate_quantifiers",
           "evaluate", "free_vars", "to_text"]
