import os
import random
import shlex
from fractions import Fraction
from pathlib import Path

# Intermediate polynomials inside subresultant gcd sequences can legitimately
# outgrow the CLI-facing safety rail on randomized stress inputs.
os.environ.setdefault("LVK_MAX_DEGREE", "4096")

import pytest

from lvk.multipoly import MultiPoly
from lvk.ratfunc import RatFunc

CATALOG = Path(__file__).resolve().parent.parent / "catalog"


def random_poly(rng: random.Random, arity, max_deg=3, max_terms=4, nonzero=False):
    terms = {}
    for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
        e = [0] * arity
        budget = rng.randint(0, max_deg)
        for _ in range(budget):
            e[rng.randrange(arity)] += 1
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if c:
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + c
    p = MultiPoly(arity, terms)
    if nonzero and p.is_zero():
        return MultiPoly.constant(arity, Fraction(rng.randint(1, 4)))
    return p


def random_ratfunc(rng: random.Random, arity, max_deg=2):
    num = random_poly(rng, arity, max_deg)
    den = random_poly(rng, arity, max_deg, nonzero=True)
    return RatFunc(num, den)


def catalog_entries():
    """(name, argv) for every bundled example, with paths made absolute."""
    out = []
    for cmd in sorted(CATALOG.glob("*.cmd")):
        argv = shlex.split(cmd.read_text().replace("{dir}", str(CATALOG)))
        out.append((cmd.stem, argv))
    return out


@pytest.fixture
def rng():
    return random.Random(20260823)
