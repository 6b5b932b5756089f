import random

import pytest

from nfcover.constructor import default_prime_pool, random_system
from nfcover.covering import CongruenceClass, CoveringSystem
from nfcover.ideal import ideal_from_generators, principal
from nfcover.number_field import make_quadratic_field, make_rationals

FIELDS = {
    "Q": make_rationals(),
    "Q(i)": make_quadratic_field(-1),
    "Q(sqrt-5)": make_quadratic_field(-5),
    "Q(sqrt2)": make_quadratic_field(2),
    "Q(sqrt-3)": make_quadratic_field(-3),
}

CORPUS_CAP = 10**4
CORPUS_MAX_CLASSES = 64


def zsys(pairs):
    """Covering system over Z from ``[(rep, modulus), ...]``."""
    Z = FIELDS["Q"]
    return CoveringSystem(tuple(CongruenceClass((a,), principal(Z, (n,))) for a, n in pairs))


CLASSIC = [(0, 2), (1, 4), (3, 8), (7, 8)]


def random_ideal(F, rng, lo=-6, hi=6, max_norm=None):
    while True:
        k = rng.choice((1, 1, 2))
        gens = [tuple(rng.randint(lo, hi) for _ in range(F.degree)) for _ in range(k)]
        if not any(any(g) for g in gens):
            continue
        I = ideal_from_generators(F, gens)
        if max_norm is not None and not 1 < I.norm <= max_norm:
            continue
        return I


def build_corpus(F, count, seed0=0):
    pool = default_prime_pool(F, (2, 3, 5))
    pool = [P for P in pool if P.norm <= 25]
    out = []
    for s in range(count):
        rng = random.Random(1000 * seed0 + s)
        steps = rng.randint(0, 7)
        result = random_system(F, seed=s + 7919 * seed0, steps=steps, prime_pool=pool,
                               cap=CORPUS_CAP, max_classes=CORPUS_MAX_CLASSES)
        out.append(result.system)
    return out


_CORPUS_CACHE = {}


def corpus(name, count=100):
    key = (name, count)
    if key not in _CORPUS_CACHE:
        _CORPUS_CACHE[key] = build_corpus(FIELDS[name], count)
    return _CORPUS_CACHE[key]


@pytest.fixture(params=list(FIELDS), ids=list(FIELDS))
def field_name(request):
    return request.param


@pytest.fixture
def F(field_name):
    return FIELDS[field_name]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
