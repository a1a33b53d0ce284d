import random
from fractions import Fraction

import pytest

from antiprelie import Family, get_family, instantiate

DENOMS = (1, 1, 1, 2, 3)


def rand_fraction(rng: random.Random, lo=-4, hi=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(DENOMS))


def random_assignment(fam: Family, rng: random.Random) -> dict:
    """Random rational parameters satisfying the family's constraints."""
    for _ in range(100):
        assignment = {p: rand_fraction(rng) for p in fam.params}
        try:
            fam.check_constraints(assignment)
            return assignment
        except Exception:
            continue
    raise RuntimeError(f"could not satisfy constraints of {fam.name}")


def random_instance(name: str, rng: random.Random, prime=None):
    fam = get_family(name)
    assignment = random_assignment(fam, rng)
    branch = rng.choice(fam.branch_values) if fam.branch else None
    return instantiate(fam, assignment, branch=branch, prime=prime)


@pytest.fixture
def rng():
    return random.Random(20240811)


ACCEPTANCE_LINES = []


def record_acceptance(num: int, passed: bool, detail: str) -> str:
    line = f"ACCEPTANCE {num}: {'PASS' if passed else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append((num, line))
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
