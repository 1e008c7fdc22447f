from itertools import combinations_with_replacement

import pytest
from hypothesis import settings

from necsurf import (
    NECSignature,
    build_theta,
    canonical_presentation,
    derive_delta_hat,
    first_smooth_epimorphism,
    quotient_disc_signature,
    reduced_area,
)

settings.register_profile("repro", derandomize=True, max_examples=100)
settings.load_profile("repro")


def signature_battery_cases(max_gamma=5, max_r=4, max_period=8):
    """All hyperbolic (gamma; -; [periods]) with gamma <= 5, r <= 4 and
    period entries in 2..8."""
    cases = []
    for gamma in range(1, max_gamma + 1):
        for r in range(max_r + 1):
            for periods in combinations_with_replacement(range(2, max_period + 1), r):
                sig = NECSignature(False, gamma, periods)
                if reduced_area(sig) > 0:
                    cases.append((gamma, periods))
    return cases


def action_battery_data(max_gamma=5, max_r=4, max_order=12):
    """One valid action datum (the lexicographically first epimorphism)
    per admissible (gamma, periods, n) with 2n <= max_order."""
    data = []
    for n in (2, 4, 6):
        if 2 * n > max_order:
            continue
        divisors = [d for d in range(2, n + 1) if n % d == 0]
        for gamma in range(1, max_gamma + 1):
            for r in range(max_r + 1):
                for periods in combinations_with_replacement(divisors, r):
                    sig = NECSignature(False, gamma, periods)
                    if reduced_area(sig) <= 0:
                        continue
                    datum = first_smooth_epimorphism(gamma, periods, 2 * n)
                    if datum is not None:
                        data.append(datum)
    return data


@pytest.fixture(scope="session")
def signature_battery():
    return signature_battery_cases()


@pytest.fixture(scope="session")
def derived_battery(signature_battery):
    """(gamma, periods, K, theta, derived kernel) for the whole battery;
    shared because Reidemeister-Schreier is the expensive step."""
    rows = []
    for gamma, periods in signature_battery:
        K = canonical_presentation(quotient_disc_signature(gamma, periods))
        theta = build_theta(K)
        rows.append((gamma, periods, K, theta, derive_delta_hat(K, theta)))
    return rows


@pytest.fixture(scope="session")
def action_battery():
    return action_battery_data()
