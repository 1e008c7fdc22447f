"""Acceptance suite: one test per criterion, each printing a PASS line
with the case count and elapsed time (run with ``pytest -s`` to see all
lines immediately; they also appear in captured output)."""

import math
import random
import time
from itertools import product

from necsurf import (
    ActionDatum,
    CyclicGroup,
    DihedralGroup,
    NECSignature,
    build_theta,
    canonical_presentation,
    check_homomorphism,
    construct_eta,
    enumerate_smooth_epimorphisms,
    extend_to_dihedral,
    lemma1_check,
    quotient_disc_signature,
    realize,
    reduced_area,
    smith_normal_form,
)
from necsurf.abelian import integer_determinant, matrix_multiply
from necsurf.groups import CyclicElement, DihedralElement


def report(number, label, detail, started):
    elapsed = time.time() - started
    print(f"ACCEPTANCE {number} ({label}): PASS — {detail} ({elapsed:.2f}s)")


def test_criterion_1_derived_signature_matches(derived_battery):
    started = time.time()
    assert len(derived_battery) >= 50
    for gamma, periods, _, _, derived in derived_battery:
        expected = NECSignature(False, gamma, tuple(sorted(periods)))
        assert derived.report.signature == expected
        assert derived.signature_matches
    report(
        1,
        "derived kernel signature equals (gamma;-;[n1..nr])",
        f"{len(derived_battery)} battery cases, exact equality",
        started,
    )


def test_criterion_2_index_two_area_identity(signature_battery):
    started = time.time()
    for gamma, periods in signature_battery:
        disc = quotient_disc_signature(gamma, periods)
        double = NECSignature(False, gamma, periods)
        assert reduced_area(disc) * 2 == reduced_area(double)
    report(
        2,
        "index-2 area identity",
        f"{len(signature_battery)} battery cases, exact rationals",
        started,
    )


def test_criterion_3_lemma_over_battery(derived_battery):
    started = time.time()
    even_cases = 0
    generators_checked = 0
    for gamma, _, _, _, derived in derived_battery:
        lemma = lemma1_check(derived)
        assert lemma.inversion_ok
        assert lemma.certificates_ok
        generators_checked += len(lemma.inversion_entries)
        if gamma % 2 == 0:
            even_cases += 1
            assert lemma.connector_product_zero
    report(
        3,
        "connector product dies; conjugation inverts every class",
        f"{len(derived_battery)} cases ({even_cases} even), "
        f"{generators_checked} generator classes",
        started,
    )


def test_criterion_4_dihedral_certificates(action_battery):
    started = time.time()
    assert len(action_battery) >= 20
    for datum in action_battery:
        cert = realize(datum)
        ext = cert.extension
        assert ext.surjective
        assert ext.restriction_agrees
        assert ext.image_order == 4 * datum.n
        assert ext.kernel_index == 4 * datum.n
        assert ext.hom.target == DihedralGroup(2 * datum.n)
        assert cert.genus_match and cert.conclusion
    report(
        4,
        "dihedral extension exists with kernel index 4n",
        f"{len(action_battery)} valid action data, 2n <= 12",
        started,
    )


def test_criterion_5_genus_two_end_to_end():
    started = time.time()
    datum = ActionDatum(1, (2, 2, 2), 2, (1,), (2, 2, 2))

    # independent oracle 1: full product-space enumeration of epimorphisms
    oracle_hits = []
    for tup in product(range(4), repeat=4):
        d, x = tup[:1], tup[1:]
        if d[0] % 2 == 0:
            continue
        if any(4 // math.gcd(v, 4) != 2 for v in x):
            continue
        if (sum(x) + 2 * sum(d)) % 4 != 0:
            continue
        if math.gcd(4, *tup) != 1:
            continue
        oracle_hits.append((d, x))
    assert len(oracle_hits) == 2
    assert (datum.d_images, datum.x_images) in oracle_hits

    # independent oracle 2: genus by counting preimages of cells
    chi = 4 * ((2 - 1) - 3) + sum(4 // n for n in (2, 2, 2))
    oracle_genus = (2 - chi) // 2
    assert oracle_genus == 2

    cert = realize(datum)
    assert cert.genus == 2 == oracle_genus
    assert cert.derived.report.signature == NECSignature(False, 1, (2, 2, 2))
    assert cert.extension.hom.target == DihedralGroup(4)
    assert cert.extension.kernel_index == 8
    assert cert.extension.image_order == 8  # K/ker = full D4
    assert cert.genus_real == 2
    assert cert.conclusion
    report(
        5,
        "genus-2 end-to-end",
        "g = ghat = 2, kernel signature (1;-;[2,2,2]), quotient D4 of order 8",
        started,
    )


def test_criterion_6_enumeration_oracle_agreement():
    started = time.time()

    def unpruned(gamma, periods, order):
        found = []
        for tup in product(range(order), repeat=gamma + len(periods)):
            d, x = tup[:gamma], tup[gamma:]
            if any(v % 2 == 0 for v in d):
                continue
            if any(order // math.gcd(v, order) != n for v, n in zip(x, periods)):
                continue
            if (sum(x) + 2 * sum(d)) % order != 0:
                continue
            if math.gcd(order, *tup) != 1:
                continue
            found.append((d, x))
        return found

    cases = [
        (1, (2, 2, 2), 4),
        (2, (2, 2), 4),
        (3, (), 4),
        (4, (), 4),
        (5, (), 4),
        (1, (2, 2, 2), 8),
        (2, (2,), 8),
        (3, (2,), 8),
        (4, (), 8),
        (1, (2, 2, 3), 12),
        (1, (6, 6), 12),
        (2, (3,), 12),
    ]
    for gamma, periods, order in cases:
        result = enumerate_smooth_epimorphisms(gamma, periods, order)
        assert list(result.tuples) == unpruned(gamma, periods, order)

    fixed = {
        (1, (2, 2, 2), 4): 2,
        (3, (), 4): 0,
        (4, (), 4): 16,
    }
    for (gamma, periods, order), expected in fixed.items():
        assert enumerate_smooth_epimorphisms(gamma, periods, order).count == expected
    report(
        6,
        "enumeration agrees with unpruned product-space filter",
        f"{len(cases)} cases plus fixed counts 2/0/16",
        started,
    )


def _long_relator(gamma):
    from necsurf.words import Word

    w = Word()
    for j in range(gamma, 0, -1):
        w = w * Word.gen(f"x{j}")
    return w * Word.gen("e")


def test_criterion_7_connector_parity(signature_battery):
    started = time.time()
    even = odd = 0
    for gamma, periods in signature_battery:
        K = canonical_presentation(quotient_disc_signature(gamma, periods))
        naive = check_homomorphism(K, build_theta(K, connector_exponent=0))
        fixed = check_homomorphism(K, build_theta(K))
        assert fixed.valid
        if gamma % 2 == 0:
            even += 1
            assert naive.valid
        else:
            odd += 1
            assert not naive.valid
            assert [str(rel) for rel, _ in naive.failures] == [
                str(_long_relator(gamma))
            ]
    report(
        7,
        "connector parity behaviour",
        f"{even} even cases validate naive image, {odd} odd cases fail the"
        " long relator, parity fix always valid",
        started,
    )


def test_criterion_8_algebra_engines():
    started = time.time()

    # exhaustive group laws for C_m and D_m with 2m <= 32
    for m in range(1, 17):
        elements = [CyclicElement(m, k) for k in range(m)]
        identity = CyclicElement(m, 0)
        for a in elements:
            assert a * a.inverse() == identity
            assert a * identity == a == identity * a
        for a in elements:
            for b in elements:
                for c in elements:
                    assert (a * b) * c == a * (b * c)

    for m in range(1, 17):
        elements = [DihedralElement(m, f, k) for f in (0, 1) for k in range(m)]
        identity = DihedralElement(m, 0, 0)
        for a in elements:
            assert a * a.inverse() == identity
            assert a * identity == a == identity * a
        for a in elements:
            for b in elements:
                for c in elements:
                    assert (a * b) * c == a * (b * c)

    # Smith normal form on 100 seeded random matrices
    rng = random.Random(987654321)
    for _ in range(100):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        d, u, v = smith_normal_form(m)
        assert matrix_multiply(matrix_multiply(u, m), v) == d
        assert abs(integer_determinant(u)) == 1
        assert abs(integer_determinant(v)) == 1
        diag = [d[i][i] for i in range(min(rows, cols))]
        for a, b in zip(diag, diag[1:]):
            if a == 0:
                assert b == 0
            elif b != 0:
                assert b % a == 0
    report(
        8,
        "algebra engines",
        "group laws exhaustive for C_m/D_m (2m <= 32); 100 seeded Smith forms",
        started,
    )
