from fractions import Fraction

import pytest

from necsurf import (
    CyclicGroup,
    FiniteHom,
    NECSignature,
    build_theta,
    canonical_presentation,
    check_homomorphism,
    kernel_signature_index2,
    quotient_disc_signature,
    reduced_area,
    surface_kernel_check,
    word_character,
)
from necsurf.words import Word


def disc_group(gamma, periods):
    return canonical_presentation(quotient_disc_signature(gamma, periods))


def crosscap_rho(gamma, periods, n, d_images, x_images):
    delta = canonical_presentation(NECSignature(False, gamma, periods))
    c = CyclicGroup(2 * n)
    images = {f"d{j}": c.element(v) for j, v in enumerate(d_images, start=1)}
    images.update({f"x{i}": c.element(v) for i, v in enumerate(x_images, start=1)})
    return delta, FiniteHom.from_dict(delta, c, images)


class TestKernelSignatureIndex2:
    def test_genus2_instance(self):
        K = disc_group(1, (2, 2, 2))
        report = kernel_signature_index2(K, build_theta(K))
        assert report.signature == NECSignature(False, 1, (2, 2, 2))

    def test_no_corner_points(self):
        K = disc_group(4, ())
        report = kernel_signature_index2(K, build_theta(K))
        assert report.signature == NECSignature(False, 4, ())
        assert report.link_contributions == ()

    def test_mixed_periods(self):
        K = disc_group(2, (3, 4))
        report = kernel_signature_index2(K, build_theta(K))
        assert report.signature == NECSignature(False, 2, (3, 4))

    def test_area_bookkeeping_is_exact(self):
        K = disc_group(2, (3, 4))
        report = kernel_signature_index2(K, build_theta(K))
        assert report.kernel_area == 2 * report.base_area
        assert reduced_area(report.signature) == report.kernel_area
        assert report.base_area == Fraction(17, 24)

    def test_interior_involutions_disappear(self):
        K = disc_group(3, (2,))
        report = kernel_signature_index2(K, build_theta(K))
        for orbit in report.elliptic_orbits:
            assert orbit.period is None  # order 2 killed by image order 2

    def test_witness_is_reversing_kernel_element(self):
        K = disc_group(1, (2, 2, 2))
        theta = build_theta(K)
        report = kernel_signature_index2(K, theta)
        assert str(report.witness) == "tau1*x1"
        assert word_character(K, report.witness) == -1
        assert theta.evaluate(report.witness).is_identity()

    def test_surviving_reflection_rejected(self):
        K = disc_group(2, (2,))
        c2 = CyclicGroup(2)
        images = {name: c2.element(1) for name in K.generator_names()}
        images["e"] = c2.element(0)
        images["tau2"] = c2.element(0)  # tau2 would survive in the kernel
        bad = FiniteHom.from_dict(K, c2, images)
        with pytest.raises(ValueError, match="tau2"):
            kernel_signature_index2(K, bad)

    def test_orientable_double_of_pure_boundary_quotient(self):
        # no interior cone points: the character factors through C2 and
        # the kernel is the orientable double
        K = canonical_presentation(NECSignature(True, 0, (), ((3, 3),)))
        theta = build_theta(K)
        assert check_homomorphism(K, theta).valid
        report = kernel_signature_index2(K, theta)
        assert report.orientable
        assert report.witness is None
        assert report.signature == NECSignature(True, 0, (3, 3))


class TestSurfaceKernelCheck:
    def test_valid_genus2_epimorphism(self):
        delta, rho = crosscap_rho(1, (2, 2, 2), 2, (1,), (2, 2, 2))
        report = surface_kernel_check(delta, rho)
        assert report.ok
        assert report.torsion_free and report.fuchsian and report.surjective
        assert report.genus == 2
        assert report.index == 4

    def test_torsion_collapse_detected(self):
        delta, rho = crosscap_rho(1, (2, 2, 2), 2, (1,), (0, 2, 2))
        report = surface_kernel_check(delta, rho)
        assert not report.torsion_free
        failing = [c for c in report.torsion_checks if not c.ok]
        assert failing and failing[0].image_order == 1

    def test_even_glide_image_breaks_orientation(self):
        delta, rho = crosscap_rho(1, (2, 2, 2), 2, (2,), (2, 2, 2))
        report = surface_kernel_check(delta, rho)
        assert not report.fuchsian

    def test_non_surjective_is_reported(self):
        # all images in the even subgroup of C4 cannot generate; with an
        # even glide image this is also not orientation-compatible
        delta, rho = crosscap_rho(1, (2, 2, 2), 2, (2,), (2, 2, 2))
        report = surface_kernel_check(delta, rho)
        assert not report.surjective
