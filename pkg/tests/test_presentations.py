import pytest

from necsurf import (
    CyclicGroup,
    FiniteHom,
    NECSignature,
    UnsupportedSignatureError,
    build_theta,
    canonical_presentation,
    check_homomorphism,
    orientation_character,
    quotient_disc_signature,
    verify_derived_relator,
    word_character,
)
from necsurf.pipeline import classical_substitution
from necsurf.presentations import Presentation
from necsurf.signatures import CONNECTOR, REFLECTION, elliptic
from necsurf.words import Word


def disc_group(gamma, periods):
    return canonical_presentation(quotient_disc_signature(gamma, periods))


def relator_strings(p):
    return {str(r) for r in p.relators}


class TestCanonicalDiscQuotient:
    def test_genus2_instance_relators(self):
        K = disc_group(1, (2, 2, 2))
        assert K.generator_names() == ("x1", "e", "tau1", "tau2", "tau3", "tau4")
        assert relator_strings(K) == {
            "x1*x1",
            "tau1*tau1",
            "tau2*tau2",
            "tau3*tau3",
            "tau4*tau4",
            "e^-1*tau4*e*tau1^-1",
            "x1*e",
            "tau1*tau2*tau1*tau2",
            "tau2*tau3*tau2*tau3",
            "tau3*tau4*tau3*tau4",
        }

    def test_no_corner_degenerate(self):
        K = disc_group(2, ())
        strings = relator_strings(K)
        assert "x2*x1*e" in strings
        assert "e^-1*tau1*e*tau1^-1" in strings
        assert K.generators_of_kind("reflection") == ("tau1",)

    def test_relator_count(self):
        # gamma order relators, r+1 reflection squares, connector
        # conjugation, long relator, r link relators
        for gamma, periods in [(1, (2, 2, 2)), (3, (4,)), (2, ()), (4, (2, 3, 6))]:
            K = disc_group(gamma, periods)
            r = len(periods)
            assert len(K.relators) == gamma + 2 * r + 3

    def test_well_formed(self):
        assert disc_group(2, (3, 4)).validate() == []


class TestCanonicalCrosscap:
    def test_genus2_instance(self):
        p = canonical_presentation(NECSignature(False, 1, (2, 2, 2)))
        assert p.generator_names() == ("d1", "x1", "x2", "x3")
        assert relator_strings(p) == {
            "x1*x1",
            "x2*x2",
            "x3*x3",
            "x1*x2*x3*d1*d1",
        }
        assert p.torsion_words == (
            (Word.gen("x1"), 2),
            (Word.gen("x2"), 2),
            (Word.gen("x3"), 2),
        )

    def test_relator_count(self):
        for gamma, periods in [(1, (2, 2, 2)), (5, ()), (2, (3, 6))]:
            p = canonical_presentation(NECSignature(False, gamma, periods))
            assert len(p.relators) == len(periods) + 1

    def test_well_formed(self):
        assert canonical_presentation(NECSignature(False, 2, (3, 4))).validate() == []

    def test_unsupported_families_rejected(self):
        with pytest.raises(UnsupportedSignatureError):
            canonical_presentation(NECSignature(True, 1))
        with pytest.raises(UnsupportedSignatureError):
            # interior period 3 on a bordered quotient is outside the family
            canonical_presentation(NECSignature(True, 0, (3,), ((2,),)))
        with pytest.raises(UnsupportedSignatureError):
            # two boundary components
            canonical_presentation(NECSignature(True, 0, (2,), ((2,), (2,))))


class TestOrientationCharacter:
    def test_glide_reverses(self):
        p = canonical_presentation(NECSignature(False, 1, (2, 2, 2)))
        assert orientation_character(p)["d1"] == -1
        assert orientation_character(p)["x1"] == 1

    def test_reflection_times_elliptic_reverses(self):
        K = disc_group(1, (2, 2, 2))
        assert word_character(K, Word.parse("tau1 x1")) == -1

    def test_empty_word_preserves(self):
        K = disc_group(1, (2, 2, 2))
        assert word_character(K, Word()) == 1

    def test_undeclared_generator_rejected(self):
        K = disc_group(1, ())
        with pytest.raises(KeyError):
            word_character(K, Word.gen("zz"))

    def test_all_relators_preserve_orientation(self, signature_battery):
        for gamma, periods in signature_battery[::37]:
            K = disc_group(gamma, periods)
            delta = canonical_presentation(NECSignature(False, gamma, periods))
            for p in (K, delta):
                for rel in p.relators:
                    assert word_character(p, rel) == 1


class TestCheckHomomorphism:
    def test_even_gamma_connector_to_identity_valid(self):
        K = disc_group(2, (2,))
        theta = build_theta(K, connector_exponent=0)
        assert check_homomorphism(K, theta).valid

    def test_odd_gamma_connector_to_identity_fails_long_relator(self):
        K = disc_group(1, (2, 2, 2))
        theta = build_theta(K, connector_exponent=0)
        result = check_homomorphism(K, theta)
        assert not result.valid
        assert [str(rel) for rel, _ in result.failures] == ["x1*e"]
        assert str(result.failures[0][1]) == "1"  # the residue a, written additively

    def test_everything_to_identity_is_valid(self):
        K = disc_group(3, (2, 4))
        c2 = CyclicGroup(2)
        trivial = FiniteHom.from_dict(
            K, c2, {name: c2.identity() for name in K.generator_names()}
        )
        assert check_homomorphism(K, trivial).valid


class TestVerifyDerivedRelator:
    def substitution(self, K, gamma, r):
        return classical_substitution(K, gamma, r)

    def test_first_corner_power_matches_link_relator(self):
        K = disc_group(1, (2, 2, 2))
        cert = verify_derived_relator(
            K, Word.gen("c1", 2), self.substitution(K, 1, 3)
        )
        assert cert.certified
        assert cert.status == "matches-relator"
        assert str(cert.matched) == "tau1*tau2*tau1*tau2"

    def test_consecutive_corner_power(self):
        K = disc_group(1, (2, 3, 2))
        word = (Word.gen("c1", -1) * Word.gen("c2")) ** 3
        cert = verify_derived_relator(K, word, self.substitution(K, 1, 3))
        assert cert.certified
        assert cert.status == "matches-relator"
        assert str(cert.matched) == "tau2*tau3*tau2*tau3*tau2*tau3"

    def test_even_gamma_alternation_is_trivial(self):
        K = disc_group(4, ())
        word = (
            Word.gen("delta1", -1)
            * Word.gen("delta2")
            * Word.gen("delta3", -1)
            * Word.gen("delta4")
            * Word.gen("e1", -1)
        )
        cert = verify_derived_relator(K, word, self.substitution(K, 4, 0))
        assert cert.certified
        assert cert.status == "trivial"

    def test_connector_pair_relation_uses_conjugation_relator(self):
        K = disc_group(2, (3,))
        word = Word.gen("e1") * Word.gen("e2", -1) * Word.gen("c1")
        cert = verify_derived_relator(K, word, self.substitution(K, 2, 1))
        assert cert.certified

    def test_nontrivial_word_is_unresolved(self):
        K = disc_group(1, (2, 2, 2))
        cert = verify_derived_relator(K, Word.gen("c1"), self.substitution(K, 1, 3))
        assert not cert.certified
        assert cert.status == "unresolved"


def test_presentation_validation_flags_problems():
    broken = Presentation(
        (("a", elliptic(3)), ("t", REFLECTION)),
        (Word.parse("a b"),),
    )
    problems = broken.validate()
    assert any("undeclared" in p for p in problems)
    assert any("a^3" in p for p in problems)
    assert any("t^2" in p for p in problems)


def test_duplicate_generator_names_rejected():
    with pytest.raises(ValueError):
        Presentation((("a", CONNECTOR), ("a", CONNECTOR)), ())
