"""The realization pipeline.

Input: a cyclic orientation-reversing action on a closed hyperbolic
surface, given by the quotient data (gamma crosscaps, cone orders
n_1..n_r, action order 2n with n even) together with a surface-kernel
epimorphism rho onto C_2n.

The chain constructed and verified here:

1. validate the action datum and compute the genus of the acted-on
   surface by exact Riemann-Hurwitz arithmetic;
2. build the bordered disc-quotient group K (gamma interior order-2
   points, corner orders n_1..n_r) and the parity map theta: K -> C_2
   killing the connector and sending every other generator to the
   non-trivial element;
3. derive the index-2 kernel of theta by Reidemeister-Schreier rewriting,
   compute its signature independently by orbit and area bookkeeping, and
   check it reproduces (gamma; -; [n_1..n_r]) exactly;
4. transport rho to an epimorphism eta of the derived kernel onto C_2n by
   a constrained exhaustive search (branch data matched up to a single
   automorphism of C_2n);
5. certify that conjugation by the first reflection inverts the kernel's
   abelianization (so every homomorphism to an abelian group has normal
   kernel in K), and extend eta to Theta: K -> D_2n;
6. conclude: ker(Theta) = ker(eta) uniformizes a closed surface of the
   same genus carrying both the cyclic action and a reflection, and emit
   the full audit trail as a certificate.

Every search is exhaustive with deterministic ordering; any step that
fails where the mathematics says it cannot raises
``PipelineAssertionError`` instead of producing a weakened certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import permutations, product

from .abelian import Abelianization, abelianization
from .cosets import SchreierSubgroup, cayley_coset_table, reidemeister_schreier
from .groups import CyclicGroup, DihedralGroup, FiniteHom
from .kernels import (
    KernelSignatureReport,
    SurfaceKernelReport,
    kernel_signature_index2,
    surface_kernel_check,
)
from .presentations import (
    Presentation,
    RelatorCertificate,
    canonical_presentation,
    check_homomorphism,
    verify_derived_relator,
)
from .signatures import (
    NECSignature,
    NoSurfaceKernelError,
    quotient_disc_signature,
    reduced_area,
    riemann_hurwitz_index,
    surface_kernel_genus,
)
from .words import Word


class ActionValidationError(ValueError):
    """The input action datum violates one or more invariants."""

    def __init__(self, reasons: tuple[str, ...]):
        self.reasons = tuple(reasons)
        super().__init__("; ".join(reasons))


class PipelineAssertionError(RuntimeError):
    """An internal step failed where the construction guarantees success:
    either a bug or an unsupported edge case, never a silent downgrade."""


# ---------------------------------------------------------------------------
# Action data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ActionDatum:
    """Quotient data of a cyclic orientation-reversing action: gamma
    crosscaps, cone orders, n (the action has order 2n), and the images
    of the glide and elliptic generators under rho: Delta -> C_2n."""

    gamma: int
    periods: tuple[int, ...]
    n: int
    d_images: tuple[int, ...]
    x_images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "periods", tuple(self.periods))
        object.__setattr__(self, "d_images", tuple(self.d_images))
        object.__setattr__(self, "x_images", tuple(self.x_images))

    @property
    def order(self) -> int:
        return 2 * self.n

    def delta_signature(self) -> NECSignature:
        return NECSignature(False, self.gamma, self.periods)


@dataclass(frozen=True)
class ValidationResult:
    errors: tuple[str, ...]
    genus: int | None
    surface_report: SurfaceKernelReport | None

    @property
    def ok(self) -> bool:
        return not self.errors


def validate_action(datum: ActionDatum) -> ValidationResult:
    """Check every invariant of the action datum, reporting each
    violation individually, and compute the genus when valid."""
    errors: list[str] = []
    if datum.n < 2:
        errors.append(f"n = {datum.n} must be at least 2")
    elif datum.n % 2 != 0:
        errors.append(f"n = {datum.n} must be even (the action order is 2n with n even)")
    if datum.gamma < 1:
        errors.append(f"gamma = {datum.gamma} must be at least 1")
    for i, nj in enumerate(datum.periods, start=1):
        if nj < 2:
            errors.append(f"period n_{i} = {nj} must be at least 2")
        elif nj > datum.n:
            errors.append(f"period n_{i} = {nj} exceeds n = {datum.n}")
        elif datum.n % nj != 0:
            errors.append(f"period n_{i} = {nj} does not divide n = {datum.n}")
    if len(datum.d_images) != max(datum.gamma, 0):
        errors.append(
            f"expected {datum.gamma} glide images, got {len(datum.d_images)}"
        )
    if len(datum.x_images) != len(datum.periods):
        errors.append(
            f"expected {len(datum.periods)} elliptic images, got {len(datum.x_images)}"
        )
    if errors:
        return ValidationResult(tuple(errors), None, None)

    sig = datum.delta_signature()
    area = reduced_area(sig)
    if area <= 0:
        errors.append(f"signature {sig} is not hyperbolic (reduced area {area})")
        return ValidationResult(tuple(errors), None, None)

    two_n = datum.order
    target = CyclicGroup(two_n)
    delta = canonical_presentation(sig)
    images = {
        f"d{j}": target.element(v) for j, v in enumerate(datum.d_images, start=1)
    }
    images.update(
        {f"x{i}": target.element(v) for i, v in enumerate(datum.x_images, start=1)}
    )
    rho = FiniteHom.from_dict(delta, target, images)

    hom_check = check_homomorphism(delta, rho)
    for rel, value in hom_check.failures:
        errors.append(f"rho is not a homomorphism: relator {rel} maps to {value}")
    if not rho.is_surjective():
        errors.append("rho is not surjective onto C_" + str(two_n))
    for i, (nj, v) in enumerate(zip(datum.periods, datum.x_images), start=1):
        order = target.element(v).order()
        if order != nj:
            errors.append(
                f"torsion collapse: x{i} image {v} has order {order}, declared {nj}"
            )
    for j, v in enumerate(datum.d_images, start=1):
        if v % 2 == 0:
            errors.append(
                f"orientation mismatch: glide image d{j} -> {v} is even"
            )
    for i, v in enumerate(datum.x_images, start=1):
        if v % 2 != 0:
            errors.append(
                f"orientation mismatch: elliptic image x{i} -> {v} is odd"
            )

    genus: int | None = None
    try:
        genus = surface_kernel_genus(sig, two_n)
    except NoSurfaceKernelError as exc:
        errors.append(str(exc))

    report = surface_kernel_check(delta, rho)
    return ValidationResult(tuple(errors), genus if not errors else None, report)


# ---------------------------------------------------------------------------
# theta and the derived kernel
# ---------------------------------------------------------------------------

def build_theta(K: Presentation, connector_exponent: int | None = None) -> FiniteHom:
    """The parity map K -> C_2: interior elliptics and reflections go to
    the non-trivial element; the connector image is a^(gamma mod 2), the
    unique choice making the long relator hold for both parities.  Pass
    ``connector_exponent`` to force a different connector image (0 gives
    the assignment that fails the long relator when gamma is odd)."""
    gamma = len(K.generators_of_kind("elliptic"))
    if connector_exponent is None:
        connector_exponent = gamma % 2
    c2 = CyclicGroup(2)
    images = {}
    for name, kind in K.generators:
        if kind.kind == "connector":
            images[name] = c2.element(connector_exponent)
        else:
            images[name] = c2.element(1)
    return FiniteHom.from_dict(K, c2, images)


@dataclass(frozen=True)
class GeneratorCorrespondence:
    name: str
    role: str
    kernel_word: Word


@dataclass(frozen=True)
class DerivedKernel:
    """The index-2 kernel of theta: Reidemeister-Schreier presentation
    (with canonical generator names), independently computed signature,
    and the audit data tying the two together."""

    subgroup: SchreierSubgroup
    presentation: Presentation
    theta: FiniteHom
    report: KernelSignatureReport
    expected_signature: NECSignature
    signature_matches: bool
    correspondence: tuple[GeneratorCorrespondence, ...]
    printed_checks: tuple[tuple[str, RelatorCertificate], ...]
    gamma: int
    link_periods: tuple[int, ...]


def _printed_relator_words(gamma: int, periods: tuple[int, ...]) -> list[tuple[str, Word]]:
    """The classical relator list of the derived kernel for even gamma,
    written over the canonical derived names."""
    r = len(periods)
    rels: list[tuple[str, Word]] = []
    if r >= 1:
        rels.append((f"c1^{periods[0]}", Word.gen("c1", periods[0])))
        for k in range(1, r):
            w = (Word.gen(f"c{k}", -1) * Word.gen(f"c{k + 1}")) ** periods[k]
            rels.append((f"(c{k}^-1*c{k + 1})^{periods[k]}", w))
        rels.append(
            (f"e1*e2^-1*c{r}", Word.gen("e1") * Word.gen("e2", -1) * Word.gen(f"c{r}"))
        )
    else:
        rels.append(("e1*e2^-1", Word.gen("e1") * Word.gen("e2", -1)))
    w1 = Word()
    w2 = Word()
    for j in range(1, gamma + 1):
        w1 = w1 * Word.gen(f"delta{j}", -1 if j % 2 == 1 else 1)
        w2 = w2 * Word.gen(f"delta{j}", 1 if j % 2 == 1 else -1)
    rels.append(("delta-alternation-1", w1 * Word.gen("e1", -1)))
    rels.append(("delta-alternation-2", w2 * Word.gen("e2", -1)))
    return rels


def classical_substitution(K: Presentation, gamma: int, r: int) -> dict[str, Word]:
    """Expressions of the canonical derived generators as words in K."""
    tau1 = Word.gen("tau1")
    sub: dict[str, Word] = {}
    for j in range(1, gamma + 1):
        sub[f"delta{j}"] = tau1 * Word.gen(f"x{j}")
    for k in range(1, r + 1):
        sub[f"c{k}"] = tau1 * Word.gen(f"tau{k + 1}")
    sub["e1"] = Word.gen("e")
    sub["e2"] = tau1 * Word.gen("e") * tau1
    return sub


def derive_delta_hat(K: Presentation, theta: FiniteHom) -> DerivedKernel:
    """Reidemeister-Schreier presentation of ker(theta) with canonical
    names, its independently computed signature, and (for even gamma) the
    certified classical relator list."""
    if K.signature is None or len(K.signature.period_cycles) != 1:
        raise ValueError("derive_delta_hat needs a disc-quotient presentation")
    gamma = len(K.generators_of_kind("elliptic"))
    if gamma < 1:
        raise ValueError(
            "derive_delta_hat needs at least one interior cone point"
            " (the kernel is orientable otherwise)"
        )
    reflections = K.generators_of_kind("reflection")
    r = len(reflections) - 1
    periods = K.signature.period_cycles[0]

    table = cayley_coset_table(theta)
    if table.index != 2:
        raise PipelineAssertionError(f"theta has index {table.index}, expected 2")
    sub = reidemeister_schreier(K, table)

    tau1 = reflections[0]
    mirror = next(
        (
            i
            for i, rep in enumerate(sub.transversal)
            if rep.letters == ((tau1, 1),)
        ),
        None,
    )
    if mirror is None:
        raise PipelineAssertionError("transversal does not use the first reflection")

    even = gamma % 2 == 0
    mapping: dict[str, str] = {}
    roles: dict[str, str] = {}
    for gen in sub.generators:
        key = (gen.coset, gen.base_generator)
        base = gen.base_generator
        if base.startswith("x"):
            j = base[1:]
            name = f"delta{j}" if gen.coset == mirror else f"delta{j}t"
            role = "glide" if gen.coset == mirror else "glide (tau1-conjugate)"
        elif base == tau1:
            name, role = "tau1sq", "reflection square (trivial in K)"
        elif base.startswith("tau"):
            k = int(base[3:]) - 1
            name = f"c{k}" if gen.coset == mirror else f"c{k}t"
            role = "corner rotation" if gen.coset == mirror else "corner rotation (tau1-conjugate)"
        elif base == "e":
            if gen.coset == 0:
                name = "e1" if even else "f1"
            else:
                name = "e2" if even else "f2"
            role = "connector"
        else:  # pragma: no cover - canonical K has no other generators
            name, role = gen.name, "schreier"
        mapping[gen.name] = name
        roles[name] = role

    order = []
    order += [f"delta{j}" for j in range(1, gamma + 1)]
    order += [f"c{k}" for k in range(1, r + 1)]
    order += ["e1", "e2"] if even else ["f1", "f2"]
    order += [f"delta{j}t" for j in range(1, gamma + 1)]
    order += [f"c{k}t" for k in range(1, r + 1)]
    order += ["tau1sq"]
    present = set(mapping.values())
    order = [name for name in order if name in present]
    sub = sub.renamed(mapping, order)

    report = kernel_signature_index2(K, theta)
    expected = NECSignature(False, gamma, tuple(sorted(periods)))
    matches = report.signature == expected
    if not matches:
        raise PipelineAssertionError(
            f"derived kernel signature {report.signature} differs from expected {expected}"
        )

    torsion = []
    for k, n in enumerate(periods, start=1):
        corner = Word.gen(reflections[k - 1]) * Word.gen(reflections[k])
        torsion.append((sub.rewrite(corner), n))
    presentation = replace(
        sub.presentation, torsion_words=tuple(torsion), signature=report.signature
    )
    sub = sub.with_presentation(presentation)

    correspondence = tuple(
        GeneratorCorrespondence(gen.name, roles[gen.name], gen.word)
        for gen in sub.generators
    )

    printed: list[tuple[str, RelatorCertificate]] = []
    if even:
        substitution = classical_substitution(K, gamma, r)
        for label, word in _printed_relator_words(gamma, periods):
            cert = verify_derived_relator(K, word, substitution)
            printed.append((label, cert))
            if not cert.certified:
                raise PipelineAssertionError(
                    f"classical relator {label} could not be certified"
                )

    return DerivedKernel(
        subgroup=sub,
        presentation=presentation,
        theta=theta,
        report=report,
        expected_signature=expected,
        signature_matches=matches,
        correspondence=correspondence,
        printed_checks=tuple(printed),
        gamma=gamma,
        link_periods=tuple(periods),
    )


# ---------------------------------------------------------------------------
# Lemma: conjugation by tau1 inverts the abelianized kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaReport:
    """Evidence that ker(zeta) is normal in K for every homomorphism zeta
    of the derived kernel to an abelian group: the connector product dies
    in the abelianization (even gamma), and conjugation by the first
    reflection acts as inversion on every generator's class."""

    gamma_even: bool
    connector_pair: tuple[str, str]
    connector_product_class: tuple[int, ...]
    connector_product_zero: bool
    inversion_entries: tuple[tuple[str, bool], ...]
    conjugation_certificates: tuple[tuple[str, bool], ...]
    invariant_factors: tuple[int, ...]
    free_rank: int

    @property
    def inversion_ok(self) -> bool:
        return all(ok for _, ok in self.inversion_entries)

    @property
    def certificates_ok(self) -> bool:
        return all(ok for _, ok in self.conjugation_certificates)

    @property
    def ok(self) -> bool:
        zero_ok = self.connector_product_zero or not self.gamma_even
        return zero_ok and self.inversion_ok and self.certificates_ok


def lemma1_check(derived: DerivedKernel) -> LemmaReport:
    ab = abelianization(derived.presentation)
    even = derived.gamma % 2 == 0
    pair = ("e1", "e2") if even else ("f1", "f2")
    product_word = Word.gen(pair[0]) * Word.gen(pair[1])
    product_class = ab.class_of(product_word)
    product_zero = all(c == 0 for c in product_class)
    if even and not product_zero:
        raise PipelineAssertionError(
            f"connector product {pair[0]}*{pair[1]} has non-zero class {product_class}"
        )

    K = derived.subgroup.base
    tau1 = K.generators_of_kind("reflection")[0]
    entries: list[tuple[str, bool]] = []
    for gen in derived.subgroup.generators:
        conjugate = Word.gen(tau1) * gen.word * Word.gen(tau1)
        if not derived.theta.evaluate(conjugate).is_identity():
            raise PipelineAssertionError(
                f"tau1-conjugate of {gen.name} left the kernel"
            )
        rewritten = derived.subgroup.rewrite(conjugate)
        ok = ab.class_of(rewritten) == ab.negate(ab.class_of(Word.gen(gen.name)))
        entries.append((gen.name, ok))
        if not ok:
            raise PipelineAssertionError(
                f"conjugation by {tau1} does not invert the class of {gen.name}"
            )

    r = len(derived.link_periods)
    substitution = classical_substitution(K, derived.gamma, r)
    certificates: list[tuple[str, bool]] = []
    names = [f"delta{j}" for j in range(1, derived.gamma + 1)]
    names += [f"c{k}" for k in range(1, r + 1)]
    for name in names:
        word = Word.gen(tau1) * Word.gen(name) * Word.gen(tau1) * Word.gen(name)
        cert = verify_derived_relator(K, word, substitution)
        certificates.append((f"tau1*{name}*tau1*{name}", cert.certified))
        if not cert.certified:
            raise PipelineAssertionError(
                f"conjugation identity for {name} could not be certified"
            )

    return LemmaReport(
        gamma_even=even,
        connector_pair=pair,
        connector_product_class=product_class,
        connector_product_zero=product_zero,
        inversion_entries=tuple(entries),
        conjugation_certificates=tuple(certificates),
        invariant_factors=ab.invariant_factors,
        free_rank=ab.free_rank,
    )


# ---------------------------------------------------------------------------
# eta: transporting rho to the derived kernel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EtaResult:
    hom: FiniteHom
    unit: int
    torsion_images: tuple[int, ...]
    surjective: bool
    parity_ok: bool
    torsion_ok: bool
    branch_match: bool

    @property
    def ok(self) -> bool:
        return self.surjective and self.parity_ok and self.torsion_ok and self.branch_match


def _torsion_arrangements(
    values: list[int], periods: tuple[int, ...], order: int
) -> list[tuple[int, ...]]:
    """Distinct orderings of the value multiset whose entries have exactly
    the declared orders, in deterministic (sorted) order."""
    out = []
    for perm in sorted(set(permutations(values))):
        if all(
            order // math.gcd(t, order) == n for t, n in zip(perm, periods)
        ):
            out.append(perm)
    return out


def _propagate_images(
    assignment: dict[str, int],
    relator_sums: list[dict[str, int]],
    names: tuple[str, ...],
    order: int,
) -> dict[str, int] | None:
    """Extend a partial assignment to all generators using relators that
    are linear equations mod ``order`` (abelian target).  Relators with a
    single unknown of unit coefficient force its value; fully determined
    relators must sum to zero.  Returns None when the candidate is
    inconsistent or cannot be completed."""
    values = dict(assignment)
    changed = True
    while changed:
        changed = False
        for sums in relator_sums:
            unknowns = [g for g in sums if g not in values]
            if not unknowns:
                total = sum(sums[g] * values[g] for g in sums) % order
                if total != 0:
                    return None
                continue
            if len(unknowns) == 1:
                g = unknowns[0]
                coeff = sums[g]
                if math.gcd(coeff, order) != 1:
                    continue
                rest = sum(sums[h] * values[h] for h in sums if h != g)
                inv = pow(coeff, -1, order)
                values[g] = (-rest * inv) % order
                changed = True
    if len(values) != len(names):
        return None
    return values


def construct_eta(derived: DerivedKernel, datum: ActionDatum) -> EtaResult:
    """Epimorphism of the derived kernel onto C_2n carrying the same
    branch data as rho up to one automorphism of C_2n.

    Deterministic constrained search: automorphism units in ascending
    order, then arrangements of the transported torsion multiset, then
    odd images for the glide generators in lexicographic order; all other
    generator images are forced by the relators.  The first assignment
    passing every relator, parity, torsion-order, surjectivity and
    branch-match condition is returned.
    """
    two_n = datum.order
    target = CyclicGroup(two_n)
    pres = derived.presentation
    gamma = derived.gamma
    r = len(derived.link_periods)
    delta_names = [f"delta{j}" for j in range(1, gamma + 1)]
    c_names = [f"c{k}" for k in range(1, r + 1)]
    names = pres.generator_names()
    relator_sums = [rel.exponent_sums() for rel in pres.relators]
    characters = {name: pres.kind_of(name).character for name in names}

    odd_residues = [k for k in range(1, two_n, 2)]
    units = (
        [u for u in range(1, two_n) if math.gcd(u, two_n) == 1] if r else [1]
    )

    for unit in units:
        transported = sorted((unit * t) % two_n for t in datum.x_images)
        for arrangement in _torsion_arrangements(
            transported, derived.link_periods, two_n
        ):
            c_values = []
            total = 0
            for t in arrangement:
                total = (total + t) % two_n
                c_values.append(total)
            base = dict(zip(c_names, c_values))
            for bs in product(odd_residues, repeat=gamma):
                assignment = dict(zip(delta_names, bs))
                assignment.update(base)
                full = _propagate_images(assignment, relator_sums, names, two_n)
                if full is None:
                    continue
                parity_ok = all(
                    (full[name] % 2 == 1) == (characters[name] == -1)
                    for name in names
                )
                if not parity_ok:
                    continue
                hom = FiniteHom.from_dict(
                    pres, target, {name: target.element(v) for name, v in full.items()}
                )
                if not check_homomorphism(pres, hom).valid:
                    continue
                torsion_ok = all(
                    hom.evaluate(w).order() == n for w, n in pres.torsion_words
                )
                if not torsion_ok:
                    continue
                torsion_images = tuple(
                    hom.evaluate(w).value for w, _ in pres.torsion_words
                )
                branch_match = sorted(torsion_images) == transported
                if not branch_match:
                    continue
                if not hom.is_surjective():
                    continue
                return EtaResult(
                    hom=hom,
                    unit=unit,
                    torsion_images=torsion_images,
                    surjective=True,
                    parity_ok=True,
                    torsion_ok=True,
                    branch_match=True,
                )
    raise PipelineAssertionError(
        "no epimorphism of the derived kernel transports the branch data"
    )


# ---------------------------------------------------------------------------
# Dihedral extension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralExtension:
    hom: FiniteHom
    reflection_rotation: int
    surjective: bool
    restriction_agrees: bool
    image_order: int
    kernel_index: int

    @property
    def ok(self) -> bool:
        return self.surjective and self.restriction_agrees


def extend_to_dihedral(
    K: Presentation, derived: DerivedKernel, eta: EtaResult
) -> DihedralExtension:
    """Extend eta to Theta: K -> D_2n.

    Theta(tau1) is searched among the 2n reflections t*s^k (k ascending);
    every other image is forced: kernel generators go to the rotation
    eta gives them, and a generator g with theta(g) = a goes to
    Theta(tau1) * rotation(eta(tau1 * g)).  The first k whose images
    satisfy all relators wins; surjectivity and the restriction
    Theta|kernel = eta are then verified, so ker(Theta) = ker(eta) of
    index 4n in K.
    """
    two_n = eta.hom.target.modulus
    dihedral = DihedralGroup(two_n)
    theta_images = derived.theta.image_dict()
    tau1 = K.generators_of_kind("reflection")[0]

    rotation_exponent: dict[str, int] = {}
    reflected_exponent: dict[str, int] = {}
    for name, _ in K.generators:
        if theta_images[name].is_identity():
            rewritten = derived.subgroup.rewrite(Word.gen(name))
            rotation_exponent[name] = eta.hom.evaluate(rewritten).value
        else:
            rewritten = derived.subgroup.rewrite(Word.gen(tau1) * Word.gen(name))
            reflected_exponent[name] = eta.hom.evaluate(rewritten).value

    for k in range(two_n):
        t_img = dihedral.reflection(k)
        images = {}
        for name, _ in K.generators:
            if name in rotation_exponent:
                images[name] = dihedral.rotation(rotation_exponent[name])
            else:
                images[name] = t_img * dihedral.rotation(reflected_exponent[name])
        hom = FiniteHom.from_dict(K, dihedral, images)
        if not check_homomorphism(K, hom).valid:
            continue
        image_order = len(hom.image_subgroup())
        surjective = image_order == dihedral.order
        restriction = all(
            hom.evaluate(gen.word)
            == dihedral.rotation(eta.hom.image_of(gen.name).value)
            for gen in derived.subgroup.generators
        )
        if not surjective or not restriction:
            continue
        return DihedralExtension(
            hom=hom,
            reflection_rotation=k,
            surjective=surjective,
            restriction_agrees=restriction,
            image_order=image_order,
            kernel_index=image_order,
        )
    raise PipelineAssertionError(
        "no reflection choice extends eta to a dihedral homomorphism"
    )


# ---------------------------------------------------------------------------
# End-to-end realization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealizationCertificate:
    """Complete audit trail: every object of the construction plus the
    verdict of every check, re-checkable without recomputation."""

    datum: ActionDatum
    genus: int
    delta_signature: NECSignature
    k_signature: NECSignature
    k_presentation: Presentation
    theta: FiniteHom
    theta_connector_exponent: int
    theta_printed_connector_valid: bool
    area_ratio: Fraction
    rho_report: SurfaceKernelReport
    derived: DerivedKernel
    lemma: LemmaReport
    eta: EtaResult
    extension: DihedralExtension
    genus_real: int

    @property
    def signature_match(self) -> bool:
        return self.derived.signature_matches

    @property
    def genus_match(self) -> bool:
        return self.genus_real == self.genus

    @property
    def conclusion(self) -> bool:
        return (
            self.signature_match
            and self.area_ratio == 2
            and self.rho_report.ok
            and self.lemma.ok
            and self.eta.ok
            and self.extension.ok
            and self.genus_match
        )


def realize(datum: ActionDatum) -> RealizationCertificate:
    """Run the full chain and emit the certificate.

    Raises ``ActionValidationError`` on invalid input and
    ``PipelineAssertionError`` if an internal step fails where the
    construction guarantees success.
    """
    validation = validate_action(datum)
    if not validation.ok:
        raise ActionValidationError(validation.errors)
    assert validation.genus is not None

    delta_sig = datum.delta_signature()
    k_sig = quotient_disc_signature(datum.gamma, datum.periods)
    K = canonical_presentation(k_sig)

    theta = build_theta(K)
    if not check_homomorphism(K, theta).valid:
        raise PipelineAssertionError("parity map theta is not a homomorphism")
    printed_theta = build_theta(K, connector_exponent=0)
    printed_valid = check_homomorphism(K, printed_theta).valid

    area_ratio = riemann_hurwitz_index(delta_sig, k_sig)
    if area_ratio != 2:
        raise PipelineAssertionError(
            f"area ratio of {delta_sig} over {k_sig} is {area_ratio}, expected 2"
        )

    derived = derive_delta_hat(K, theta)
    lemma = lemma1_check(derived)
    eta = construct_eta(derived, datum)
    extension = extend_to_dihedral(K, derived, eta)
    if extension.kernel_index != 4 * datum.n:
        raise PipelineAssertionError(
            f"kernel index {extension.kernel_index} differs from 4n = {4 * datum.n}"
        )

    genus_real = surface_kernel_genus(k_sig, extension.kernel_index)
    genus_via_kernel = surface_kernel_genus(derived.report.signature, datum.order)
    if genus_real != validation.genus or genus_via_kernel != validation.genus:
        raise PipelineAssertionError(
            f"genus bookkeeping disagrees: {validation.genus} vs {genus_real}"
            f" vs {genus_via_kernel}"
        )

    return RealizationCertificate(
        datum=datum,
        genus=validation.genus,
        delta_signature=delta_sig,
        k_signature=k_sig,
        k_presentation=K,
        theta=theta,
        theta_connector_exponent=datum.gamma % 2,
        theta_printed_connector_valid=printed_valid,
        area_ratio=area_ratio,
        rho_report=validation.surface_report,
        derived=derived,
        lemma=lemma,
        eta=eta,
        extension=extension,
        genus_real=genus_real,
    )


# ---------------------------------------------------------------------------
# Enumeration oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationResult:
    gamma: int
    periods: tuple[int, ...]
    order: int
    tuples: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def count(self) -> int:
        return len(self.tuples)

    def first_datum(self) -> ActionDatum | None:
        if not self.tuples:
            return None
        d_images, x_images = self.tuples[0]
        return ActionDatum(self.gamma, self.periods, self.order // 2, d_images, x_images)


def _iter_smooth_epimorphisms(gamma: int, periods: tuple[int, ...], order: int):
    if order % 2 != 0 or (order // 2) % 2 != 0 or order < 4:
        raise ValueError(f"order {order} must be 2n with n even and n >= 2")
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    sig = NECSignature(False, gamma, periods)
    if reduced_area(sig) <= 0:
        raise ValueError(f"signature {sig} is not hyperbolic")

    odd = [k for k in range(1, order, 2)]
    x_candidates = [
        [t for t in range(order) if order // math.gcd(t, order) == n]
        for n in periods
    ]
    for d_images in product(odd, repeat=gamma):
        partial = 2 * sum(d_images)
        d_gcd = math.gcd(order, *d_images)
        for x_images in product(*x_candidates):
            if (partial + sum(x_images)) % order != 0:
                continue
            if math.gcd(d_gcd, *x_images) != 1:
                continue
            yield tuple(d_images), tuple(x_images)


def enumerate_smooth_epimorphisms(
    gamma: int, periods: tuple[int, ...], order: int
) -> EnumerationResult:
    """All surface-kernel epimorphisms of the crosscap group
    (gamma; -; [periods]) onto C_order, as raw image tuples.

    Conditions: each elliptic image has exactly its declared order, each
    glide image is odd, the long relator sums to zero, and the images
    generate.  The enumeration is constraint-pruned but exhaustive, in
    lexicographic order over (d_1..d_gamma, x_1..x_r); counts are raw,
    with no quotient by any equivalence.
    """
    periods = tuple(periods)
    found = tuple(_iter_smooth_epimorphisms(gamma, periods, order))
    return EnumerationResult(gamma, periods, order, found)


def first_smooth_epimorphism(
    gamma: int, periods: tuple[int, ...], order: int
) -> ActionDatum | None:
    """Lexicographically first surface-kernel epimorphism, as an action
    datum, without materialising the full enumeration."""
    periods = tuple(periods)
    for d_images, x_images in _iter_smooth_epimorphisms(gamma, periods, order):
        return ActionDatum(gamma, periods, order // 2, d_images, x_images)
    return None
