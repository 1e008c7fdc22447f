"""Finite presentations with geometric generator kinds.

Two canonical families are built here:

* the disc-quotient group on generators x_1..x_gamma (interior elliptic
  involutions), a connector e, and boundary reflections tau_1..tau_{r+1},
  with relators

      x_i^2,  tau_j^2,  e^-1 tau_{r+1} e tau_1^-1,  x_gamma...x_2 x_1 e,
      (tau_1 tau_2)^{n_1}, ..., (tau_r tau_{r+1})^{n_r};

* the crosscap group of signature (gamma; -; [n_1..n_r]) on glide
  generators d_1..d_gamma and elliptic generators x_1..x_r, with relators
  x_i^{n_i} and x_1...x_r d_1^2...d_gamma^2.

``verify_derived_relator`` certifies that a word over derived subgroup
generators is trivial in the ambient group by bounded rewriting: free and
involution-aware reduction, elimination of the connector through the long
relator, and matching against cyclic rotations of the remaining relators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteHom
from .signatures import (
    CONNECTOR,
    GLIDE,
    REFLECTION,
    GeneratorKind,
    NECSignature,
    elliptic,
)
from .words import (
    Word,
    cyclic_reduce,
    cyclically_equal,
    free_reduce,
    reduce_mod_involutions,
    substitute,
)


class UnsupportedSignatureError(ValueError):
    """The signature does not belong to a supported presentation family."""


@dataclass(frozen=True)
class Presentation:
    """Named generators with geometric kinds, plus relator words.

    ``torsion_words`` designates the words generating the maximal finite
    cyclic subgroups up to conjugacy, with their orders; surface-kernel
    checks test exactly these.  ``signature`` carries the NEC signature
    the presentation was built from, when one is known.
    """

    generators: tuple[tuple[str, GeneratorKind], ...]
    relators: tuple[Word, ...]
    torsion_words: tuple[tuple[Word, int], ...] = ()
    signature: NECSignature | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(
            self, "torsion_words", tuple((w, n) for w, n in self.torsion_words)
        )
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")

    def generator_names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    def kind_of(self, name: str) -> GeneratorKind:
        for g, kind in self.generators:
            if g == name:
                return kind
        raise KeyError(name)

    def involution_names(self) -> frozenset[str]:
        return frozenset(g for g, kind in self.generators if kind.is_involution)

    def generators_of_kind(self, kind: str) -> tuple[str, ...]:
        return tuple(g for g, k in self.generators if k.kind == kind)

    def validate(self) -> list[str]:
        """Well-formedness problems (empty list when none): every relator
        references declared generators only, and every elliptic or
        reflection generator has its order relator present."""
        problems: list[str] = []
        declared = set(self.generator_names())
        for rel in self.relators:
            undeclared = rel.generator_names() - declared
            if undeclared:
                problems.append(f"relator {rel} uses undeclared {sorted(undeclared)}")
        for g, kind in self.generators:
            order = 2 if kind.kind == "reflection" else kind.order
            if order is None:
                continue
            wanted = Word.gen(g, order)
            if not any(free_reduce(rel).letters == wanted.letters for rel in self.relators):
                problems.append(f"missing order relator {g}^{order}")
        return problems


def orientation_character(p: Presentation) -> dict[str, int]:
    """The generator -> {+1, -1} map induced by the declared kinds."""
    return {g: kind.character for g, kind in p.generators}


def word_character(p: Presentation, w: Word) -> int:
    """Multiplicative extension of the orientation character to words."""
    chars = orientation_character(p)
    value = 1
    for g, _ in w.letters:
        if g not in chars:
            raise KeyError(f"generator {g} has no declared kind")
        value *= chars[g]
    return value


def canonical_presentation(sig: NECSignature) -> Presentation:
    """Canonical presentation for the two supported signature families."""
    if (
        sig.orientable
        and sig.genus == 0
        and len(sig.period_cycles) == 1
        and all(m == 2 for m in sig.proper_periods)
    ):
        return _disc_quotient_presentation(sig)
    if not sig.orientable and not sig.period_cycles:
        return _crosscap_presentation(sig)
    raise UnsupportedSignatureError(
        f"no canonical presentation implemented for {sig}"
    )


def _disc_quotient_presentation(sig: NECSignature) -> Presentation:
    gamma = len(sig.proper_periods)
    cycle = sig.period_cycles[0]
    r = len(cycle)
    xs = [f"x{i}" for i in range(1, gamma + 1)]
    taus = [f"tau{j}" for j in range(1, r + 2)]
    generators = (
        [(x, elliptic(2)) for x in xs]
        + [("e", CONNECTOR)]
        + [(t, REFLECTION) for t in taus]
    )
    relators: list[Word] = []
    relators += [Word.gen(x, 2) for x in xs]
    relators += [Word.gen(t, 2) for t in taus]
    relators.append(
        Word.gen("e", -1) * Word.gen(taus[-1]) * Word.gen("e") * Word.gen(taus[0], -1)
    )
    long_word = Word()
    for x in reversed(xs):
        long_word = long_word * Word.gen(x)
    long_word = long_word * Word.gen("e")
    relators.append(long_word)
    for k, n in enumerate(cycle):
        relators.append((Word.gen(taus[k]) * Word.gen(taus[k + 1])) ** n)
    return Presentation(tuple(generators), tuple(relators), signature=sig)


def _crosscap_presentation(sig: NECSignature) -> Presentation:
    gamma = sig.genus
    periods = sig.proper_periods
    ds = [f"d{j}" for j in range(1, gamma + 1)]
    xs = [f"x{i}" for i in range(1, len(periods) + 1)]
    generators = [(d, GLIDE) for d in ds] + [
        (x, elliptic(n)) for x, n in zip(xs, periods)
    ]
    relators = [Word.gen(x, n) for x, n in zip(xs, periods)]
    long_word = Word()
    for x in xs:
        long_word = long_word * Word.gen(x)
    for d in ds:
        long_word = long_word * Word.gen(d, 2)
    relators.append(long_word)
    torsion = tuple((Word.gen(x), n) for x, n in zip(xs, periods))
    return Presentation(tuple(generators), tuple(relators), torsion, sig)


# ---------------------------------------------------------------------------
# Homomorphism checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomCheck:
    valid: bool
    failures: tuple[tuple[Word, object], ...] = ()


def check_homomorphism(p: Presentation, hom: FiniteHom) -> HomCheck:
    """Evaluate every relator; images defining a homomorphism send all of
    them to the identity.  Failures list the offending relators with the
    element they evaluate to."""
    failures = []
    for rel in p.relators:
        value = hom.evaluate(rel)
        if not value.is_identity():
            failures.append((rel, value))
    return HomCheck(valid=not failures, failures=tuple(failures))


# ---------------------------------------------------------------------------
# Derived-relator certification by bounded rewriting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelatorCertificate:
    source: Word
    substituted: Word
    normal_form: Word
    status: str  # "trivial" | "matches-relator" | "unresolved"
    matched: Word | None = None

    @property
    def certified(self) -> bool:
        return self.status != "unresolved"


def _connector_elimination(p: Presentation) -> dict[str, Word] | None:
    """Solve the unique relator containing the connector exactly once for
    the connector (a Tietze elimination), if there is such a relator."""
    connectors = p.generators_of_kind("connector")
    if len(connectors) != 1:
        return None
    e = connectors[0]
    for rel in p.relators:
        positions = [i for i, (g, _) in enumerate(rel.letters) if g == e]
        if len(positions) != 1:
            continue
        i = positions[0]
        prefix = Word(rel.letters[:i])
        suffix = Word(rel.letters[i + 1:])
        replacement = (suffix * prefix).inverse()
        if rel.letters[i][1] == -1:
            replacement = replacement.inverse()
        return {e: replacement}
    return None


def verify_derived_relator(
    p: Presentation, relator: Word, substitution: dict[str, Word]
) -> RelatorCertificate:
    """Certify that ``relator`` (a word over derived-generator names, with
    ``substitution`` expressing those names in the ambient generators) is
    trivial in the group presented by ``p``.

    The bounded procedure: substitute, reduce freely and modulo the
    involution relators, eliminate the connector through the long relator,
    cyclically reduce, then accept an empty word or an exact cyclic match
    with one of the remaining relators (or an inverse).  Anything else is
    reported unresolved, never silently accepted.
    """
    involutions = p.involution_names()
    elimination = _connector_elimination(p) or {}

    def normalise(w: Word) -> Word:
        w = reduce_mod_involutions(free_reduce(w), involutions)
        if elimination:
            w = substitute(w, elimination)
            w = reduce_mod_involutions(free_reduce(w), involutions)
        return w

    substituted = free_reduce(substitute(relator, substitution))
    normal = cyclic_reduce(normalise(substituted), involutions)

    if not normal.letters:
        return RelatorCertificate(relator, substituted, normal, "trivial")

    remaining = []
    for rel in p.relators:
        reduced = cyclic_reduce(normalise(rel), involutions)
        if reduced.letters:
            remaining.append(reduced)
    for rel in remaining:
        if cyclically_equal(normal, rel, involutions) or cyclically_equal(
            normal, rel.inverse(), involutions
        ):
            return RelatorCertificate(relator, substituted, normal, "matches-relator", rel)
    return RelatorCertificate(relator, substituted, normal, "unresolved")
