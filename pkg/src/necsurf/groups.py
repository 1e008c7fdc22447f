"""Concrete finite groups: cyclic, dihedral and permutation groups.

Cyclic groups are written additively (residues mod m).  Dihedral elements
are normal forms t^eps * s^k in D_m of order 2m, with t*s*t = s^-1; the
product rule is

    (t^e1 s^k1) (t^e2 s^k2) = t^(e1+e2) s^(k2 + (-1)^e2 * k1).

A ``FiniteHom`` assigns a target element to every generator of a
presentation and evaluates words by folding the group operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import TYPE_CHECKING, Iterable

from .words import Word

if TYPE_CHECKING:  # pragma: no cover - type-only import
    from .presentations import Presentation


class GroupMismatchError(ValueError):
    """Operands belong to different groups."""


# ---------------------------------------------------------------------------
# Cyclic groups C_m (additive residues)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicElement:
    modulus: int
    value: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __mul__(self, other: "CyclicElement") -> "CyclicElement":
        if not isinstance(other, CyclicElement) or other.modulus != self.modulus:
            raise GroupMismatchError("cyclic elements have different moduli")
        return CyclicElement(self.modulus, self.value + other.value)

    def inverse(self) -> "CyclicElement":
        return CyclicElement(self.modulus, -self.value)

    def order(self) -> int:
        return self.modulus // math.gcd(self.value, self.modulus)

    def is_identity(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class CyclicGroup:
    modulus: int

    @property
    def order(self) -> int:
        return self.modulus

    def identity(self) -> CyclicElement:
        return CyclicElement(self.modulus, 0)

    def element(self, value: int) -> CyclicElement:
        return CyclicElement(self.modulus, value)

    def elements(self) -> list[CyclicElement]:
        return [CyclicElement(self.modulus, k) for k in range(self.modulus)]

    def __str__(self) -> str:
        return f"C{self.modulus}"


# ---------------------------------------------------------------------------
# Dihedral groups D_m of order 2m
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralElement:
    modulus: int
    flip: int  # eps in {0, 1}: 1 for reflections t*s^k
    rot: int   # k in Z/m

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "flip", self.flip % 2)
        object.__setattr__(self, "rot", self.rot % self.modulus)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        if not isinstance(other, DihedralElement) or other.modulus != self.modulus:
            raise GroupMismatchError("dihedral elements have different moduli")
        sign = -1 if other.flip else 1
        return DihedralElement(
            self.modulus, self.flip + other.flip, other.rot + sign * self.rot
        )

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement(self.modulus, 0, -self.rot)

    def order(self) -> int:
        if self.flip:
            return 2
        if self.rot == 0:
            return 1
        return self.modulus // math.gcd(self.rot, self.modulus)

    def is_identity(self) -> bool:
        return self.flip == 0 and self.rot == 0

    def __str__(self) -> str:
        if self.flip:
            return "t" if self.rot == 0 else f"t*s^{self.rot}"
        return "1" if self.rot == 0 else f"s^{self.rot}"


@dataclass(frozen=True)
class DihedralGroup:
    modulus: int  # rotation order; |D_m| = 2m

    @property
    def order(self) -> int:
        return 2 * self.modulus

    def identity(self) -> DihedralElement:
        return DihedralElement(self.modulus, 0, 0)

    def rotation(self, k: int) -> DihedralElement:
        return DihedralElement(self.modulus, 0, k)

    def reflection(self, k: int = 0) -> DihedralElement:
        return DihedralElement(self.modulus, 1, k)

    def elements(self) -> list[DihedralElement]:
        return [
            DihedralElement(self.modulus, flip, k)
            for flip in (0, 1)
            for k in range(self.modulus)
        ]

    def __str__(self) -> str:
        return f"D{self.modulus}"


# ---------------------------------------------------------------------------
# Permutation groups (symmetric group on n points)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermutationElement:
    images: tuple[int, ...]  # images[i] = image of point i

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"{self.images} is not a permutation of 0..{n - 1}")

    def __mul__(self, other: "PermutationElement") -> "PermutationElement":
        if not isinstance(other, PermutationElement) or len(other.images) != len(self.images):
            raise GroupMismatchError("permutations act on different point sets")
        # apply self first, then other
        return PermutationElement(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "PermutationElement":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return PermutationElement(tuple(inv))

    def order(self) -> int:
        result = 1
        seen = [False] * len(self.images)
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.images[i]
                length += 1
            result = result * length // math.gcd(result, length)
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __str__(self) -> str:
        return "(" + " ".join(str(i) for i in self.images) + ")"


@dataclass(frozen=True)
class PermutationGroup:
    degree: int

    @property
    def order(self) -> int:
        return math.factorial(self.degree)

    def identity(self) -> PermutationElement:
        return PermutationElement(tuple(range(self.degree)))

    def elements(self) -> list[PermutationElement]:
        return [PermutationElement(p) for p in permutations(range(self.degree))]

    def __str__(self) -> str:
        return f"Sym{self.degree}"


# ---------------------------------------------------------------------------
# Closure and homomorphisms
# ---------------------------------------------------------------------------

def generated_subgroup(elements: Iterable) -> frozenset:
    """Closure of the given elements under the group operation."""
    gens = list(elements)
    if not gens:
        return frozenset()
    closure = set(gens)
    frontier = list(gens)
    while frontier:
        new: list = []
        for a in gens:
            for b in frontier:
                c = b * a
                if c not in closure:
                    closure.add(c)
                    new.append(c)
        frontier = new
    return frozenset(closure)


@dataclass(frozen=True)
class FiniteHom:
    """A homomorphism from a finitely presented group to a finite group,
    given by its generator images.  Whether the images actually satisfy
    the relators is checked by ``presentations.check_homomorphism``."""

    domain: "Presentation"
    target: CyclicGroup | DihedralGroup | PermutationGroup
    images: tuple[tuple[str, object], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        names = {g for g, _ in self.domain.generators}
        assigned = {g for g, _ in self.images}
        if names != assigned:
            missing = names - assigned
            extra = assigned - names
            raise ValueError(
                f"generator images do not match the domain (missing {sorted(missing)},"
                f" extra {sorted(extra)})"
            )

    @classmethod
    def from_dict(cls, domain, target, images: dict) -> "FiniteHom":
        names = [g for g, _ in domain.generators]
        extra = set(images) - set(names)
        if extra:
            raise ValueError(f"images given for undeclared generators {sorted(extra)}")
        missing = [g for g in names if g not in images]
        if missing:
            raise ValueError(f"missing images for generators {missing}")
        ordered = tuple((name, images[name]) for name in names)
        return cls(domain, target, ordered)

    def image_dict(self) -> dict:
        return dict(self.images)

    def image_of(self, name: str):
        for g, value in self.images:
            if g == name:
                return value
        raise KeyError(name)

    def evaluate(self, word: Word):
        """Image of a word under the homomorphism."""
        table = self.image_dict()
        result = self.target.identity()
        for g, e in word.letters:
            img = table[g]
            result = result * (img if e == 1 else img.inverse())
        return result

    def image_subgroup(self) -> frozenset:
        return generated_subgroup(v for _, v in self.images)

    def is_surjective(self) -> bool:
        return len(self.image_subgroup()) == self.target.order
