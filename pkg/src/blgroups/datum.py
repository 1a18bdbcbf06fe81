"""Brascamp-Lieb data on finite groups and their reduction calculus.

A datum is a source group G, codomain groups G_j, homomorphisms G -> G_j,
Lebesgue exponents p_j in [1, inf], and a Haar normalization (counting or
probability) for every group involved.  The reductions implemented here
transform a datum while controlling its constant exactly:

  * canonicalize     quotient out the joint kernel, shrink codomains to
                     images; the constant changes by an explicit exact factor
                     recorded on the returned tag.
  * drop index with p = inf       constant unchanged.
  * reduce at an index with p = 1 pass to the kernel of that map; exact when
                     the normalizations are representable, else refused.
  * split_product    tensor two data; constants multiply.
  * quotient_split   restrict to a normal subgroup and its quotient;
                     the constant is submultiplicative across the split.

Empty data (J = 0) are allowed; their constant is the total Haar mass of G,
which is what makes deletion of a p = inf index exact down to J = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import ExactValue
from .groups import (
    FiniteGroup,
    GroupStructureError,
    HaarMode,
    Homomorphism,
    Subgroup,
    direct_product,
    image,
    kernel,
    normality_witness,
    quotient,
    restrict,
    subgroup_group,
    whole_group,
)


class WrongExponentError(ValueError):
    """The reduction targets an index whose exponent has the wrong value."""


class NotCanonicalError(ValueError):
    """The operation needs a canonical datum."""


class NormalizationError(ValueError):
    """The prescribed Haar normalization is not representable in the two modes."""


@dataclass(frozen=True)
class Exponent:
    """An exponent in [1, inf]; None encodes infinity. Reciprocals are exact."""

    value: Optional[Fraction]

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))
            if self.value < 1:
                raise ValueError(f"exponent must be >= 1, got {self.value}")

    @staticmethod
    def of(x) -> "Exponent":
        if isinstance(x, Exponent):
            return x
        if x is None:
            return INF
        if isinstance(x, str):
            s = x.strip().lower()
            if s in ("inf", "infinity", "oo"):
                return INF
            return Exponent(Fraction(s))
        if isinstance(x, float) and x == float("inf"):
            return INF
        return Exponent(Fraction(x))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def reciprocal(self) -> Fraction:
        return Fraction(0) if self.value is None else 1 / self.value

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


INF = Exponent(None)


@dataclass(frozen=True)
class BLDatum:
    G: FiniteGroup
    codomains: tuple[FiniteGroup, ...]
    maps: tuple[Homomorphism, ...]
    exponents: tuple[Exponent, ...]
    haar_G: HaarMode = HaarMode.PROBABILITY
    haar_codomains: Optional[tuple[HaarMode, ...]] = None

    def __post_init__(self):
        if self.haar_codomains is None:
            object.__setattr__(
                self, "haar_codomains", tuple(HaarMode.PROBABILITY for _ in self.maps)
            )
        J = len(self.maps)
        if not (len(self.codomains) == len(self.exponents) == len(self.haar_codomains) == J):
            raise GroupStructureError("codomains, maps, exponents must have equal length")
        for j, h in enumerate(self.maps):
            if h.domain != self.G:
                raise GroupStructureError(f"map {j} has the wrong domain")
            if h.codomain != self.codomains[j]:
                raise GroupStructureError(f"map {j} has the wrong codomain")

    @property
    def J(self) -> int:
        return len(self.maps)

    def with_haar(self, haar_G=None, haar_codomains=None) -> "BLDatum":
        return BLDatum(
            self.G,
            self.codomains,
            self.maps,
            self.exponents,
            haar_G or self.haar_G,
            tuple(haar_codomains) if haar_codomains else self.haar_codomains,
        )

    def mixed_haar(self) -> bool:
        modes = {self.haar_G, *self.haar_codomains}
        return len(modes) > 1


def make_datum(G, maps, exponents, haar_G=HaarMode.PROBABILITY, haar_codomains=None):
    """Convenience constructor: codomains read off the maps, exponents coerced."""
    maps = tuple(maps)
    exps = tuple(Exponent.of(p) for p in exponents)
    return BLDatum(
        G,
        tuple(h.codomain for h in maps),
        maps,
        exps,
        haar_G,
        tuple(haar_codomains) if haar_codomains else None,
    )


@dataclass(frozen=True)
class CanonicalTag:
    """Whether a datum is canonical, and the exact constant bookkeeping.

    constant_factor relates the constants across canonicalization:
    BL(original) = constant_factor * BL(canonicalized).
    """

    is_canonical: bool
    witness: Optional[str] = None
    constant_factor: ExactValue = field(default_factory=ExactValue.one)


def joint_kernel(d: BLDatum) -> Subgroup:
    members = [
        x
        for x in range(d.G.order)
        if all(h.map[x] == h.codomain.identity for h in d.maps)
    ]
    return Subgroup(d.G, tuple(members))


def canonical_tag(d: BLDatum) -> CanonicalTag:
    for j, h in enumerate(d.maps):
        if len(set(h.map)) != h.codomain.order:
            return CanonicalTag(False, f"map {j} is not surjective")
    K = joint_kernel(d)
    if K.order > 1:
        return CanonicalTag(False, f"joint kernel has order {K.order}")
    return CanonicalTag(True)


def _canonicalization_factor(d: BLDatum, K: Subgroup) -> ExactValue:
    factor = ExactValue.one()
    if d.haar_G is HaarMode.COUNTING:
        factor = factor * ExactValue.from_rational(K.order)
    for j, h in enumerate(d.maps):
        if d.haar_codomains[j] is HaarMode.PROBABILITY:
            img = len(set(h.map))
            index = Fraction(h.codomain.order, img)
            if index != 1:
                factor = factor * ExactValue.from_rational(index) ** d.exponents[j].reciprocal()
    return factor


def canonicalize(d: BLDatum) -> tuple[BLDatum, CanonicalTag]:
    """Quotient out the joint kernel and shrink codomains to the images.

    The output datum is canonical.  The returned tag describes the input and
    carries the exact factor by which the constant changed (1 whenever the
    measures prescribed by the open-subgroup / compact-quotient rules are
    themselves representable, e.g. probability source with surjective maps).
    """
    tag = canonical_tag(d)
    if tag.is_canonical:
        return d, tag
    K = joint_kernel(d)
    factor = _canonicalization_factor(d, K)
    Q, proj = quotient(d.G, K)
    reps = [-1] * Q.order
    for x in range(d.G.order):
        c = proj.map[x]
        if reps[c] < 0:
            reps[c] = x
    new_maps = []
    new_codomains = []
    for h in d.maps:
        img = image(h, whole_group(d.G))
        M, _incl = subgroup_group(img)
        idx = {v: i for i, v in enumerate(img.members)}
        new_map = Homomorphism(Q, M, tuple(idx[h.map[reps[c]]] for c in range(Q.order)))
        new_maps.append(new_map)
        new_codomains.append(M)
    out = BLDatum(
        Q,
        tuple(new_codomains),
        tuple(new_maps),
        d.exponents,
        d.haar_G,
        d.haar_codomains,
    )
    return out, CanonicalTag(False, tag.witness, factor)


def drop_infinite_exponent(d: BLDatum, k: int) -> BLDatum:
    """Delete index k; requires p_k = inf.  The constant is unchanged."""
    if not d.exponents[k].is_infinite:
        raise WrongExponentError(f"exponent {k} is {d.exponents[k]}, not inf")
    keep = [j for j in range(d.J) if j != k]
    return BLDatum(
        d.G,
        tuple(d.codomains[j] for j in keep),
        tuple(d.maps[j] for j in keep),
        tuple(d.exponents[j] for j in keep),
        d.haar_G,
        tuple(d.haar_codomains[j] for j in keep),
    )


def reduce_p1(d: BLDatum, k: int) -> BLDatum:
    """Pass to the kernel of map k; requires p_k = 1 and a canonical datum.

    The reduced datum lives on N = ker(map k) with the other maps restricted
    onto their images.  Exact constant preservation needs the source triple
    to satisfy the quotient integral formula and the codomain pairs to carry
    restricted measures; when the inherited modes cannot express those
    measures the reduction is refused rather than silently rescaled.
    """
    if d.exponents[k].is_infinite or d.exponents[k].value != 1:
        raise WrongExponentError(f"exponent {k} is {d.exponents[k]}, not 1")
    if not canonical_tag(d).is_canonical:
        raise NotCanonicalError("reduce at p = 1 requires a canonical datum")
    N = kernel(d.maps[k])

    # exactness factor between the original and reduced constants; must be 1
    w_G = Fraction(1) if d.haar_G is HaarMode.COUNTING else Fraction(1, d.G.order)
    w_Gk = (
        Fraction(1)
        if d.haar_codomains[k] is HaarMode.COUNTING
        else Fraction(1, d.codomains[k].order)
    )
    w_N = Fraction(1) if d.haar_G is HaarMode.COUNTING else Fraction(1, N.order)
    factor = ExactValue.from_rational(w_G / (w_Gk * w_N))
    for j in range(d.J):
        if j == k:
            continue
        if d.haar_codomains[j] is HaarMode.PROBABILITY:
            img_order = len({d.maps[j].map[x] for x in N.members})
            factor = (
                factor
                * ExactValue.from_rational(
                    Fraction(d.codomains[j].order, img_order)
                )
                ** d.exponents[j].reciprocal()
            )
    if not factor.is_one:
        raise NormalizationError(
            f"inherited Haar modes change the constant by {factor}; "
            "the prescribed restricted measures are not representable"
        )

    new_maps = []
    new_codomains = []
    keep = [j for j in range(d.J) if j != k]
    for j in keep:
        h, M = restrict(d.maps[j], N)
        new_maps.append(h)
        new_codomains.append(M)
    G_N = new_maps[0].domain if new_maps else subgroup_group(N)[0]
    return BLDatum(
        G_N,
        tuple(new_codomains),
        tuple(new_maps),
        tuple(d.exponents[j] for j in keep),
        d.haar_G,
        tuple(d.haar_codomains[j] for j in keep),
    )


def split_product(d1: BLDatum, d2: BLDatum, order_cap: int = 4096) -> BLDatum:
    """Tensor datum on G1 x G2; the constants multiply exactly."""
    if d1.J != d2.J:
        raise WrongExponentError("tensor factors must have equal length")
    if d1.exponents != d2.exponents:
        raise WrongExponentError("tensor factors must have identical exponents")
    if d1.haar_G is not d2.haar_G or any(
        a is not b for a, b in zip(d1.haar_codomains, d2.haar_codomains)
    ):
        raise NormalizationError(
            "tensor factors must share Haar modes; a product of a counting and "
            "a probability measure is neither"
        )
    P, pa, pb = direct_product(d1.G, d2.G, order_cap)
    maps = []
    codomains = []
    for j in range(d1.J):
        C, _, _ = direct_product(d1.codomains[j], d2.codomains[j], order_cap)
        nb = d2.codomains[j].order
        m1, m2 = d1.maps[j].map, d2.maps[j].map
        fused = tuple(m1[pa.map[x]] * nb + m2[pb.map[x]] for x in range(P.order))
        maps.append(Homomorphism(P, C, fused))
        codomains.append(C)
    return BLDatum(
        P,
        tuple(codomains),
        tuple(maps),
        d1.exponents,
        d1.haar_G,
        d1.haar_codomains,
    )


def quotient_split(d: BLDatum, N: Subgroup) -> tuple[BLDatum, BLDatum]:
    """Split a datum along a normal subgroup N into (restricted, quotient).

    Every group keeps its own Haar mode, which makes each (group, subgroup,
    quotient) triple satisfy the quotient integral formula, and the constant
    of d is at most the product of the two returned constants.
    """
    if N.parent != d.G:
        raise GroupStructureError("subgroup parent mismatch")
    w = normality_witness(d.G, N)
    if w is not None:
        raise GroupStructureError(
            f"subgroup is not normal: conjugating member {w[1]} by {w[0]} escapes"
        )
    images = [image(h, N) for h in d.maps]
    for j, img in enumerate(images):
        w = normality_witness(d.codomains[j], img)
        if w is not None:
            raise GroupStructureError(
                f"image under map {j} is not normal: member {w[1]} conjugated "
                f"by {w[0]} escapes"
            )

    restricted_maps = []
    restricted_codomains = []
    for h in d.maps:
        rh, M = restrict(h, N)
        restricted_maps.append(rh)
        restricted_codomains.append(M)
    G_N = restricted_maps[0].domain if restricted_maps else subgroup_group(N)[0]
    restricted = BLDatum(
        G_N,
        tuple(restricted_codomains),
        tuple(restricted_maps),
        d.exponents,
        d.haar_G,
        d.haar_codomains,
    )

    Q, proj = quotient(d.G, N)
    reps = [-1] * Q.order
    for x in range(d.G.order):
        c = proj.map[x]
        if reps[c] < 0:
            reps[c] = x
    quotient_maps = []
    quotient_codomains = []
    for j, h in enumerate(d.maps):
        Qj, proj_j = quotient(d.codomains[j], images[j])
        qmap = Homomorphism(
            Q, Qj, tuple(proj_j.map[h.map[reps[c]]] for c in range(Q.order))
        )
        quotient_maps.append(qmap)
        quotient_codomains.append(Qj)
    quot = BLDatum(
        Q,
        tuple(quotient_codomains),
        tuple(quotient_maps),
        d.exponents,
        d.haar_G,
        d.haar_codomains,
    )
    return restricted, quot
