"""Line bundle cohomology on G/B and a small claims checker.

Everything here is stated for the full flag variety G/B.  A bundle on a
partial flag variety pulls back to G/B with the same cohomology, so
claims about G/P are entered through the weights of their pullback.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .rootsys import RootSystem, Weight, build_root_system


@dataclass(frozen=True)
class CohomologyResult:
    outcome: str  # "all_zero" or "concentrated"
    degree: int | None = None
    highest_weight: Weight | None = None
    dimension: int = 0

    @property
    def euler_characteristic(self) -> int:
        if self.outcome == "all_zero":
            return 0
        return (-1) ** self.degree * self.dimension

    def as_dict(self) -> dict:
        if self.outcome == "all_zero":
            return {"outcome": "all_zero"}
        return {
            "outcome": "concentrated",
            "degree": self.degree,
            "highest_weight": list(self.highest_weight.coords),
            "dimension": self.dimension,
        }


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    num = Fraction(1)
    shifted = lam + rs.rho
    for k in range(len(rs.positive_roots)):
        num *= Fraction(rs.pair(shifted, k), rs.pair(rs.rho, k))
    assert num.denominator == 1
    return int(num)


def line_bundle_cohomology(rs: RootSystem, chi: Weight) -> CohomologyResult:
    shifted = chi + rs.rho
    if not rs.is_regular(shifted):
        return CohomologyResult("all_zero")
    dominant, word = rs.to_dominant(shifted)
    top = dominant - rs.rho
    return CohomologyResult("concentrated", len(word), top, weyl_dimension(rs, top))


def euler_char_filtered(rs: RootSystem, weights: Sequence[Weight], twist: Weight | None = None) -> int:
    twist = rs.zero() if twist is None else twist
    return sum(line_bundle_cohomology(rs, w + twist).euler_characteristic for w in weights)


# ---------------------------------------------------------------------------
# claims


@dataclass(frozen=True)
class VanishingClaim:
    """One cohomological statement about a bundle on G/B.

    ``weights`` are the line bundle weights of a filtration of the
    bundle, ``twist`` is added to each of them.  ``assertion`` is one of
    ``all_cohomology_zero``, ``euler_char_equals`` (with ``value``) or
    ``concentrated_in`` (with ``degree`` and ``value`` as dimension).
    """

    name: str
    lie_type: str
    rank: int
    weights: tuple[Weight, ...]
    twist: Weight
    assertion: str
    value: int | None = None
    degree: int | None = None
    citation: str = ""
    parabolic: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.weights:
            raise ValueError(f"claim {self.name!r} has no weights")
        if self.assertion not in ("all_cohomology_zero", "euler_char_equals", "concentrated_in"):
            raise ValueError(f"claim {self.name!r}: unknown assertion {self.assertion!r}")
        if self.assertion == "euler_char_equals" and self.value is None:
            raise ValueError(f"claim {self.name!r}: euler_char_equals needs a value")
        if self.assertion == "concentrated_in" and (self.value is None or self.degree is None):
            raise ValueError(f"claim {self.name!r}: concentrated_in needs degree and value")
        width = {len(w) for w in self.weights} | {len(self.twist)}
        if width != {self.rank}:
            raise ValueError(f"claim {self.name!r}: weights must have {self.rank} coordinates")

    @property
    def is_line_bundle(self) -> bool:
        return len(self.weights) == 1


def claim_from_dict(d: dict) -> VanishingClaim:
    try:
        rank = int(d["rank"])
        weights = tuple(Weight(tuple(int(c) for c in w)) for w in d["weights"])
        twist = Weight(tuple(int(c) for c in d.get("twist", [0] * rank)))
        return VanishingClaim(
            name=str(d["name"]),
            lie_type=str(d["lie_type"]),
            rank=rank,
            weights=weights,
            twist=twist,
            assertion=str(d["assertion"]),
            value=d.get("value"),
            degree=d.get("degree"),
            citation=str(d.get("citation", "")),
            parabolic=tuple(d.get("parabolic", ())),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed claim: {d!r}") from exc


def load_claims(path=None) -> list[VanishingClaim]:
    if path is None:
        text = resources.files("artifact.data").joinpath("bott_claims.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    doc = json.loads(text)
    rows = doc["claims"] if isinstance(doc, dict) else doc
    return [claim_from_dict(r) for r in rows]


@dataclass
class ClaimVerdict:
    claim: VanishingClaim
    verdict: str  # verified, refuted or not_decidable
    euler_characteristic: int
    pieces: list[dict] = field(default_factory=list)
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.claim.name,
            "assertion": self.claim.assertion,
            "verdict": self.verdict,
            "euler_characteristic": self.euler_characteristic,
            "pieces": self.pieces,
            "reason": self.reason,
            "citation": self.claim.citation,
        }


def _evaluate(claim: VanishingClaim) -> ClaimVerdict:
    rs = build_root_system(claim.lie_type, claim.rank)
    results = [line_bundle_cohomology(rs, w + claim.twist) for w in claim.weights]
    pieces = [dict(weight=list((w + claim.twist).coords), **r.as_dict()) for w, r in zip(claim.weights, results)]
    chi = sum(r.euler_characteristic for r in results)
    nonzero = [r for r in results if r.outcome == "concentrated"]
    degrees = {r.degree for r in nonzero}

    def done(ok: bool, reason: str) -> ClaimVerdict:
        return ClaimVerdict(claim, "verified" if ok else "refuted", chi, pieces, reason)

    if claim.assertion == "euler_char_equals":
        return done(chi == claim.value, f"euler characteristic {chi}")

    # A filtration whose graded pieces all live in one degree i has its
    # cohomology in degree i, of total dimension: every connecting map
    # in the long exact sequences is zero for degree reasons.
    if len(degrees) <= 1:
        total = sum(r.dimension for r in nonzero)
        deg = next(iter(degrees)) if degrees else None
        if claim.assertion == "all_cohomology_zero":
            return done(total == 0, "every piece vanishes" if total == 0 else f"H^{deg} has dimension {total}")
        ok = total == claim.value and (total == 0 or deg == claim.degree)
        return done(ok, f"cohomology is H^{deg} of dimension {total}" if nonzero else "every piece vanishes")

    # pieces in several degrees: connecting maps may cancel them
    if claim.assertion == "all_cohomology_zero" and chi != 0:
        return done(False, f"euler characteristic {chi} is nonzero")
    if claim.assertion == "concentrated_in" and chi != (-1) ** claim.degree * claim.value:
        return done(False, f"euler characteristic {chi} is incompatible")
    return ClaimVerdict(
        claim,
        "not_decidable",
        chi,
        pieces,
        "graded pieces sit in degrees " + ", ".join(map(str, sorted(degrees))) + "; only the euler characteristic is consistent",
    )


def verify_claims(claims: Sequence[VanishingClaim]) -> list[ClaimVerdict]:
    return [_evaluate(c) for c in claims]


def report_to_markdown(verdicts: Sequence[ClaimVerdict]) -> str:
    lines = ["| claim | assertion | verdict | chi | reason |", "|---|---|---|---|---|"]
    for v in verdicts:
        lines.append(f"| {v.claim.name} | {v.claim.assertion} | {v.verdict} | {v.euler_characteristic} | {v.reason} |")
    return "\n".join(lines) + "\n"
