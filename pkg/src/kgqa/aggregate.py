"""Weight profiles and score aggregation.

A profile carries per-dimension weights (beta) summing to exactly 1 over the
fixed 20-dimension catalog and, for every positively weighted dimension,
per-metric weights (alpha) summing to exactly 1. Selecting a subset of
dimensions or metrics is expressed through zero weights.

Dimension scores are weighted sums of their metric scores; the total score is
the weighted sum of dimension scores. Metrics or dimensions without evidence
(not_applicable) are excluded and the remaining weights renormalized, with the
effective weights recorded. All arithmetic is exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .catalog import CATALOG_VERSION, DimensionSpec, catalog, resolve_dimension
from .metrics import MetricScore
from .rational import fraction_repr

ZERO = Fraction(0)
ONE = Fraction(1)


class AggregationError(ValueError):
    """Invalid profile, missing scores, or nothing applicable to aggregate."""


@dataclass(frozen=True)
class WeightProfile:
    """Normalized importance weights for dimensions (beta) and metrics (alpha)."""

    profile_id: str
    beta: Mapping[str, Fraction]
    alpha: Mapping[str, Mapping[str, Fraction]]
    use_case_id: Optional[str] = None
    catalog_version: str = CATALOG_VERSION

    def beta_of(self, dimension_id: str) -> Fraction:
        return self.beta.get(dimension_id, ZERO)

    def alpha_of(self, dimension_id: str) -> Mapping[str, Fraction]:
        return self.alpha.get(dimension_id, {})

    def to_json(self) -> dict:
        def rat(x: Fraction) -> dict:
            return {"num": x.numerator, "den": x.denominator}

        return {
            "profile_id": self.profile_id,
            "use_case_id": self.use_case_id,
            "catalog_version": self.catalog_version,
            "beta": {d: rat(v) for d, v in sorted(self.beta.items())},
            "alpha": {
                d: {m: rat(v) for m, v in sorted(metrics.items())}
                for d, metrics in sorted(self.alpha.items())
            },
        }

    @classmethod
    def from_json(cls, doc: dict) -> "WeightProfile":
        from .rational import parse_rational

        return cls(
            profile_id=doc["profile_id"],
            use_case_id=doc.get("use_case_id"),
            catalog_version=doc.get("catalog_version", CATALOG_VERSION),
            beta={d: parse_rational(v) for d, v in doc.get("beta", {}).items()},
            alpha={
                d: {m: parse_rational(v) for m, v in metrics.items()}
                for d, metrics in doc.get("alpha", {}).items()
            },
        )


@dataclass(frozen=True)
class ContributingMetric:
    metric_id: str
    value: Fraction
    alpha: Fraction
    effective_alpha: Fraction

    def to_json(self) -> dict:
        return {
            "metric_id": self.metric_id,
            "value": {"num": self.value.numerator, "den": self.value.denominator},
            "alpha": {"num": self.alpha.numerator, "den": self.alpha.denominator},
            "effective_alpha": {
                "num": self.effective_alpha.numerator,
                "den": self.effective_alpha.denominator,
            },
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ContributingMetric":
        def rat(x: dict) -> Fraction:
            return Fraction(x["num"], x["den"])

        return cls(
            metric_id=doc["metric_id"],
            value=rat(doc["value"]),
            alpha=rat(doc["alpha"]),
            effective_alpha=rat(doc["effective_alpha"]),
        )


@dataclass(frozen=True)
class DimensionScore:
    """Aggregated score of one dimension with its contribution breakdown."""

    dimension_id: str
    value: Optional[Fraction]
    contributing: Tuple[ContributingMetric, ...]
    excluded_not_applicable: Tuple[str, ...]
    not_applicable: bool = False

    def to_json(self) -> dict:
        doc: dict = {
            "dimension_id": self.dimension_id,
            "not_applicable": self.not_applicable,
            "contributing": [c.to_json() for c in self.contributing],
            "excluded_not_applicable": list(self.excluded_not_applicable),
        }
        if self.value is not None:
            doc["value"] = {"num": self.value.numerator, "den": self.value.denominator}
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "DimensionScore":
        value = None
        if "value" in doc:
            value = Fraction(doc["value"]["num"], doc["value"]["den"])
        return cls(
            dimension_id=doc["dimension_id"],
            value=value,
            contributing=tuple(
                ContributingMetric.from_json(c) for c in doc.get("contributing", ())
            ),
            excluded_not_applicable=tuple(doc.get("excluded_not_applicable", ())),
            not_applicable=doc.get("not_applicable", False),
        )


@dataclass(frozen=True)
class KgAssessment:
    """One KG scored under one profile, with the full metric cache."""

    kg_id: str
    profile_id: str
    catalog_version: str
    dimension_scores: Tuple[DimensionScore, ...]
    total: Fraction
    metric_scores: Tuple[MetricScore, ...]
    effective_beta: Mapping[str, Fraction]
    excluded_dimensions: Tuple[str, ...]
    use_case_id: Optional[str] = None

    def dimension(self, dimension_id: str) -> DimensionScore:
        for d in self.dimension_scores:
            if d.dimension_id == dimension_id:
                return d
        raise KeyError(dimension_id)


def validate_profile(profile: WeightProfile) -> List[str]:
    """All weight-constraint violations, empty when the profile is valid."""
    violations: List[str] = []
    dims = {d.dimension_id: d for d in catalog()}

    for dim_id in profile.beta:
        if dim_id not in dims:
            violations.append(f"unknown dimension {dim_id!r} in beta")
    for dim_id, value in profile.beta.items():
        if dim_id in dims and not (ZERO <= value <= ONE):
            violations.append(
                f"beta weight {fraction_repr(value)} for {dim_id} outside [0,1]"
            )

    beta_sum = sum(
        (v for d, v in profile.beta.items() if d in dims), start=ZERO
    )
    if beta_sum != ONE:
        violations.append(f"beta sum {fraction_repr(beta_sum)} != 1")

    for dim_id, metric_weights in profile.alpha.items():
        if dim_id not in dims:
            violations.append(f"unknown dimension {dim_id!r} in alpha")
            continue
        valid_ids = {m.metric_id for m in dims[dim_id].metrics}
        for metric_id, value in metric_weights.items():
            if metric_id not in valid_ids:
                violations.append(
                    f"metric {metric_id!r} does not belong to dimension {dim_id}"
                )
            elif not (ZERO <= value <= ONE):
                violations.append(
                    f"alpha weight {fraction_repr(value)} for {metric_id} outside [0,1]"
                )

    for dim_id, spec in dims.items():
        if profile.beta.get(dim_id, ZERO) > ZERO:
            weights = profile.alpha.get(dim_id, {})
            valid_ids = {m.metric_id for m in spec.metrics}
            alpha_sum = sum(
                (v for m, v in weights.items() if m in valid_ids), start=ZERO
            )
            if alpha_sum != ONE:
                violations.append(
                    f"alpha sum {fraction_repr(alpha_sum)} != 1 for {dim_id}"
                )
    return violations


def require_valid(profile: WeightProfile) -> None:
    violations = validate_profile(profile)
    if violations:
        raise AggregationError("; ".join(violations))


def normalize_weights(raw: Mapping[str, object]) -> Dict[str, Fraction]:
    """Scale nonnegative raw importances so they sum to exactly 1."""
    from .rational import parse_rational

    parsed = {k: parse_rational(v) for k, v in raw.items()}
    for key, value in parsed.items():
        if value < ZERO:
            raise AggregationError(f"negative weight for {key}: {fraction_repr(value)}")
    total = sum(parsed.values(), start=ZERO)
    if total == ZERO:
        raise AggregationError("weights are empty or all zero")
    return {k: v / total for k, v in parsed.items()}


def uniform_profile(profile_id: str = "uniform", use_case_id: Optional[str] = None) -> WeightProfile:
    """Equal beta over all 20 dimensions, equal alpha within each dimension."""
    dims = catalog()
    beta = {d.dimension_id: Fraction(1, len(dims)) for d in dims}
    alpha = {
        d.dimension_id: {
            m.metric_id: Fraction(1, len(d.metrics)) for m in d.metrics
        }
        for d in dims
    }
    return WeightProfile(profile_id=profile_id, beta=beta, alpha=alpha, use_case_id=use_case_id)


def dimension_score(
    dimension_id: str,
    scores: Sequence[MetricScore],
    alpha: Mapping[str, Fraction],
    strict: bool = False,
) -> DimensionScore:
    """Weighted metric aggregate with not_applicable exclusion.

    Metrics carrying zero weight are ignored entirely. Applicable metrics keep
    their relative weights, renormalized to sum to 1; the effective weights are
    recorded on the result.
    """
    spec = resolve_dimension(dimension_id)
    by_id = {s.metric_id: s for s in scores}
    positive = [
        m.metric_id for m in spec.metrics if alpha.get(m.metric_id, ZERO) > ZERO
    ]
    missing = [m for m in positive if m not in by_id]
    if missing:
        raise AggregationError(
            f"missing metric score(s) for positively weighted {', '.join(missing)}"
        )
    applicable = [m for m in positive if not by_id[m].not_applicable]
    excluded = tuple(m for m in positive if by_id[m].not_applicable)
    if strict and excluded:
        raise AggregationError(
            f"not applicable under strict aggregation: {', '.join(excluded)}"
        )
    if not applicable:
        return DimensionScore(
            dimension_id=dimension_id,
            value=None,
            contributing=(),
            excluded_not_applicable=excluded,
            not_applicable=True,
        )
    weight_pool = sum((alpha[m] for m in applicable), start=ZERO)
    contributing = tuple(
        ContributingMetric(
            metric_id=m,
            value=by_id[m].value,
            alpha=alpha[m],
            effective_alpha=alpha[m] / weight_pool,
        )
        for m in applicable
    )
    value = sum((c.value * c.effective_alpha for c in contributing), start=ZERO)
    return DimensionScore(
        dimension_id=dimension_id,
        value=value,
        contributing=contributing,
        excluded_not_applicable=excluded,
    )


def total_score(
    dimension_scores: Mapping[str, DimensionScore],
    beta: Mapping[str, Fraction],
) -> Tuple[Fraction, Dict[str, Fraction], Tuple[str, ...]]:
    """(total, effective beta over applicable dimensions, excluded dimensions)."""
    positive = [d for d, w in beta.items() if w > ZERO]
    missing = [d for d in positive if d not in dimension_scores]
    if missing:
        raise AggregationError(
            f"missing dimension score(s) for positively weighted {', '.join(missing)}"
        )
    applicable = [d for d in positive if not dimension_scores[d].not_applicable]
    excluded = tuple(d for d in positive if dimension_scores[d].not_applicable)
    if not applicable:
        raise AggregationError("all positively weighted dimensions are not applicable")
    pool = sum((beta[d] for d in applicable), start=ZERO)
    effective = {d: beta[d] / pool for d in applicable}
    total = sum(
        (dimension_scores[d].value * effective[d] for d in applicable), start=ZERO
    )
    return total, effective, excluded


def assess(
    metric_scores: Sequence[MetricScore],
    profile: WeightProfile,
    kg_id: str = "",
    strict: bool = False,
) -> KgAssessment:
    """Aggregate cached metric scores into dimension scores and a total."""
    require_valid(profile)
    by_dimension: Dict[str, List[MetricScore]] = {}
    for score in metric_scores:
        dim = score.metric_id.split(".", 1)[0]
        by_dimension.setdefault(dim, []).append(score)

    dim_scores: List[DimensionScore] = []
    for dim in catalog():
        alpha = profile.alpha_of(dim.dimension_id)
        if profile.beta_of(dim.dimension_id) > ZERO:
            dim_scores.append(dimension_score(
                dim.dimension_id,
                by_dimension.get(dim.dimension_id, ()),
                alpha,
                strict=strict,
            ))
        elif alpha and sum(alpha.values(), start=ZERO) == ONE:
            # zero-weight dimension still scored for display when its alphas are valid
            try:
                dim_scores.append(dimension_score(
                    dim.dimension_id,
                    by_dimension.get(dim.dimension_id, ()),
                    alpha,
                ))
            except AggregationError:
                pass

    total, effective_beta, excluded = total_score(
        {d.dimension_id: d for d in dim_scores}, profile.beta,
    )
    return KgAssessment(
        kg_id=kg_id,
        use_case_id=profile.use_case_id,
        profile_id=profile.profile_id,
        catalog_version=profile.catalog_version,
        dimension_scores=tuple(dim_scores),
        total=total,
        metric_scores=tuple(metric_scores),
        effective_beta=effective_beta,
        excluded_dimensions=excluded,
    )


def retune(assessment: KgAssessment, new_profile: WeightProfile, strict: bool = False) -> KgAssessment:
    """Recompute the aggregation from cached scores, no evidence collection."""
    if new_profile.catalog_version != assessment.catalog_version:
        raise AggregationError(
            f"catalog version mismatch: cached scores are {assessment.catalog_version}, "
            f"profile is {new_profile.catalog_version}"
        )
    return assess(
        assessment.metric_scores, new_profile, kg_id=assessment.kg_id, strict=strict,
    )


@dataclass(frozen=True)
class RankingEntry:
    rank: int
    kg_id: str
    total: Fraction
    assessment: KgAssessment


def rank_kgs(assessments: Sequence[KgAssessment]) -> List[RankingEntry]:
    """Order descending by total; ties share a rank and break by kg_id."""
    if not assessments:
        return []
    use_cases = {a.use_case_id for a in assessments}
    profiles = {a.profile_id for a in assessments}
    if len(use_cases) > 1 or len(profiles) > 1:
        raise AggregationError("rankings mix use cases or profiles")
    ordered = sorted(assessments, key=lambda a: (-a.total, a.kg_id))
    entries: List[RankingEntry] = []
    for idx, assessment in enumerate(ordered):
        if idx > 0 and assessment.total == ordered[idx - 1].total:
            rank = entries[-1].rank
        else:
            rank = idx + 1
        entries.append(RankingEntry(
            rank=rank, kg_id=assessment.kg_id,
            total=assessment.total, assessment=assessment,
        ))
    return entries
