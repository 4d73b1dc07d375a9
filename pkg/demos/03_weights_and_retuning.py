"""Aggregate metric scores under weights, then retune without re-scoring.
=========================================================================

Weights are exact rationals. Beta picks dimensions (zero deselects), alpha
picks metrics inside a dimension; each family sums to exactly 1. Retuning
recomputes dimension scores and the total from the cached metric scores.
"""

from fractions import Fraction

from kgqa.aggregate import (
    WeightProfile,
    assess,
    normalize_weights,
    rank_kgs,
    retune,
    uniform_profile,
)
from kgqa.catalog import catalog
from kgqa.metrics import MetricScore

# pretend two KGs were already scored: a flat 0.8 profile and a spiky one
def flat_scores(value):
    return [
        MetricScore(metric_id=m.metric_id, value=Fraction(value), kind=m.kind,
                    evidence_summary="demo")
        for d in catalog() for m in d.metrics
    ]

strong_everywhere = assess(flat_scores("0.8"), uniform_profile(), kg_id="steady-kg")

spiky = [
    MetricScore(
        metric_id=m.metric_id,
        value=Fraction(1) if d.dimension_id == "timeliness" else Fraction(2, 5),
        kind=m.kind, evidence_summary="demo",
    )
    for d in catalog() for m in d.metrics
]
fresh_but_thin = assess(spiky, uniform_profile(), kg_id="fresh-kg")

print("uniform weights:")
for entry in rank_kgs([strong_everywhere, fresh_but_thin]):
    print(f"  #{entry.rank} {entry.kg_id:10s} T = {entry.total} = {float(entry.total):.4f}")

# a freshness-obsessed use case: put 70% of the importance on timeliness
raw = {d.dimension_id: 1 for d in catalog()}
raw["timeliness"] = 45  # unnormalized importances; normalize_weights scales them
beta = normalize_weights(raw)
retuned_profile = WeightProfile(
    profile_id="freshness-first", beta=beta, alpha=uniform_profile().alpha,
)

print("\nretuned for freshness (no metric re-scored):")
ranking = rank_kgs([
    retune(strong_everywhere, retuned_profile),
    retune(fresh_but_thin, retuned_profile),
])
for entry in ranking:
    print(f"  #{entry.rank} {entry.kg_id:10s} T = {float(entry.total):.4f}")
