"""The four-level similarity model: symbols, literals, clauses, clause sets.

Level by level:

* symbol scores come from a pluggable provider (``backends``);
* literal similarity blends predicate and term-vector scores, either flat
  (unweighted) or refined by contextual symbol weights;
* clause similarity is a fuzzy Tversky ratio over max-aggregated literal
  memberships;
* set similarity is a weighted average over best-matching clause pairs,
  matched in both directions by the flat clause similarity.

The final argument score mixes the support and claim set scores with a
factor eta.  Blends are computed as ``low + t*(high - low)`` so that a blend
of two exact 1.0 scores is exactly 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .backends import SymbolSimilarityProvider
from .cnf import Clause, ClauseSet, CompiledArgument, Literal
from .weights import ComparisonWeights, ComponentWeights

TVERSKY_PRESETS = {
    "jac": 1.0,
    "dic": 0.5,
    "sor": 0.25,
    "adb": 0.125,
    "ss": 2.0,
}

PAIR_WEIGHT_AGGREGATORS = ("avg", "prod")


@dataclass
class SimConfig:
    """Model parameters for one comparison.

    ``lam`` trades positional against best-match term comparison inside a
    literal; ``eta`` trades support against claim in the final score;
    ``alpha``/``beta`` penalize the two directions of distinctive features in
    the Tversky ratio; ``pair_weight_aggregator`` combines the two clause
    weights of a matched pair.
    """

    provider: SymbolSimilarityProvider
    lam: float = 0.8
    eta: float = 0.5
    alpha: float = 0.5
    beta: float = 0.5
    tversky_preset: str | None = "dic"
    membership_aggregator: str = "max"
    pair_weight_aggregator: str = "avg"

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lambda must be in (0, 1), got {self.lam}")
        if not 0.0 < self.eta < 1.0:
            raise ValueError(f"eta must be in (0, 1), got {self.eta}")
        if self.tversky_preset is not None:
            try:
                coefficient = TVERSKY_PRESETS[self.tversky_preset]
            except KeyError:
                raise ValueError(
                    f"unknown preset {self.tversky_preset!r}; choose from "
                    f"{sorted(TVERSKY_PRESETS)} or set alpha/beta explicitly"
                ) from None
            self.alpha = coefficient
            self.beta = coefficient
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if self.membership_aggregator != "max":
            raise ValueError("only the 'max' membership aggregator is supported")
        if self.pair_weight_aggregator not in PAIR_WEIGHT_AGGREGATORS:
            raise ValueError(
                f"pair weight aggregator must be one of {PAIR_WEIGHT_AGGREGATORS}"
            )

    def pair_weight(self, w1: float, w2: float) -> float:
        if self.pair_weight_aggregator == "avg":
            return (w1 + w2) / 2.0
        return w1 * w2


def _blend(low: float, high: float, t: float) -> float:
    return low + t * (high - low)


# --- term-vector level -----------------------------------------------------


def sim_ord(a: Sequence[str], b: Sequence[str], provider: SymbolSimilarityProvider) -> float:
    """Positional comparison up to the shorter vector; empty vs empty is 1."""
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    n = min(len(a), len(b))
    return sum(provider.score(a[i], b[i]) for i in range(n)) / n


def _best(x: str, ys: Sequence[str], provider: SymbolSimilarityProvider) -> float:
    return max((provider.score(x, y) for y in ys), default=0.0)


def sim_unord(a: Sequence[str], b: Sequence[str], provider: SymbolSimilarityProvider) -> float:
    """Best-match comparison of every term against the other vector."""
    if not a and not b:
        return 1.0
    total = sum(_best(x, b, provider) for x in a) + sum(_best(y, a, provider) for y in b)
    return total / (len(a) + len(b))


def sim_para(
    a: Sequence[str], b: Sequence[str], lam: float, provider: SymbolSimilarityProvider
) -> float:
    """lam * ordered + (1 - lam) * unordered."""
    return _blend(sim_unord(a, b, provider), sim_ord(a, b, provider), lam)


# --- literal level ----------------------------------------------------------


def _term_strings(l: Literal) -> tuple[str, ...]:
    return tuple(str(t) for t in l.args)


def sim_lit_flat(
    l1: Literal, l2: Literal, lam: float, provider: SymbolSimilarityProvider
) -> float:
    """Mean of the predicate score and the term-vector score."""
    return (provider.score(l1.predicate, l2.predicate) + sim_para(
        _term_strings(l1), _term_strings(l2), lam, provider
    )) / 2.0


def sim_lit_weighted(
    l1: Literal,
    l2: Literal,
    lam: float,
    provider: SymbolSimilarityProvider,
    wp1: ComponentWeights,
    wp2: ComponentWeights,
    ) -> float:
    """Literal similarity with every contribution scaled by symbol weights.

    Weights for ``l1`` come from its own argument's component profile
    (``wp1``) and likewise for ``l2``.  When every weight involved is zero
    the measure falls back to the flat value instead of dividing by zero.
    """
    a = _term_strings(l1)
    b = _term_strings(l2)
    wa = [wp1.symbol_weight(s) for s in a]
    wb = [wp2.symbol_weight(s) for s in b]

    w_pred = wp1.symbol_weight(l1.predicate) * wp2.symbol_weight(l2.predicate)
    w_ord = sum(wa[i] * wb[i] for i in range(min(len(a), len(b))))

    def best_weight(x: str, ys: Sequence[str], wys: Sequence[float]) -> float:
        best_score = -1.0
        best_w = 0.0
        for y, wy in zip(ys, wys):
            s = provider.score(x, y)
            if s > best_score:
                best_score = s
                best_w = wy
        return best_w

    w_unord = sum(wa[i] * best_weight(a[i], b, wb) for i in range(len(a))) + sum(
        wb[j] * best_weight(b[j], a, wa) for j in range(len(b))
    )

    w_terms = _blend(w_unord, w_ord, lam)
    denominator = w_pred + w_terms
    if denominator == 0.0:
        return sim_lit_flat(l1, l2, lam, provider)
    para = sim_para(a, b, lam, provider)
    numerator = w_pred * provider.score(l1.predicate, l2.predicate) + para * w_terms
    return numerator / denominator


# --- clause level -----------------------------------------------------------


def membership(
    x: Literal, ys: Iterable[Literal], sim_lit: Callable[[Literal, Literal], float]
) -> float:
    """Degree to which a literal belongs to a clause: max similarity, 0 if empty."""
    return max((sim_lit(x, y) for y in ys), default=0.0)


def tversky(
    c1: Iterable[Literal],
    c2: Iterable[Literal],
    alpha: float,
    beta: float,
    membership_fn: Callable[[Literal, tuple[Literal, ...]], float],
    reverse_membership_fn: Callable[[Literal, tuple[Literal, ...]], float] | None = None,
) -> float:
    """Fuzzy Tversky ratio A / (A + alpha*B + beta*C) over soft memberships.

    ``reverse_membership_fn`` scores literals of ``c2`` against ``c1``; it
    only needs to differ from ``membership_fn`` when the underlying literal
    similarity is side-dependent (weighted mode, one profile per side).
    """
    lits1 = tuple(c1)
    lits2 = tuple(c2)
    reverse = reverse_membership_fn if reverse_membership_fn is not None else membership_fn
    m1 = [membership_fn(x, lits2) for x in lits1]
    m2 = [reverse(y, lits1) for y in lits2]
    a = (sum(m1) + sum(m2)) / 2.0
    if a == 0.0:
        return 0.0
    b = sum(1.0 - m for m in m1)
    c = sum(1.0 - m for m in m2)
    return a / (a + (alpha * b + beta * c))


def sim_clause(
    c1: Clause,
    c2: Clause,
    config: SimConfig,
    mode: str = "flat",
    wp1: ComponentWeights | None = None,
    wp2: ComponentWeights | None = None,
) -> float:
    """Tversky over literal memberships, flat or symbol-weighted.

    Both modes use the same provider and the same lambda so that the
    best-match selection (flat) stays consistent with the weighted scoring.
    """
    if mode == "flat":
        sim_lit = lambda x, y: sim_lit_flat(x, y, config.lam, config.provider)
        forward = backward = lambda x, ys: membership(x, ys, sim_lit)
    elif mode == "weighted":
        if wp1 is None or wp2 is None:
            raise ValueError("weighted mode needs symbol weights for both sides")
        forward = lambda x, ys: membership(
            x, ys, lambda u, v: sim_lit_weighted(u, v, config.lam, config.provider, wp1, wp2)
        )
        backward = lambda y, xs: membership(
            y, xs, lambda u, v: sim_lit_weighted(u, v, config.lam, config.provider, wp2, wp1)
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return tversky(c1, c2, config.alpha, config.beta, forward, backward)


# --- set level --------------------------------------------------------------


@dataclass(frozen=True)
class MatchedPair:
    """One directed best match: ``source`` is matched into the other set.

    When several clauses attain a source clause's flat maximum, the source's
    single unit of match weight is split evenly: ``weight_share`` is one over
    the number of maximizers.  The maximizer set (unlike an arbitrary pick
    among ties) does not depend on how the vocabulary is spelled, and the
    even split keeps each clause contributing exactly once per direction.
    """

    phi_clause: Clause
    psi_clause: Clause
    direction: str  # "forward": source in phi; "backward": source in psi
    weight_share: float = 1.0

    @property
    def source(self) -> Clause:
        return self.phi_clause if self.direction == "forward" else self.psi_clause

    @property
    def matched(self) -> Clause:
        return self.psi_clause if self.direction == "forward" else self.phi_clause


@dataclass(frozen=True)
class PairScore:
    pair: MatchedPair
    flat: float
    weighted: float
    w_g: float


@dataclass(frozen=True)
class SetScore:
    score: float
    pairs: tuple[PairScore, ...]


def _matched_pairs(
    phi: ClauseSet, psi: ClauseSet, config: SimConfig
) -> tuple[list[MatchedPair], dict[tuple[int, int], float]]:
    """All best-match pairs in both directions, with the flat score table."""
    flat: dict[tuple[int, int], float] = {}
    for i, c1 in enumerate(phi):
        for j, c2 in enumerate(psi):
            flat[(i, j)] = sim_clause(c1, c2, config, mode="flat")

    pairs: list[MatchedPair] = []
    for i, c1 in enumerate(phi):
        best = max(flat[(i, j)] for j in range(len(psi)))
        maximizers = [j for j in range(len(psi)) if flat[(i, j)] == best]
        share = 1.0 / len(maximizers)
        pairs.extend(
            MatchedPair(c1, psi.clauses[j], "forward", share) for j in maximizers
        )
    for j, c2 in enumerate(psi):
        best = max(flat[(i, j)] for i in range(len(phi)))
        maximizers = [i for i in range(len(phi)) if flat[(i, j)] == best]
        share = 1.0 / len(maximizers)
        pairs.extend(
            MatchedPair(phi.clauses[i], c2, "backward", share) for i in maximizers
        )
    return pairs, flat


def best_match_pairs(
    phi: ClauseSet, psi: ClauseSet, config: SimConfig
) -> list[tuple[Clause, Clause]]:
    """Each clause of either set paired with its flat-similarity argmax in the
    other (every maximizer on a tie); an empty side means no pairs."""
    if len(phi) == 0 or len(psi) == 0:
        return []
    pairs, _ = _matched_pairs(phi, psi, config)
    return [(p.source, p.matched) for p in pairs]


def score_sets(
    phi: ClauseSet,
    psi: ClauseSet,
    config: SimConfig,
    weights_phi: ComponentWeights,
    weights_psi: ComponentWeights,
) -> SetScore:
    """Weighted average of weighted clause similarity over best-match pairs.

    Conventions: two empty sets are fully similar, one empty set is fully
    dissimilar, and an all-zero weight mass yields 0.
    """
    if len(phi) == 0 and len(psi) == 0:
        return SetScore(1.0, ())
    if len(phi) == 0 or len(psi) == 0:
        return SetScore(0.0, ())

    pairs, flat = _matched_pairs(phi, psi, config)
    index_phi = {id(c): i for i, c in enumerate(phi)}
    index_psi = {id(c): j for j, c in enumerate(psi)}
    weighted_cache: dict[tuple[int, int], float] = {}

    scored = []
    numerator = 0.0
    denominator = 0.0
    for p in pairs:
        i = index_phi[id(p.phi_clause)]
        j = index_psi[id(p.psi_clause)]
        if (i, j) not in weighted_cache:
            weighted_cache[(i, j)] = sim_clause(
                p.phi_clause, p.psi_clause, config, "weighted", weights_phi, weights_psi
            )
        weighted = weighted_cache[(i, j)]
        w_g = p.weight_share * config.pair_weight(
            weights_phi.clause_weight(p.phi_clause), weights_psi.clause_weight(p.psi_clause)
        )
        numerator += w_g * weighted
        denominator += w_g
        scored.append(PairScore(p, flat[(i, j)], weighted, w_g))

    if denominator == 0.0:
        return SetScore(0.0, tuple(scored))
    return SetScore(numerator / denominator, tuple(scored))


def sim_sets_bm(
    phi: ClauseSet,
    psi: ClauseSet,
    config: SimConfig,
    weights_phi: ComponentWeights,
    weights_psi: ComponentWeights,
) -> float:
    return score_sets(phi, psi, config, weights_phi, weights_psi).score


# --- argument level ---------------------------------------------------------


def combine_eta(support_score: float, claim_score: float, eta: float) -> float:
    """eta * support + (1 - eta) * claim, exact at the 0/1 endpoints."""
    return _blend(claim_score, support_score, eta)


def sim_arg(
    a: CompiledArgument,
    b: CompiledArgument,
    config: SimConfig,
    weights: ComparisonWeights,
) -> float:
    """Eta-weighted mix of support-set and claim-set similarity."""
    wa = weights.profile_for(a.id)
    wb = weights.profile_for(b.id)
    support = sim_sets_bm(a.support, b.support, config, wa.support, wb.support)
    claim = sim_sets_bm(a.claim, b.claim, config, wa.claim, wb.claim)
    return combine_eta(support, claim, config.eta)


def crossover_eta(
    support1: float, claim1: float, support2: float, claim2: float
) -> float | None:
    """The eta in (0, 1) where the two score lines cross, if any.

    Solves ``eta*s1 + (1-eta)*c1 == eta*s2 + (1-eta)*c2``; parallel or
    coincident lines, or a crossing outside (0, 1), yield None.
    """
    denominator = (support1 - support2) - (claim1 - claim2)
    if denominator == 0.0:
        return None
    eta = (claim2 - claim1) / denominator
    if 0.0 < eta < 1.0:
        return eta
    return None
