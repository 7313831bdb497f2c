from typing import Annotated, Literal, Optional, Sequence, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator
from scipy import stats
from scipy.special import betaln, gammaln

from src.config import config
from src.errors import DegenerateDistribution, TruncationError
from src.moments.empirical import MomentSummary, OrdPoint, ord_coords, weighted_moments


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True)


class BinomialSpec(_Spec):
    family: Literal["binomial"] = "binomial"
    n: int = Field(ge=0)
    p: float = Field(gt=0, lt=1)


class PoissonSpec(_Spec):
    family: Literal["poisson"] = "poisson"
    lam: float = Field(gt=0)


class NegBinomialSpec(_Spec):
    """Number of failures before the r-th success."""
    family: Literal["negbinomial"] = "negbinomial"
    r: float = Field(gt=0)
    p: float = Field(gt=0, lt=1)


class HypergeometricSpec(_Spec):
    family: Literal["hypergeometric"] = "hypergeometric"
    population: int = Field(ge=1)
    successes: int = Field(ge=0)
    draws: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_sizes(self):
        if self.successes > self.population or self.draws > self.population:
            raise ValueError("successes and draws must not exceed the population")
        return self


class BetaBinomialSpec(_Spec):
    family: Literal["betabinomial"] = "betabinomial"
    n: int = Field(ge=0)
    alpha: float = Field(gt=0)
    beta: float = Field(gt=0)


DistSpec = Annotated[
    Union[BinomialSpec, PoissonSpec, NegBinomialSpec, HypergeometricSpec, BetaBinomialSpec],
    Field(discriminator="family"),
]

_spec_adapter = TypeAdapter(DistSpec)

# Positional parameter names accepted on the command line, per family
PARAM_NAMES = {
    "binomial": ["n", "p"],
    "poisson": ["lam"],
    "negbinomial": ["r", "p"],
    "hypergeometric": ["population", "successes", "draws"],
    "betabinomial": ["n", "alpha", "beta"],
}


def parse_dist_spec(family: str, params: Sequence[str]) -> DistSpec:
    """Build a DistSpec from a family name and positional parameter strings."""
    family = family.lower().replace("-", "").replace("_", "")
    if family not in PARAM_NAMES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(PARAM_NAMES)}")
    names = PARAM_NAMES[family]
    if len(params) != len(names):
        raise ValueError(f"{family} takes {len(names)} parameters ({', '.join(names)}), got {len(params)}")
    return _spec_adapter.validate_python({"family": family, **dict(zip(names, (p.strip() for p in params)))})


def _log_comb(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _finite_pmf(spec: DistSpec):
    """Support and pmf of the finite-support families, from log-gamma / log-beta terms."""
    if isinstance(spec, HypergeometricSpec):
        N, K, n = spec.population, spec.successes, spec.draws
        k = np.arange(max(0, n - (N - K)), min(n, K) + 1)
        logp = _log_comb(K, k) + _log_comb(N - K, n - k) - _log_comb(N, n)
    elif isinstance(spec, BetaBinomialSpec):
        k = np.arange(0, spec.n + 1)
        logp = _log_comb(spec.n, k) + betaln(k + spec.alpha, spec.n - k + spec.beta) - betaln(spec.alpha, spec.beta)
    else:
        raise TypeError(f"{spec.family} has no finite-support pmf path")
    return k.astype(float), np.exp(logp)


def dist_moments(spec: DistSpec) -> MomentSummary:
    """Exact moments: closed forms for binomial, Poisson and negative binomial, pmf sums otherwise."""
    if isinstance(spec, BinomialSpec):
        q = 1.0 - spec.p
        npq = spec.n * spec.p * q
        return MomentSummary(mean=spec.n * spec.p, mu2=npq, mu3=npq * (q - spec.p))
    if isinstance(spec, PoissonSpec):
        return MomentSummary(mean=spec.lam, mu2=spec.lam, mu3=spec.lam)
    if isinstance(spec, NegBinomialSpec):
        q = 1.0 - spec.p
        rq = spec.r * q
        return MomentSummary(mean=rq / spec.p, mu2=rq / spec.p ** 2, mu3=rq * (1.0 + q) / spec.p ** 3)
    support, pmf = _finite_pmf(spec)
    return weighted_moments(support, pmf)


def dist_point(spec: DistSpec) -> OrdPoint:
    """(I, S) of a theoretical distribution."""
    moments = dist_moments(spec)
    if moments.mu2 <= 0.0 or moments.mean <= 0.0:
        raise DegenerateDistribution(f"{spec.family} with {spec.model_dump(exclude={'family'})} is degenerate")
    return ord_coords(moments)


def _frozen(spec: DistSpec):
    if isinstance(spec, BinomialSpec):
        return stats.binom(spec.n, spec.p)
    if isinstance(spec, PoissonSpec):
        return stats.poisson(spec.lam)
    if isinstance(spec, NegBinomialSpec):
        return stats.nbinom(spec.r, spec.p)
    if isinstance(spec, HypergeometricSpec):
        return stats.hypergeom(spec.population, spec.successes, spec.draws)
    return stats.betabinom(spec.n, spec.alpha, spec.beta)


def summation_moments(
    spec: DistSpec,
    tail_tol: Optional[float] = None,
    support_cap: Optional[int] = None,
    chunk: int = 4096,
) -> MomentSummary:
    """Moments by summing a reference pmf; infinite supports stop once the tail mass is <= tail_tol."""
    tail_tol = config.theory.tail_tol if tail_tol is None else tail_tol
    support_cap = config.theory.support_cap if support_cap is None else support_cap
    if not 0 < tail_tol <= 1e-6:
        raise ValueError(f"tail_tol must lie in (0, 1e-6], got {tail_tol}")

    dist = _frozen(spec)
    lo, hi = dist.support()
    if np.isfinite(hi):
        k = np.arange(int(lo), int(hi) + 1)
        return weighted_moments(k, dist.pmf(k))

    start = int(lo)
    while start < support_cap:
        k = np.arange(start, min(start + chunk, support_cap))
        # sf(k) = P(X > k): the mass left outside the support accumulated so far
        done = np.nonzero(dist.sf(k) <= tail_tol)[0]
        if done.size:
            last = int(k[done[0]])
            support = np.arange(int(lo), last + 1)
            logger.debug(f"Theory: {spec.family} truncated at k={last} (tail <= {tail_tol:g})")
            return weighted_moments(support, dist.pmf(support))
        start += chunk
    raise TruncationError(f"{spec.family} tail mass still above {tail_tol:g} after {support_cap} support points")
