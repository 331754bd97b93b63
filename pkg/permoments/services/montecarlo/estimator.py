"""
Monte Carlo moment estimation.

Samples are drawn in fixed-size shards, each with its own child of one
SeedSequence, so the stream depends only on (seed, shard size) and not on
how many threads run the shards. Shard statistics are merged in shard order.
"""
import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from permoments.config import Settings, get_settings
from permoments.exceptions import PermomentsError
from permoments.schemas.base import format_exact
from permoments.schemas.estimate import EstimateReport, MomentEstimate, SampleConfig
from permoments.schemas.moment import Ensemble
from permoments.services.moments.determinant import (
    det_moment_gaussian,
    det_moment_unitary_minor,
)
from permoments.services.moments.gaussian import gaussian_moment_value
from permoments.services.moments.unitary import unitary_minor_value
from permoments.services.montecarlo.permanent import permanents
from permoments.services.montecarlo.sampling import (
    sample_gaussian_batch,
    sample_haar_minor_batch,
)

logger = logging.getLogger('permoments.montecarlo')

GATED_ORDERS = (1, 2)


@dataclass
class RunningMoment:
    """Count, mean and sum of squared deviations of one sample stream."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def of(cls, values: np.ndarray) -> "RunningMoment":
        if values.size == 0:
            return cls()
        mean = float(values.mean())
        m2 = float(((values - mean) ** 2).sum())
        return cls(count=int(values.size), mean=mean, m2=m2)

    def merge(self, other: "RunningMoment") -> "RunningMoment":
        """Chan et al. pairwise update."""
        if other.count == 0:
            return self
        if self.count == 0:
            return other
        n = self.count + other.count
        delta = other.mean - self.mean
        return RunningMoment(
            count=n,
            mean=self.mean + delta * other.count / n,
            m2=self.m2 + other.m2 + delta * delta * self.count * other.count / n,
        )

    @property
    def stderr(self) -> float | None:
        if self.count < 2:
            return None
        return float(np.sqrt(self.m2 / (self.count - 1) / self.count))


Sampler = Callable[[int, np.random.Generator], np.ndarray]


def _sampler(cfg: SampleConfig, settings: Settings) -> Sampler:
    """Function drawing n values of |X|^2 for the configured ensemble."""
    if cfg.ensemble is Ensemble.GAUSSIAN:
        return lambda n, rng: np.abs(
            permanents(sample_gaussian_batch(cfg.k, n, rng), settings)
        ) ** 2
    if cfg.ensemble is Ensemble.UNITARY_MINOR:
        return lambda n, rng: np.abs(
            permanents(sample_haar_minor_batch(cfg.d, cfg.k, n, rng), settings)
        ) ** 2
    if cfg.ensemble is Ensemble.DET_GAUSSIAN:
        return lambda n, rng: np.abs(
            np.linalg.det(sample_gaussian_batch(cfg.k, n, rng))
        ) ** 2
    return lambda n, rng: np.abs(
        np.linalg.det(sample_haar_minor_batch(cfg.d, cfg.k, n, rng))
    ) ** 2


def exact_reference(cfg: SampleConfig, t: int, settings: Settings) -> Fraction | None:
    """Exact E|X|^{2t} when one is computable within budget, else None."""
    try:
        if cfg.ensemble is Ensemble.GAUSSIAN:
            return Fraction(gaussian_moment_value(cfg.k, t, settings)[0])
        if cfg.ensemble is Ensemble.UNITARY_MINOR:
            return unitary_minor_value(cfg.d, cfg.k, t, settings)[0]
        if cfg.ensemble is Ensemble.DET_GAUSSIAN:
            return Fraction(det_moment_gaussian(cfg.k, t))
        return det_moment_unitary_minor(cfg.d, cfg.k, t)
    except PermomentsError as exc:
        logger.info(f"No exact reference for t={t}: {exc.message}")
        return None


def _shard_sizes(samples: int, shard_size: int) -> list[int]:
    full, rest = divmod(samples, shard_size)
    return [shard_size] * full + ([rest] if rest else [])


def estimate_moments(
    cfg: SampleConfig,
    settings: Settings | None = None,
    threads: int | None = None,
    dump: Path | None = None,
) -> EstimateReport:
    """Empirical E|X|^{2t} per order, with z-scores against exact values."""
    settings = settings or get_settings()
    threads = threads or settings.THREADS
    shard_size = cfg.shard_size or settings.MC_SHARD_SIZE
    sizes = _shard_sizes(cfg.samples, shard_size)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
    draw = _sampler(cfg, settings)
    orders = list(cfg.orders)

    def run_shard(
        job: tuple[int, np.random.SeedSequence]
    ) -> tuple[list[RunningMoment], np.ndarray]:
        size, seed = job
        values = draw(size, np.random.default_rng(seed))
        return [RunningMoment.of(values**t) for t in orders], values

    logger.info(
        f"Sampling {cfg.samples} {cfg.ensemble.value} matrices in "
        f"{len(sizes)} shards on {threads} threads"
    )
    totals = [RunningMoment() for _ in orders]
    raw: list[np.ndarray] = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for stats, values in pool.map(run_shard, zip(sizes, seeds)):
            totals = [acc.merge(s) for acc, s in zip(totals, stats)]
            if dump is not None:
                raw.append(values)

    if dump is not None:
        with open(dump, "w", encoding="utf-8") as fh:
            for block in raw:
                fh.writelines(f"{v:.17g}\n" for v in block)
        logger.info(f"Wrote {cfg.samples} raw samples to {dump}")

    estimates = []
    for t, acc in zip(orders, totals):
        exact = exact_reference(cfg, t, settings)
        stderr = acc.stderr
        z = None
        if exact is not None and stderr:
            z = (acc.mean - float(exact)) / stderr
        gated = t in GATED_ORDERS
        within = None
        if gated and z is not None:
            within = abs(z) <= settings.MC_SIGMA_THRESHOLD
        if within is False:
            logger.warning(f"Order t={t} is {z:.2f} standard errors from exact")
        estimates.append(
            MomentEstimate(
                t=t,
                mean=acc.mean,
                stderr=stderr,
                exact=format_exact(exact) if exact is not None else None,
                exact_float=float(exact) if exact is not None else None,
                z_score=z,
                gated=gated,
                within_threshold=within,
            )
        )
    return EstimateReport(config=cfg, estimates=estimates)
