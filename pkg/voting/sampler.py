"""
Hit-and-run estimates of average-index centroids.

The chain runs in floating point inside the closed polytope, after a pilot
walk has rounded it by its sample covariance. The exact engine stays the
reference wherever it is affordable.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from voting import conf
from voting.exceptions import DegeneratePolytopeError, InvalidInputError
from voting.games import WeightedGame
from voting.indices import AVERAGE_KINDS, IndexKind, average_polytope
from voting.parallel import parallel_map
from voting.polytope import ChebyshevBall, PolytopeH, chebyshev_ball

logger = logging.getLogger(__name__)

MIN_BATCHES = 20
CHUNK = 10000
ESCAPE_TOLERANCE = 1e-12
ROUNDING_ROUNDS = 2
PILOT_STEPS_PER_DIM = 2000
PILOT_STEPS_CAP = 50000
RIDGE = 1e-9


@dataclass(frozen=True)
class ChainConfig:
    seed: int = 1
    burn_in: int = 1000
    thinning: int = 1
    samples: int = 100000

    def __post_init__(self):
        if self.samples < 1:
            raise InvalidInputError('samples must be at least 1')
        if self.burn_in < 0:
            raise InvalidInputError('burn-in must be non-negative')
        if self.thinning < 1:
            raise InvalidInputError('thinning must be at least 1')

    @classmethod
    def from_settings(cls, seed: int = 1, **overrides) -> 'ChainConfig':
        values = {
            'burn_in': conf.get('POWERPOLY_MC_BURN_IN'),
            'samples': conf.get('POWERPOLY_MC_SAMPLES'),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(seed=seed, **values)


@dataclass(frozen=True)
class Estimate:
    kind: IndexKind
    mean: tuple[float, ...]
    stderr: tuple[float, ...]
    samples: int
    quota: float | None = None
    quota_stderr: float | None = None
    reprojections: int = 0

    def to_json(self) -> dict:
        payload = {
            'index': self.kind.value,
            'estimate': [round(v, 6) for v in self.mean],
            'stderr': [round(v, 6) for v in self.stderr],
            'samples': self.samples,
            'reprojections': self.reprojections,
        }
        if self.quota is not None:
            payload['quota_estimate'] = round(self.quota, 6)
            payload['quota_stderr'] = round(self.quota_stderr, 6)
        return payload


def chebyshev_center(p: PolytopeH) -> ChebyshevBall:
    """Center and radius of the largest inscribed ball, by exact LP."""
    if p.dim == 0:
        raise DegeneratePolytopeError('polytope is a single point; inradius is zero',
                                      point=p.recovery.weights_at(()))
    return chebyshev_ball(p.constraints, p.dim)


def _recovery_arrays(p: PolytopeH, n: int, mapping: tuple[int, ...]):
    """Matrix and offset mapping free coordinates to all n voter weights."""
    matrix = np.zeros((n, p.dim))
    offset = np.zeros(n)
    for position, voter in enumerate(mapping):
        form = p.recovery.weights[position]
        matrix[voter - 1] = [float(a) for a in form.coefficients]
        offset[voter - 1] = float(form.constant)
    return matrix, offset


def _batch_stderr(values: np.ndarray) -> np.ndarray:
    count = values.shape[0]
    batches = min(MIN_BATCHES, count)
    if batches < 2:
        return np.zeros(values.shape[1:])
    size = count // batches
    means = values[:batches * size].reshape(batches, size, *values.shape[1:]).mean(axis=1)
    return means.std(axis=0, ddof=1) / math.sqrt(batches)


def _walk(A: np.ndarray, b: np.ndarray, start: np.ndarray, rng: np.random.Generator,
          burn_in: int, thinning: int, samples: int) -> tuple[np.ndarray, int]:
    dim = A.shape[1]
    x = start.copy()
    slack = b - A @ x
    steps = burn_in + samples * thinning
    kept = np.empty((samples, dim))
    stored = 0
    reprojections = 0
    step = 0
    while step < steps:
        block = min(CHUNK, steps - step)
        directions = rng.standard_normal((block, dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        uniforms = rng.random(block)
        projected = directions @ A.T
        for k in range(block):
            ad = projected[k]
            forward = ad > 0
            backward = ad < 0
            upper = np.min(slack[forward] / ad[forward]) if forward.any() else 0.0
            lower = np.max(slack[backward] / ad[backward]) if backward.any() else 0.0
            t = lower + uniforms[k] * (upper - lower)
            moved = x + t * directions[k]
            moved_slack = slack - t * ad
            if moved_slack.min() < -ESCAPE_TOLERANCE:
                moved_slack = b - A @ moved
                if moved_slack.min() < -ESCAPE_TOLERANCE:
                    # stay put; the chain re-enters from the last interior point
                    reprojections += 1
                    moved, moved_slack = x, slack
            x, slack = moved, moved_slack
            index = step + k - burn_in
            if index >= 0 and index % thinning == 0:
                kept[stored] = x
                stored += 1
        step += block
    return kept[:stored], reprojections


def _rounding_transform(A: np.ndarray, b: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Cholesky factor of the pilot covariance; maps a near-ball onto the polytope.

    `A y <= b` must hold strictly at y = 0.
    """
    dim = A.shape[1]
    transform = np.eye(dim)
    pilot_steps = min(PILOT_STEPS_PER_DIM * dim, PILOT_STEPS_CAP)
    for _ in range(ROUNDING_ROUNDS):
        pilot, _ = _walk(A @ transform, b, np.zeros(dim), rng, 0, 1, pilot_steps)
        points = pilot @ transform.T
        covariance = np.atleast_2d(np.cov(points, rowvar=False))
        covariance += np.eye(dim) * RIDGE * max(np.trace(covariance) / dim, RIDGE)
        try:
            transform = np.linalg.cholesky(covariance)
        except np.linalg.LinAlgError:
            logger.debug('pilot covariance not positive definite; keeping the previous rounding')
            break
    return transform


def _run_chain(A: np.ndarray, b: np.ndarray, start: np.ndarray, config: ChainConfig) -> tuple[np.ndarray, int]:
    rng = np.random.default_rng(config.seed)
    dim = A.shape[1]
    # walk in coordinates z with y = start + transform @ z
    shifted = b - A @ start
    transform = _rounding_transform(A, shifted, rng)
    draws, reprojections = _walk(A @ transform, shifted, np.zeros(dim), rng,
                                 config.burn_in, config.thinning, config.samples)
    return start + draws @ transform.T, reprojections


def hit_and_run_estimate(game: WeightedGame, kind: IndexKind | str, config: ChainConfig | None = None) -> Estimate:
    """Monte Carlo centroid of the polytope behind an average index."""
    kind = IndexKind(kind)
    if kind not in AVERAGE_KINDS:
        raise InvalidInputError(f'{kind.label} has no polytope to sample')
    config = config or ChainConfig.from_settings()
    polytope, mapping = average_polytope(game, kind)
    n = game.n

    if polytope.dim == 0:
        point = np.zeros(n)
        for position, voter in enumerate(mapping):
            point[voter - 1] = float(polytope.recovery.weights[position].constant)
        return Estimate(kind=kind, mean=tuple(point.tolist()), stderr=(0.0,) * n, samples=config.samples)

    A = np.array([[float(a) for a in c.coefficients] for c in polytope.constraints])
    b = np.array([float(c.rhs) for c in polytope.constraints])
    start = np.array([float(v) for v in chebyshev_center(polytope).center])
    draws, reprojections = _run_chain(A, b, start, config)
    if reprojections:
        logger.warning('%s chain for %s re-entered %d times', kind.label, game, reprojections)

    matrix, offset = _recovery_arrays(polytope, n, mapping)
    weights = draws @ matrix.T + offset
    quota = quota_stderr = None
    if polytope.recovery.quota is not None:
        quotas = draws @ np.array([float(a) for a in polytope.recovery.quota.coefficients])
        quotas = quotas + float(polytope.recovery.quota.constant)
        quota = float(quotas.mean())
        quota_stderr = float(_batch_stderr(quotas[:, None])[0])
    return Estimate(
        kind=kind,
        mean=tuple(weights.mean(axis=0).tolist()),
        stderr=tuple(_batch_stderr(weights).tolist()),
        samples=draws.shape[0],
        quota=quota,
        quota_stderr=quota_stderr,
        reprojections=reprojections,
    )


def _chain_for_seed(seed: int, game: WeightedGame, kind: IndexKind, config: ChainConfig) -> Estimate:
    seeded = ChainConfig(seed=seed, burn_in=config.burn_in, thinning=config.thinning, samples=config.samples)
    return hit_and_run_estimate(game, kind, seeded)


def hit_and_run_chains(game: WeightedGame, kind: IndexKind | str, config: ChainConfig | None = None,
                       chains: int = 1) -> Estimate:
    """Independent chains with seeds seed, seed+1, ... merged in seed order."""
    if chains < 1:
        raise InvalidInputError('need at least one chain')
    kind = IndexKind(kind)
    config = config or ChainConfig.from_settings()
    seeds = [config.seed + c for c in range(chains)]
    estimates = parallel_map(partial(_chain_for_seed, game=game, kind=kind, config=config), seeds)
    if chains == 1:
        return estimates[0]
    counts = np.array([e.samples for e in estimates], dtype=float)
    share = counts / counts.sum()
    means = np.array([e.mean for e in estimates])
    errors = np.array([e.stderr for e in estimates])
    quota = quota_stderr = None
    if estimates[0].quota is not None:
        quota = float(share @ np.array([e.quota for e in estimates]))
        quota_stderr = float(np.sqrt(share ** 2 @ np.array([e.quota_stderr for e in estimates]) ** 2))
    return Estimate(
        kind=kind,
        mean=tuple((share @ means).tolist()),
        stderr=tuple(np.sqrt(share ** 2 @ errors ** 2).tolist()),
        samples=int(counts.sum()),
        quota=quota,
        quota_stderr=quota_stderr,
        reprojections=sum(e.reprojections for e in estimates),
    )
