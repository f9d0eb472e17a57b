# /src/depnet/sampling/rng.py
# Seeded PCG64 streams and the inverse-CDF rule shared by every sampler

from typing import Dict, Sequence

import numpy as np

# Stream names in spawn order; changing the order changes every seeded run.
STREAMS = ("selection", "values", "initial")

# Samplers draw uniforms in blocks of this size; the stream is identical for any block size.
CHUNK = 1 << 16


def seed_streams(seed: int, names: Sequence[str] = STREAMS) -> Dict[str, np.random.Generator]:
    """Independent PCG64 generators derived from one 64-bit seed."""
    children = np.random.SeedSequence(int(seed)).spawn(len(names))
    return {name: np.random.Generator(np.random.PCG64(child)) for name, child in zip(names, children)}


def cumulative(table: np.ndarray) -> np.ndarray:
    """Row-wise CDFs whose last entry is exactly 1 (NaN rows stay NaN)."""
    cdf = np.cumsum(np.asarray(table, dtype=np.float64), axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return cdf / cdf[..., -1:]


def inverse_cdf(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Smallest value whose CDF exceeds u, for a vector of rows and uniforms."""
    cdf = np.atleast_2d(cdf)
    values = (np.asarray(u)[:, None] >= cdf).sum(axis=1)
    return np.minimum(values, cdf.shape[1] - 1)
