import numpy as np
import pytest

from infostorage import Alphabet, EmbeddingConfig, SymbolSeries


def naive_count(x, u, cfg):
    """Reference counting by a direct loop; mirrors the contract exactly."""
    k, lag = cfg.k, cfg.input_lag
    start = k + (max(0, lag - 1) if u is not None else 0)
    counts = {}
    for m in range(start, len(x)):
        h = tuple(int(v) for v in x.data[m - k : m])
        xn = int(x.data[m])
        un = int(u.data[m - lag]) if u is not None else 0
        key = (h, xn, un)
        counts[key] = counts.get(key, 0) + 1
    return counts


def table_to_dict(table):
    """Flatten a JointCountTable into the naive_count key convention."""
    from infostorage.symseq import decode_history

    out = {}
    nz = np.argwhere(table.counts)
    for h, xn, un in nz:
        key = (decode_history(int(h), table.k, table.alphabet_x.size), int(xn), int(un))
        out[key] = int(table.counts[h, xn, un])
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_series(rng, n, alphabet_size):
    return SymbolSeries(Alphabet(alphabet_size), rng.integers(0, alphabet_size, n))
