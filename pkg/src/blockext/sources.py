"""Block-source simulators and min-entropy certification.

Simulators exist to drive end-to-end tests: they draw samples from a fixed
model with a seeded deterministic generator, so streams are reproducible but
are NOT cryptographic randomness and must never be used as real entropy
input.  A certificate states the largest per-sample-bit min-entropy rate
the model guarantees for every contiguous window of samples conditioned on
any earlier assignment (the forward-block property):

  * i.i.d. models: rate * b = -log2(max point mass), exact.
  * order-1 Markov models (started from the uniform state distribution):
    rate * b = -log2(max transition probability); the uniform start never
    binds because each row's maximum is at least 2^-b.
  * explicit joint tables over at most 3 samples with b <= 4: checked
    exhaustively over every window and every positive-probability prefix.

File-backed sources replay captured bytes and are uncertifiable from data
alone; their rate is a physical assumption the caller must supply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InfeasibleError, TruncatedSourceError, UncertifiableError

PROB_SUM_TOL = 2.0 ** -30

_ANALYTIC_KINDS = ("iid-biased", "iid-table", "markov")


@dataclass(frozen=True)
class SourceModel:
    """A (b, N, rate)-block source specification.

    Use the factory functions (:func:`iid_biased`, :func:`iid_table`,
    :func:`markov`, :func:`file_source`, :func:`joint_table`) rather than
    constructing directly; they validate their parameters.
    """

    kind: str
    bits_per_sample: int
    seed: int = 0
    p: float | None = None
    table: np.ndarray | None = None
    path: str | None = None


@dataclass(frozen=True)
class MinEntropyCertificate:
    rate: float             # certified min-entropy bits per sample bit
    method: str             # "analytic" | "exhaustive"
    worst_guess_prob: float  # the conditional point mass that binds the rate


def _check_distribution(probs: np.ndarray, what: str) -> np.ndarray:
    probs = np.asarray(probs, dtype=np.float64)
    if np.any(probs < 0):
        raise ValueError(f"{what} has negative entries")
    if abs(float(probs.sum()) - 1.0) > PROB_SUM_TOL:
        raise ValueError(f"{what} sums to {probs.sum()!r}, not 1 within 2^-30")
    return probs


def iid_biased(p: float, seed: int = 0) -> SourceModel:
    """One-bit i.i.d. samples, each 1 with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"bias {p} outside [0,1]")
    return SourceModel(kind="iid-biased", bits_per_sample=1, seed=seed, p=p)


def iid_table(probs: Sequence[float], bits_per_sample: int, seed: int = 0) -> SourceModel:
    """i.i.d. b-bit samples drawn from an explicit probability table."""
    probs = _check_distribution(np.asarray(probs), "probability table")
    if probs.shape != (1 << bits_per_sample,):
        raise ValueError(
            f"table length {probs.shape} does not match 2^{bits_per_sample} outcomes"
        )
    return SourceModel(kind="iid-table", bits_per_sample=bits_per_sample, seed=seed, table=probs)


def markov(transitions, bits_per_sample: int, seed: int = 0) -> SourceModel:
    """Order-1 chain over b-bit states; the first sample is uniform."""
    t = np.asarray(transitions, dtype=np.float64)
    size = 1 << bits_per_sample
    if t.shape != (size, size):
        raise ValueError(f"transition table must be {size}x{size}, got {t.shape}")
    for row in range(size):
        _check_distribution(t[row], f"transition row {row}")
    return SourceModel(kind="markov", bits_per_sample=bits_per_sample, seed=seed, table=t)


def file_source(path: str, bits_per_sample: int) -> SourceModel:
    """Replay raw bytes from a file as b-bit samples."""
    return SourceModel(kind="file", bits_per_sample=bits_per_sample, path=path)


def joint_table(probs, bits_per_sample: int) -> SourceModel:
    """Explicit joint distribution of a few consecutive samples.

    Only used by the exhaustive certifier; shape must be (2^b,) * m for
    m samples.
    """
    probs = np.asarray(probs, dtype=np.float64)
    size = 1 << bits_per_sample
    if probs.ndim < 1 or any(s != size for s in probs.shape):
        raise ValueError(f"joint table axes must all have length {size}")
    _check_distribution(probs, "joint table")
    return SourceModel(kind="joint", bits_per_sample=bits_per_sample, table=probs)


def _pack_samples(values: np.ndarray, bits_per_sample: int) -> bytes:
    b = bits_per_sample
    values = values.astype(np.uint64, copy=False)
    shifts = np.arange(b, dtype=np.uint64)
    bits = ((values[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)
    return np.packbits(bits.reshape(-1), bitorder="little").tobytes()


def generate(model: SourceModel, count: int) -> bytes:
    """Deterministic sample stream: count samples packed little-endian.

    The result holds count * b bits; trailing pad bits of the final byte
    are zero.
    """
    if count < 1:
        raise ValueError("sample count must be >= 1")
    b = model.bits_per_sample
    if model.kind == "iid-biased":
        rng = np.random.default_rng(model.seed)
        bits = (rng.random(count) < model.p).astype(np.uint8)
        return np.packbits(bits, bitorder="little").tobytes()
    if model.kind == "iid-table":
        rng = np.random.default_rng(model.seed)
        values = rng.choice(len(model.table), size=count, p=model.table)
        return _pack_samples(values.astype(np.uint64), b)
    if model.kind == "markov":
        rng = np.random.default_rng(model.seed)
        cum = np.cumsum(model.table, axis=1)
        cum[:, -1] = 1.0  # guard against float sum drift
        u = rng.random(count)
        values = np.empty(count, dtype=np.uint64)
        state = rng.integers(0, 1 << b)
        for i in range(count):
            state = int(np.searchsorted(cum[state], u[i], side="right"))
            state = min(state, (1 << b) - 1)
            values[i] = state
        return _pack_samples(values, b)
    if model.kind == "file":
        need_bits = count * b
        need_bytes = (need_bits + 7) // 8
        with open(model.path, "rb") as fh:
            data = fh.read(need_bytes)
        if len(data) < need_bytes:
            raise TruncatedSourceError(
                f"{model.path} holds {len(data)} bytes; {need_bytes} needed for "
                f"{count} samples of {b} bits"
            )
        buf = bytearray(data)
        if need_bits % 8:
            buf[-1] &= (1 << (need_bits % 8)) - 1
        return bytes(buf)
    raise ValueError(f"cannot generate from a {model.kind!r} model")


def certify_forward_block(model: SourceModel) -> MinEntropyCertificate:
    """Largest rate for which the model is a forward block source.

    Analytic for i.i.d. and Markov models; exhaustive for small joint
    tables.  File models raise: independence and entropy of captured data
    are physical assumptions, not checkable from the bytes.
    """
    b = model.bits_per_sample
    if model.kind == "iid-biased":
        pmax = max(model.p, 1.0 - model.p)
        return MinEntropyCertificate(_rate_from_pmax(pmax, b), "analytic", pmax)
    if model.kind == "iid-table":
        pmax = float(model.table.max())
        return MinEntropyCertificate(_rate_from_pmax(pmax, b), "analytic", pmax)
    if model.kind == "markov":
        # Any window conditioned on a prefix is a path of transitions; each
        # step's mass is at most the global max entry, and the uniform start
        # distribution (2^-b <= any row max) never binds.
        pmax = float(model.table.max())
        return MinEntropyCertificate(_rate_from_pmax(pmax, b), "analytic", pmax)
    if model.kind == "joint":
        return _certify_joint(model)
    if model.kind == "file":
        raise UncertifiableError(
            "file-backed sources carry no model; their entropy rate is a "
            "physical assumption"
        )
    raise ValueError(f"unknown model kind {model.kind!r}")


def _rate_from_pmax(pmax: float, b: int) -> float:
    if pmax >= 1.0:
        return 0.0
    return -math.log2(pmax) / b


def _certify_joint(model: SourceModel) -> MinEntropyCertificate:
    b = model.bits_per_sample
    probs = model.table
    m = probs.ndim
    if m > 3 or b > 4:
        raise InfeasibleError(
            f"exhaustive certification limited to <= 3 samples of <= 4 bits; "
            f"got {m} samples of {b} bits"
        )
    size = 1 << b
    worst_rate = 1.0
    worst_p = 0.0
    for k in range(1, m + 1):
        prefix_shape = (size,) * (k - 1)
        for prefix in np.ndindex(*prefix_shape):
            sub = probs[prefix]          # joint over samples k..m
            mass = float(sub.sum())
            if mass == 0.0:
                continue  # conditioning on an impossible prefix is undefined
            for i in range(k, m + 1):
                window = i - k + 1
                trailing = tuple(range(window, m - k + 1))
                marginal = sub.sum(axis=trailing) if trailing else sub
                cond_max = min(1.0, float(marginal.max()) / mass)
                rate = 0.0 if cond_max >= 1.0 else -math.log2(cond_max) / (window * b)
                if rate < worst_rate or (rate == worst_rate and cond_max > worst_p):
                    worst_rate = rate
                    worst_p = cond_max
    return MinEntropyCertificate(worst_rate, "exhaustive", worst_p)


def parse_model(config: dict) -> SourceModel:
    """Build a model from a parsed JSON config dict."""
    kind = config.get("kind")
    seed = int(config.get("seed", 0))
    b = int(config.get("b", config.get("bits_per_sample", 1)))
    if kind == "iid-biased":
        return iid_biased(float(config["p"]), seed=seed)
    if kind == "iid-table":
        return iid_table(config["probs"], b, seed=seed)
    if kind == "uniform":
        return iid_table(np.full(1 << b, 1.0 / (1 << b)), b, seed=seed)
    if kind == "markov":
        return markov(config["transitions"], b, seed=seed)
    if kind == "file":
        return file_source(str(config["path"]), b)
    if kind == "joint":
        size = 1 << b
        probs = np.asarray(config["probs"], dtype=np.float64)
        m = int(round(math.log(probs.size, size)))
        return joint_table(probs.reshape((size,) * m), b)
    raise ValueError(f"unknown source kind {kind!r}")


__all__ = [
    "MinEntropyCertificate",
    "SourceModel",
    "certify_forward_block",
    "file_source",
    "generate",
    "iid_biased",
    "iid_table",
    "joint_table",
    "markov",
    "parse_model",
]
