"""Test-signal generation, normalization, and window synthesis.

Complex series are plain 1-D numpy arrays of complex samples at a
normalized sample rate of 1, so every frequency in this package is a
cycles-per-sample fraction in [-0.5, 0.5] and every cycle frequency a
fraction in [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigurationError

WINDOW_KINDS = ("chebyshev", "rectangular", "hamming")

# Degree-5 maximal-length sequence: s[n] = s[n-2] xor s[n-5] (feedback
# polynomial x^5 + x^3 + 1), seeded from state 00001. Fixed so the spreading
# sequence, and with it the cycle-frequency comb of the generated signal, is
# reproducible bit-for-bit.
_PN_DEGREE = 5
_PN_SEED_BITS = (0, 0, 0, 0, 1)


@dataclass(frozen=True)
class WindowSpec:
    """Window request: kind, length, and sidelobe attenuation (Chebyshev only).

    atten_db defaults to 100 dB, the common tooling default for
    Dolph-Chebyshev channelizer windows.
    """

    kind: str
    length: int
    atten_db: float = 100.0

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise ConfigurationError(
                f"unsupported window kind {self.kind!r}; expected one of {WINDOW_KINDS}"
            )
        if self.length < 2:
            raise ConfigurationError(f"window length must be >= 2, got {self.length}")
        if self.kind == "chebyshev" and not self.atten_db > 0:
            raise ConfigurationError("chebyshev window needs atten_db > 0")


@dataclass(frozen=True)
class DsssBpskConfig:
    """Direct-sequence spread-spectrum BPSK generator parameters.

    processing_gain is the number of spreading chips per data symbol,
    chip_rate the chip rate as a fraction of the sample rate, and snr_db the
    per-realization ratio of mean signal power to mean noise power.
    """

    n_samples: int
    processing_gain: int = 31
    chip_rate: float = 0.25
    snr_db: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ConfigurationError("n_samples must be >= 1")
        if self.processing_gain < 1:
            raise ConfigurationError("processing_gain must be >= 1")
        if not 0.0 < self.chip_rate <= 0.5:
            raise ConfigurationError("chip_rate must satisfy 0 < chip_rate <= 0.5")

    @property
    def samples_per_chip(self) -> int:
        return int(round(1.0 / self.chip_rate))

    @property
    def data_rate(self) -> float:
        """Symbol (data) rate; cycle frequencies fall on its multiples."""
        return self.chip_rate / self.processing_gain


def pn_sequence(n_chips: int) -> np.ndarray:
    """First n_chips of the fixed +/-1 m-sequence, cycled past one period."""
    period = (1 << _PN_DEGREE) - 1
    bits = list(_PN_SEED_BITS)
    for n in range(_PN_DEGREE, period):
        bits.append(bits[n - 2] ^ bits[n - _PN_DEGREE])
    chips = 1.0 - 2.0 * np.array(bits, dtype=np.float64)
    reps = -(-n_chips // period)
    return np.tile(chips, reps)[:n_chips]


def generate_dsss_bpsk(cfg: DsssBpskConfig) -> np.ndarray:
    """Generate a DSSS-BPSK realization with complex AWGN.

    Random BPSK symbols are spread by the fixed PN sequence; each chip is
    held for round(1/chip_rate) samples. Noise power is set from the
    measured clean-signal power so the realized SNR matches snr_db. The
    draw order (symbols first, then noise) is fixed, making the output
    bit-deterministic for a given seed.
    """
    if cfg.chip_rate * cfg.n_samples < cfg.processing_gain:
        raise ConfigurationError(
            "n_samples too short: need chip_rate * n_samples >= processing_gain "
            "(at least one full symbol)"
        )
    sps = cfg.samples_per_chip
    n_chips = -(-cfg.n_samples // sps)
    n_symbols = -(-n_chips // cfg.processing_gain)

    rng = np.random.default_rng(cfg.seed)
    symbols = 1.0 - 2.0 * rng.integers(0, 2, n_symbols).astype(np.float64)
    pn = pn_sequence(cfg.processing_gain)
    chips = (symbols[:, None] * pn[None, :]).reshape(-1)[:n_chips]
    clean = np.repeat(chips, sps)[: cfg.n_samples].astype(np.complex128)

    if not np.isfinite(cfg.snr_db):
        return clean
    signal_power = float(np.mean(np.abs(clean) ** 2))
    noise_power = signal_power / (10.0 ** (cfg.snr_db / 10.0))
    scale = np.sqrt(noise_power / 2.0)
    noise = rng.standard_normal(cfg.n_samples) + 1j * rng.standard_normal(cfg.n_samples)
    return clean + scale * noise


def normalize(x: np.ndarray) -> np.ndarray:
    """Scale a series so its peak modulus is 1; all-zero input passes through.

    Inputs whose peak modulus is already within a few ulps of 1 are returned
    unchanged, which makes repeated normalization an exact fixed point
    (re-dividing by a peak of 1 +/- 1 ulp would otherwise dither the low bits
    forever).
    """
    x = np.asarray(x)
    if x.size == 0:
        return x.copy()
    m = float(np.abs(x).max())
    if m == 0.0:
        return x.copy()
    eps = np.finfo(np.float32 if x.dtype in (np.complex64, np.float32) else np.float64).eps
    if abs(m - 1.0) <= 4.0 * eps:
        return x.copy()
    return x / m


def _chebyshev_window(length: int, atten_db: float) -> np.ndarray:
    """Dolph-Chebyshev window via the inverse DFT of its frequency response."""
    order = length - 1
    big_r = 10.0 ** (atten_db / 20.0)
    beta = np.cosh(np.arccosh(big_r) / order)
    x = beta * np.cos(np.pi * np.arange(length) / length)
    p = np.empty(length, dtype=np.float64)
    sel = x > 1.0
    p[sel] = np.cosh(order * np.arccosh(x[sel]))
    sel = x < -1.0
    p[sel] = (2 * (length % 2) - 1) * np.cosh(order * np.arccosh(-x[sel]))
    sel = np.abs(x) <= 1.0
    p[sel] = np.cos(order * np.arccos(x[sel]))
    if length % 2:
        w = np.fft.fft(p).real
        n = (length + 1) // 2
        w = np.concatenate((w[n - 1:0:-1], w[:n]))
    else:
        q = p * np.exp(1j * np.pi * np.arange(length) / length)
        w = np.fft.fft(q).real
        n = length // 2 + 1
        w = np.concatenate((w[n - 1:0:-1], w[1:n]))
    return w / w.max()


def _hamming_window(length: int) -> np.ndarray:
    # built from one mirrored half so symmetry holds bitwise
    half = np.arange((length + 1) // 2)
    w_half = 0.54 - 0.46 * np.cos(2.0 * np.pi * half / (length - 1))
    w = np.concatenate((w_half, w_half[: length // 2][::-1]))
    return w / w.max()


def make_window(spec: WindowSpec) -> np.ndarray:
    """Synthesize the requested window: symmetric, peak exactly 1, float64."""
    if spec.kind == "rectangular":
        return np.ones(spec.length, dtype=np.float64)
    if spec.kind == "hamming":
        return _hamming_window(spec.length)
    if spec.kind == "chebyshev":
        return _chebyshev_window(spec.length, spec.atten_db)
    raise ConfigurationError(f"unsupported window kind {spec.kind!r}")


def window_array(spec_or_array, length: Optional[int] = None) -> np.ndarray:
    """Accept a WindowSpec or a ready-made array; check length if given."""
    if isinstance(spec_or_array, WindowSpec):
        w = make_window(spec_or_array)
    else:
        w = np.asarray(spec_or_array, dtype=np.float64)
    if length is not None and w.shape != (length,):
        raise ConfigurationError(f"window length {w.shape} does not match required ({length},)")
    return w
