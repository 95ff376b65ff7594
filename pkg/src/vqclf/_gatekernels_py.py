"""Pure-numpy gate kernels (fallback backend).

Every kernel mutates a contiguous complex128 statevector in place and
mirrors the arithmetic of the compiled backend expression for expression,
so both produce bit-identical amplitudes.

Basis index convention: qubit ``q`` is bit ``q`` (weight ``2**q``) of the
amplitude index.
"""

import numpy as np

COMPILED = False


def backend_name() -> str:
    return "python"


def _paired_view(amps: np.ndarray, q: int) -> np.ndarray:
    # (high, bit_q, low) view of the statevector; axis 1 selects bit q.
    return amps.reshape(-1, 2, 1 << q)


def apply_h(amps: np.ndarray, q: int) -> None:
    s = 1.0 / np.sqrt(2.0)
    v = _paired_view(amps, q)
    x0 = v[:, 0, :].copy()
    x1 = v[:, 1, :]
    v[:, 0, :] = (x0 + x1) * s
    v[:, 1, :] = (x0 - x1) * s


def apply_phase(amps: np.ndarray, q: int, p0: complex, p1: complex) -> None:
    # split into real passes: numpy's fused complex multiply rounds
    # differently from the compiled backend's plain (ac-bd, ad+bc)
    v = _paired_view(amps, q)
    for bit, p in ((0, p0), (1, p1)):
        x = v[:, bit, :]
        re = x.real.copy()
        im = x.imag.copy()
        x.real = re * p.real - im * p.imag
        x.imag = re * p.imag + im * p.real


def apply_ry(amps: np.ndarray, q: int, c: float, s: float) -> None:
    v = _paired_view(amps, q)
    x0 = v[:, 0, :].copy()
    x1 = v[:, 1, :]
    v[:, 0, :] = x0 * c - x1 * s
    v[:, 1, :] = x0 * s + x1 * c


def apply_cz(amps: np.ndarray, q1: int, q2: int) -> None:
    lo, hi = (q1, q2) if q1 < q2 else (q2, q1)
    # axes: (high, bit_hi, mid, bit_lo, low)
    v = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    v[:, 1, :, 1, :] *= -1.0
