import math
from dataclasses import dataclass

import numpy as np

from utils import LOG_SCALE_THRESHOLD
from .xyz_chain import ModelParams, thermal_state_spectral

CLOSED_FORM = "closed_form"
SPECTRAL = "spectral"


@dataclass(frozen=True)
class DerivedCouplings:
    delta: float
    sigma: float
    eta: float
    alpha: float
    beta: float
    gamma: float


@dataclass(frozen=True)
class XStateElements:
    """
    Unnormalized entries of the thermal X-state and its partition function.

    The normalized state has diagonal (a11, b11, b11, a22)/z, corners a12/z and center b12/z. When the
    exponentials would overflow, every field is stored divided by exp(log_scale).
    """
    a11: float
    a12: float
    a22: float
    b11: float
    b12: float
    z: float
    log_scale: float = 0.0


def derive_couplings(p: ModelParams) -> DerivedCouplings:
    delta = p.jx - p.jy
    sigma = p.jx + p.jy
    eta = math.hypot(delta, 4 * p.b)
    return DerivedCouplings(delta=delta, sigma=sigma, eta=eta,
                            alpha=p.jz / (4 * p.kT), beta=eta / (4 * p.kT), gamma=sigma / (4 * p.kT))


def thermal_state_closed_form(p: ModelParams) -> XStateElements:
    """
    Closed-form thermal state of the XYZ chain.

    The cosh/sinh combinations are evaluated in split-exponential form,
    e^{-a}(cosh b ∓ r sinh b) = (e^{-a+b}(1 ∓ r) + e^{-a-b}(1 ± r)) / 2 with r = 4B/eta, and 1 - |r| is
    computed as (Delta / eta)(Delta / (eta + 4|B|)) to avoid cancellation and underflow.
    At eta = 0 (Delta = B = 0) the ratio sinh(beta)/eta tends to 1/(4kT), which makes a12 vanish.

    Args:
        p (ModelParams): Model parameters.

    Returns:
        XStateElements: The matrix elements and the partition function.
    """
    c = derive_couplings(p)

    exponents = np.array([-c.alpha + c.beta, -c.alpha - c.beta, c.alpha + c.gamma, c.alpha - c.gamma])
    largest = float(np.max(exponents))
    log_scale = largest if largest > LOG_SCALE_THRESHOLD else 0.0
    e_plus, e_minus, f_plus, f_minus = np.exp(exponents - log_scale)

    if c.eta > 0:
        ratio = 4 * abs(p.b) / c.eta
        lower = (c.delta / c.eta) * (c.delta / (c.eta + 4 * abs(p.b)))
        upper = 1 + ratio
        one_minus, one_plus = (lower, upper) if p.b >= 0 else (upper, lower)
        a11 = (e_plus * one_minus + e_minus * one_plus) / 2
        a22 = (e_plus * one_plus + e_minus * one_minus) / 2
        a12 = -(c.delta / c.eta) * (e_plus - e_minus) / 2
    else:
        a11 = a22 = e_plus
        a12 = 0.0

    b11 = (f_plus + f_minus) / 2
    b12 = -(f_plus - f_minus) / 2
    z = e_plus + e_minus + f_plus + f_minus

    return XStateElements(a11=float(a11), a12=float(a12), a22=float(a22), b11=float(b11), b12=float(b12),
                          z=float(z), log_scale=log_scale)


def to_density_matrix(x: XStateElements) -> np.ndarray:
    """
    Lay the X-state elements out in the standard basis and normalize by z.

    Args:
        x (XStateElements): Closed-form elements.

    Returns:
        np.ndarray: The normalized 4x4 density matrix.
    """
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = x.a11, x.b11, x.b11, x.a22
    rho[0, 3] = rho[3, 0] = x.a12
    rho[1, 2] = rho[2, 1] = x.b12
    return rho / x.z


def thermal_state(p: ModelParams, method: str = CLOSED_FORM) -> np.ndarray:
    if method == CLOSED_FORM:
        return to_density_matrix(thermal_state_closed_form(p))
    if method == SPECTRAL:
        return thermal_state_spectral(p)

    raise ValueError(f"{method} not supported. Try '{CLOSED_FORM}' or '{SPECTRAL}'.")
