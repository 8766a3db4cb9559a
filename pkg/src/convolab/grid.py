"""Uniform grid, sampling, quadrature, and the discrete transform pair.

Conventions
-----------
The forward transform of ``f`` is ``hat f(x) = int f(t) e^{+itx} dt`` (note
the positive exponent); the inverse carries the ``1/(2*pi)`` factor so that
the round trip is the identity.  All integrals over the real line are
truncated to ``[-L, L]``; callers choose ``L`` so the functions involved
decay below 1e-12 at the boundary.  Indicator sampling uses the half-open
convention ``[c, d)`` so a node sitting exactly on a boundary is resolved
deterministically.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np

Profile = Callable[[np.ndarray], np.ndarray]
ProfileLike = Union[str, Profile]


@dataclass(frozen=True)
class Grid:
    """Uniform lattice on ``[-L, L)`` paired with its dual frequency lattice.

    Spatial nodes are ``t_j = -L + j*dx`` for ``j = 0..n-1`` with
    ``dx = 2L/n``; frequency nodes are ``x_k = k*dxi`` for
    ``k = -n/2..n/2-1`` with ``dxi = pi/L``.  Hence ``dx*dxi = 2*pi/n`` and
    the frequency window is ``[-pi*n/(2L), pi*n/(2L))``.
    """

    half_width: float
    size: int

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.size

    @property
    def dxi(self) -> float:
        return math.pi / self.half_width

    @cached_property
    def t(self) -> np.ndarray:
        nodes = -self.half_width + self.dx * np.arange(self.size)
        nodes.setflags(write=False)
        return nodes

    @cached_property
    def xi(self) -> np.ndarray:
        k = np.arange(-self.size // 2, self.size // 2)
        nodes = self.dxi * k
        nodes.setflags(write=False)
        return nodes

    @property
    def freq_edge(self) -> float:
        """Right edge of the (half-open) frequency window."""
        return math.pi * self.size / (2.0 * self.half_width)


@dataclass(frozen=True)
class GridFunction:
    """Complex samples of a function on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.size,):
            raise ValueError(
                f"values must have shape ({self.grid.size},), got {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("GridFunction values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _check_same_grid(self, other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _check_same_grid(self, other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar: complex) -> "GridFunction":
        return GridFunction(self.grid, self.values * scalar)

    __rmul__ = __mul__


def _check_same_grid(f: GridFunction, g: GridFunction) -> None:
    if f.grid != g.grid:
        raise ValueError("grid mismatch between operands")


def make_grid(half_width: float, size: int) -> Grid:
    """Build a grid on ``[-half_width, half_width)`` with ``size`` nodes.

    ``size`` must be even (symmetric frequency window) and at least 8.
    """
    if not (half_width > 0 and math.isfinite(half_width)):
        raise ValueError(f"half_width must be positive and finite, got {half_width}")
    size = int(size)
    if size < 8 or size % 2 != 0:
        raise ValueError(f"size must be an even integer >= 8, got {size}")
    return Grid(float(half_width), size)


# ---------------------------------------------------------------------------
# function descriptors (profiles)

_CALL_RE = re.compile(r"^\s*([a-zA-Z_][a-zA-Z_0-9]*)\s*(?:\((.*)\))?\s*$")


def _split_args(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return [p.strip() for p in parts]


def bump_profile(x: np.ndarray, center: float = 0.0, width: float = 1.0) -> np.ndarray:
    """Smooth compactly supported bump: exp(1/(u^2-1)) for |u|<1, u=(x-c)/w."""
    u = (np.asarray(x, dtype=float) - center) / width
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    out[inside] = np.exp(1.0 / (u[inside] ** 2 - 1.0))
    return out


def indicator_profile(c: float, d: float) -> Profile:
    """Characteristic function of the half-open interval [c, d)."""
    def fn(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return ((x >= c) & (x < d)).astype(float)
    return fn


def parse_profile(text: str) -> Profile:
    """Parse a spatial function descriptor into a vectorized callable.

    Grammar (arguments are float literals):

    - ``indicator(c,d)``       characteristic function of ``[c, d)``
    - ``gaussian`` / ``gaussian(mu,sigma)``   ``exp(-(x-mu)^2/(2 sigma^2))``
    - ``bump`` / ``bump(c,w)`` the compactly supported bump above
    - ``xgaussian``            ``x * exp(-x^2)``
    - ``rational_decay(s)``    ``(1+x^2)^(-s)``
    - ``const(k)``             the constant ``k``
    """
    m = _CALL_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse function descriptor {text!r}")
    name, argtext = m.group(1), m.group(2)
    args = [float(a) for a in _split_args(argtext)] if argtext else []

    if name == "indicator":
        if len(args) != 2 or args[0] >= args[1]:
            raise ValueError(f"indicator needs two ordered arguments, got {args}")
        return indicator_profile(*args)
    if name == "gaussian":
        mu = args[0] if args else 0.0
        sigma = args[1] if len(args) > 1 else 1.0
        if sigma <= 0:
            raise ValueError("gaussian width must be positive")
        return lambda x: np.exp(-((np.asarray(x, float) - mu) ** 2) / (2 * sigma**2))
    if name == "bump":
        c = args[0] if args else 0.0
        w = args[1] if len(args) > 1 else 1.0
        if w <= 0:
            raise ValueError("bump width must be positive")
        return lambda x: bump_profile(x, c, w)
    if name == "xgaussian":
        return lambda x: np.asarray(x, float) * np.exp(-np.asarray(x, float) ** 2)
    if name == "rational_decay":
        s = args[0] if args else 1.0
        if s <= 0:
            raise ValueError("rational_decay exponent must be positive")
        return lambda x: (1.0 + np.asarray(x, float) ** 2) ** (-s)
    if name == "const":
        k = args[0] if args else 1.0
        return lambda x: np.full_like(np.asarray(x, float), k, dtype=float)
    raise ValueError(f"unknown function descriptor {name!r}")


def sample(expr: ProfileLike, grid: Grid) -> GridFunction:
    """Evaluate a function descriptor at every spatial node."""
    fn = parse_profile(expr) if isinstance(expr, str) else expr
    vals = np.asarray(fn(grid.t), dtype=complex)
    if vals.ndim == 0:
        vals = np.full(grid.size, complex(vals))
    if vals.shape != (grid.size,):
        raise ValueError("descriptor did not evaluate to one value per node")
    if not np.all(np.isfinite(vals)):
        raise ValueError("descriptor evaluated to a non-finite value at a node")
    return GridFunction(grid, vals)


def quadrature(f: GridFunction) -> complex:
    """Trapezoid rule on [-L, L], treating the function as 0 outside.

    The grid stores nodes ``-L .. L-dx``; with the implicit zero at ``+L``
    the trapezoid weights reduce to ``dx`` everywhere except a half weight
    at the left endpoint.
    """
    return f.grid.dx * (f.values.sum() - 0.5 * f.values[0])


# ---------------------------------------------------------------------------
# discrete transform pair

def _phase_signs(n: int) -> np.ndarray:
    # e^{i t_j x_k} = (-1)^k e^{2 pi i jk/n}: the (-1)^k comes from the -L offset.
    k = np.arange(-n // 2, n // 2)
    return np.where(k % 2 == 0, 1.0, -1.0)


def dft_pair(f: GridFunction, direction: str, method: str = "fft") -> GridFunction:
    """Apply the discrete realization of the transform pair.

    forward:  ``hat f(x_k) = dx * sum_j f(t_j) e^{+i t_j x_k}``
    inverse:  ``f(t_j) = (dxi/(2*pi)) * sum_k hat f(x_k) e^{-i t_j x_k}``

    ``method="direct"`` evaluates the O(n^2) sums literally; the FFT path
    must agree with it to 1e-12.  The round trip is the identity to machine
    precision because ``dx*dxi = 2*pi/n``.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    if method not in ("fft", "direct"):
        raise ValueError(f"method must be 'fft' or 'direct', got {method!r}")
    g = f.grid
    if method == "direct":
        # literal summation against the node-wise kernel matrix
        phase = np.outer(g.t, g.xi)
        if direction == "forward":
            vals = g.dx * (np.exp(1j * phase).T @ f.values)
        else:
            vals = (g.dxi / (2 * math.pi)) * (np.exp(-1j * phase) @ f.values)
        return GridFunction(g, vals)

    signs = _phase_signs(g.size)
    if direction == "forward":
        base = np.fft.ifft(f.values) * g.size          # sum_j f_j e^{2 pi i jk/n}
        vals = g.dx * signs * np.fft.fftshift(base)
    else:
        base = np.fft.ifftshift(signs * f.values)
        vals = (g.dxi / (2 * math.pi)) * np.fft.fft(base)
    return GridFunction(g, vals)


def to_csv(f: GridFunction) -> str:
    """Serialize as CSV rows ``index,t,re,im`` (debugging aid)."""
    lines = ["index,t,re,im"]
    for j, (t, v) in enumerate(zip(f.grid.t, f.values)):
        lines.append(f"{j},{t:.17g},{v.real:.17g},{v.imag:.17g}")
    return "\n".join(lines) + "\n"


def random_mixture(
    grid: Grid,
    rng: np.random.Generator,
    components: int = 4,
    complex_values: bool = False,
    support_fraction: float = 0.5,
) -> GridFunction:
    """Random test function: a mixture of Gaussian bumps and one indicator.

    Supported well inside the domain (within ``support_fraction * L``) so
    that convolution wrap-around and boundary truncation stay negligible.
    """
    L = grid.half_width * support_fraction
    t = grid.t
    vals = np.zeros(grid.size, dtype=complex)
    for _ in range(components):
        c = rng.uniform(-0.8 * L, 0.8 * L)
        w = rng.uniform(0.2, 1.5)
        amp = rng.normal()
        if complex_values:
            amp = amp + 1j * rng.normal()
        vals += amp * np.exp(-((t - c) ** 2) / (2 * w**2))
    a = rng.uniform(-0.8 * L, 0.4 * L)
    b = a + rng.uniform(0.2, 0.5 * L)
    vals += rng.normal() * ((t >= a) & (t < b))
    if np.max(np.abs(vals)) < 1e-12:
        vals[grid.size // 2] = 1.0
    return GridFunction(grid, vals)
